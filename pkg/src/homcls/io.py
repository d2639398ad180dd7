"""JSON formats for spaces, cochains, maps, groups and nullhomotopy certificates.

Every file carries "schema_version"; a missing field is read as version 1
and any other version is rejected.  Integers of absolute value >= 2^53 are
written as decimal strings so exact values survive any JSON reader.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .abelian import FullyEffectiveGroup
from .cochains import Cochain, CoeffGroup
from .homotopy import MapRep
from .simplicial import Cone, FinSimplicialSet, SimplexRef, from_complex, full_degeneracy_word

SCHEMA_VERSION = 1
SAFE_INT = 2 ** 53


class FormatError(ValueError):
    """Malformed or unsupported input file."""


def encode_int(v: int):
    return str(v) if abs(v) >= SAFE_INT else v


def decode_int(v) -> int:
    if isinstance(v, bool):
        raise FormatError(f"expected an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError:
            pass
    raise FormatError(f"expected an integer, got {v!r}")


def check_version(obj: Mapping) -> None:
    if not isinstance(obj, Mapping):
        raise FormatError("expected a JSON object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")


def stamp(obj: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, **obj}


def read_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False)
        fh.write("\n")


def data_path(name: str) -> Path:
    """Path of a bundled example file."""
    return Path(str(resources.files("homcls") / "data" / name))


def resolve_input(path: str) -> Path:
    """A file on disk, or else the bundled example of the same name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = data_path(p.name)
    if bundled.exists():
        return bundled
    raise FileNotFoundError(path)


# --- spaces ------------------------------------------------------------------

def space_from_json(obj: Mapping) -> FinSimplicialSet:
    check_version(obj)
    fmt = obj.get("format")
    name = obj.get("name", "")
    try:
        if fmt == "simplicial_complex":
            facets = obj["facets"]
            vertices = obj.get("vertices")
            if not isinstance(facets, list) or not all(isinstance(f, list) and f for f in facets):
                raise FormatError("facets must be a list of nonempty vertex lists")
            return from_complex(facets, vertex_order=vertices, basepoint=obj.get("basepoint"),
                                name=name)
        if fmt == "simplicial_set":
            simplices = {int(k): [str(s) for s in ids] for k, ids in obj["simplices"].items()}
            faces = {}
            for s, fs in obj.get("faces", {}).items():
                faces[str(s)] = [(tuple(decode_int(j) for j in w), str(b)) for w, b in fs]
            return FinSimplicialSet(simplices, faces, str(obj["basepoint"]), name=name)
    except FormatError:
        raise
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed space: {exc!r}") from None
    except ValueError as exc:
        raise FormatError(f"invalid space: {exc}") from None
    raise FormatError(f"unknown space format {fmt!r}")


def space_to_json(x: FinSimplicialSet) -> dict:
    return stamp({
        "format": "simplicial_set",
        "name": x.name,
        "simplices": {str(k): [str(s) for s in ids] for k, ids in x.simplices.items()},
        "faces": {str(s): [[list(f.word), str(f.base)] for f in fs]
                  for s, fs in x.faces.items() if fs},
        "basepoint": str(x.basepoint),
    })


def load_space(path) -> FinSimplicialSet:
    return space_from_json(read_json(path))


# --- cochains ------------------------------------------------------------------

def cochain_from_json(obj: Mapping, space: FinSimplicialSet) -> Cochain:
    check_version(obj)
    try:
        coeff = CoeffGroup.from_json(obj["coeff"])
        values = {}
        for s, v in obj.get("values", {}).items():
            if not isinstance(v, list):
                v = [v]
            values[s] = [decode_int(a) for a in v]
        return Cochain(space, int(obj["dim"]), coeff, values)
    except FormatError:
        raise
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed cochain: {exc!r}") from None
    except ValueError as exc:
        raise FormatError(f"invalid cochain: {exc}") from None


def cochain_to_json(c: Cochain) -> dict:
    return stamp({
        "dim": c.dim,
        "coeff": c.coeff.to_json(),
        "values": {str(s): [encode_int(a) for a in v] for s, v in c.values.items()},
    })


# --- maps ----------------------------------------------------------------------

def map_from_json(obj: Mapping, x: FinSimplicialSet, y: FinSimplicialSet) -> dict:
    """Assignments X simplex -> Y simplex.

    A target is "*" (the degenerate basepoint of matching dimension), the id
    of a nondegenerate simplex of Y, or [degeneracy_word, id].
    """
    check_version(obj)
    assignments = obj.get("assignments")
    if not isinstance(assignments, Mapping):
        raise FormatError("map file needs an 'assignments' object")
    out = {}
    for s, target in assignments.items():
        if s not in x.dims:
            raise FormatError(f"unknown source simplex {s!r}")
        if target == "*":
            out[s] = SimplexRef(full_degeneracy_word(x.dims[s]), y.basepoint)
        elif isinstance(target, str):
            out[s] = SimplexRef((), target)
        elif isinstance(target, list) and len(target) == 2 and isinstance(target[0], list):
            out[s] = SimplexRef(tuple(decode_int(j) for j in target[0]), str(target[1]))
        else:
            raise FormatError(f"bad target for {s!r}: {target!r}")
    return out


def map_to_json(f: Mapping, y: FinSimplicialSet) -> dict:
    out = {}
    for s, r in f.items():
        if r.base == y.basepoint:
            out[str(s)] = "*"
        elif not r.word:
            out[str(s)] = str(r.base)
        else:
            out[str(s)] = [list(r.word), str(r.base)]
    return stamp({"assignments": out})


# --- groups --------------------------------------------------------------------

def group_to_json(g: FullyEffectiveGroup) -> dict:
    torsion, free = g.invariants()
    return stamp({
        "free_rank": free,
        "torsion": [encode_int(q) for q in torsion],
        "generator_orders": [encode_int(q) for q in g.orders],
    })


def group_from_json(obj: Mapping) -> tuple:
    """(torsion invariant factors, free rank)."""
    check_version(obj)
    try:
        return tuple(decode_int(q) for q in obj["torsion"]), decode_int(obj["free_rank"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed group: {exc!r}") from None


# --- certificates --------------------------------------------------------------

def certificate_to_json(b: MapRep, target: str, source: MapRep) -> dict:
    """A map CX -> P_i extending `source`, as cochains on the cone."""
    if not isinstance(b.space, Cone):
        raise ValueError("certificate must live on a cone")
    return stamp({
        "format": "cone_map",
        "target": target,
        "stage": b.stage,
        "d": b.d,
        "space": space_to_json(b.space.base_space),
        "input": [cochain_to_json(c) for c in source.components],
        "components": [cochain_to_json(c) for c in b.components],
    })


def certificate_from_json(obj: Mapping, cx: Cone | None = None) -> tuple:
    """(cone map, input map) as MapReps; the base space is read from the file
    unless a cone is passed in."""
    check_version(obj)
    if obj.get("format") != "cone_map":
        raise FormatError("not a cone_map certificate")
    try:
        if cx is None:
            cx = Cone(space_from_json(obj["space"]))
        d = int(obj["d"])
        comps = tuple(cochain_from_json(c, cx) for c in obj["components"])
        inp = tuple(cochain_from_json(c, cx.base_space) for c in obj["input"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed certificate: {exc!r}") from None
    return MapRep(cx, d, comps), MapRep(cx.base_space, d, inp)
