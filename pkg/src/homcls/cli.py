"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 computation precondition violated,
3 input validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import io
from .abelian import FullyEffectiveGroup, format_group
from .cochains import CoeffGroup, cohomology_group
from .homotopy import (HomotopyEngine, MapRep, NotNullhomotopic, PreconditionError, classes_stage,
                       cocycle_map, compose_with_phi)
from .intlinalg import smith_normal_form
from .postnikov import PostnikovData, parse_target

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="homcls", description="Homotopy classes of maps into simply connected "
                     "targets in the metastable range.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, target=True):
        p.add_argument("--space", required=True, help="space JSON (bundled examples are found by name)")
        if target:
            p.add_argument("--target", required=True, help="sphere:3 or em:COEFF:N")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("group", help="[X, Y] for dim X <= 2d-2")
    common(p)
    p = sub.add_parser("stage-group", help="[X, P_i] for any X")
    common(p)
    p.add_argument("--stage", type=int, required=True)
    p = sub.add_parser("homotopic", help="decide whether two maps are homotopic")
    common(p)
    p.add_argument("--map", action="append", required=True,
                   help="map JSON (sphere targets) or cocycle JSON (em targets); give twice")
    p = sub.add_parser("nullhomotopic", help="decide nullhomotopy, optionally export a certificate")
    common(p)
    p.add_argument("--map", action="append", required=True)
    p.add_argument("--certificate", help="write the cone map witnessing the nullhomotopy here")
    p = sub.add_parser("cohomology", help="H^n(X; pi)")
    common(p, target=False)
    p.add_argument("--coeff", default="Z")
    p.add_argument("--dim", type=int, required=True)
    p = sub.add_parser("snf", help="Smith normal form of an integer matrix given as JSON")
    p.add_argument("matrix", help="JSON file holding [[...], ...], or - for stdin")
    p.add_argument("--json", action="store_true")
    return parser


# --- input helpers ---------------------------------------------------------------

def _load_json(path: str):
    try:
        return io.read_json(io.resolve_input(path))
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except (io.FormatError, UnicodeDecodeError) as exc:
        raise InputError(str(exc)) from None


def _space(path: str):
    try:
        return io.space_from_json(_load_json(path))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _target(text: str) -> PostnikovData:
    try:
        return parse_target(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _map_rep(path: str, x, data: PostnikovData, stage: int) -> MapRep:
    obj = _load_json(path)
    try:
        if data.phi is None:
            z = io.cochain_from_json(obj, x)
            return cocycle_map(z, data)
        f = io.map_from_json(obj, x, data.phi[0])
        return compose_with_phi(x, f, data, stage)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _group_text(g: FullyEffectiveGroup) -> str:
    torsion, free = g.invariants()
    return format_group(torsion, free)


def _emit(args, text: str, obj: dict):
    if args.json:
        print(json.dumps(io.stamp(obj), indent=2))
    else:
        print(text)


# --- commands ----------------------------------------------------------------------

def cmd_group(args) -> int:
    x = _space(args.space)
    data = _target(args.target)
    if args.command == "stage-group":
        stage = args.stage
        if not data.d <= stage <= data.top_stage:
            raise PreconditionError(f"stage must lie in [{data.d}, {data.top_stage}] for {args.target}")
    else:
        stage = classes_stage(x, data)
    g = HomotopyEngine(data).compute_group(x, stage)
    obj = io.group_to_json(g)
    obj.update(stage=stage, target=args.target)
    _emit(args, _group_text(g), obj)
    return EXIT_OK


def cmd_homotopic(args) -> int:
    if len(args.map) != 2:
        raise UsageError("homotopic needs --map exactly twice")
    x = _space(args.space)
    data = _target(args.target)
    stage = classes_stage(x, data)
    eng = HomotopyEngine(data)
    g = eng.compute_group(x, stage)
    classes = [g.express(_map_rep(p, x, data, stage)) for p in args.map]
    same = classes[0] == classes[1]
    _emit(args, "homotopic" if same else "not homotopic",
          {"homotopic": same, "classes": [[io.encode_int(v) for v in c] for c in classes],
           "group": io.group_to_json(g)})
    return EXIT_OK


def cmd_nullhomotopic(args) -> int:
    if len(args.map) != 1:
        raise UsageError("nullhomotopic needs --map exactly once")
    x = _space(args.space)
    data = _target(args.target)
    stage = classes_stage(x, data)
    eng = HomotopyEngine(data)
    g = eng.compute_group(x, stage)
    m = _map_rep(args.map[0], x, data, stage)
    coords = g.express(m)
    null = not any(coords)
    if null and args.certificate:
        b = eng.nullhoa(m)
        io.write_json(args.certificate, io.certificate_to_json(b, args.target, m))
    _emit(args, "nullhomotopic" if null else "not nullhomotopic",
          {"nullhomotopic": null, "class": [io.encode_int(v) for v in coords],
           "certificate": args.certificate if null else None})
    return EXIT_OK


def cmd_cohomology(args) -> int:
    x = _space(args.space)
    try:
        coeff = CoeffGroup.parse(args.coeff)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.dim < 0:
        raise UsageError("--dim must be nonnegative")
    g = cohomology_group(x, args.dim, coeff)
    obj = io.group_to_json(g)
    obj.update(dim=args.dim, coeff=args.coeff)
    _emit(args, _group_text(g), obj)
    return EXIT_OK


def cmd_snf(args) -> int:
    try:
        raw = json.load(sys.stdin) if args.matrix == "-" else _load_json(args.matrix)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON ({exc})") from None
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise InputError("matrix must be a list of rows")
    try:
        rows = [[io.decode_int(v) for v in r] for r in raw]
    except io.FormatError as exc:
        raise InputError(str(exc)) from None
    cols = len(rows[0]) if rows else 0
    if any(len(r) != cols for r in rows):
        raise InputError("matrix rows have different lengths")
    snf = smith_normal_form(rows, cols)

    def enc(mat):
        return [[io.encode_int(v) for v in r] for r in mat]

    obj = {"S": enc(snf.S), "D": enc(snf.D), "T": enc(snf.T),
           "diagonal": [io.encode_int(v) for v in snf.diagonal]}
    text = "\n".join(f"{name} = {json.dumps(obj[name])}" for name in ("S", "D", "T"))
    _emit(args, text, obj)
    return EXIT_OK


COMMANDS = {
    "group": cmd_group,
    "stage-group": cmd_group,
    "homotopic": cmd_homotopic,
    "nullhomotopic": cmd_nullhomotopic,
    "cohomology": cmd_cohomology,
    "snf": cmd_snf,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, NotNullhomotopic) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
