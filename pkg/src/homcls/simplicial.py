"""Finite simplicial sets stored through their nondegenerate simplices.

Every simplex is written in Eilenberg-Zilber normal form s_{g1}...s_{gr}(x)
with g1 > ... > gr and x nondegenerate.  Internally the degeneracy word is
handled as the monotone surjection [m] -> [k] that it encodes: the word
lists exactly the positions j with theta(j) = theta(j + 1).  Any simplicial
operator is a monotone map of standard simplices, so faces, degeneracies and
restrictions to vertex subsets all go through `FinSimplicialSet.apply`.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Hashable, Iterable, NamedTuple, Optional, Sequence

SimplexId = Hashable


class SimplexRef(NamedTuple):
    word: tuple  # strictly decreasing degeneracy indices
    base: SimplexId

    @property
    def degenerate(self) -> bool:
        return bool(self.word)


def word_to_surjection(word: Sequence[int], k: int) -> tuple:
    """Monotone surjection [k + len(word)] -> [k] collapsing the word's positions."""
    m = k + len(word)
    rep = set(word)
    out, v = [0], 0
    for j in range(m):
        if j not in rep:
            v += 1
        out.append(v)
    if v != k:
        raise ValueError(f"degeneracy word {tuple(word)} is not valid in dimension {m}")
    return tuple(out)


def surjection_to_word(theta: Sequence[int]) -> tuple:
    return tuple(j for j in range(len(theta) - 2, -1, -1) if theta[j] == theta[j + 1])


def coface(m: int, i: int) -> tuple:
    """delta_i: [m-1] -> [m] skipping i."""
    return tuple(j if j < i else j + 1 for j in range(m))


def codegeneracy(m: int, i: int) -> tuple:
    """sigma_i: [m+1] -> [m] hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(m + 2))


def full_degeneracy_word(m: int) -> tuple:
    """Word turning a vertex into its m-dimensional degeneracy."""
    return tuple(range(m - 1, -1, -1))


class FinSimplicialSet:
    """A simplicial set with finitely many nondegenerate simplices."""

    def __init__(self, simplices: dict, faces: dict, basepoint: SimplexId,
                 name: str = "", check: bool = True):
        self.simplices = {int(k): list(v) for k, v in sorted(simplices.items()) if v}
        self.dims = {s: k for k, ids in self.simplices.items() for s in ids}
        if len(self.dims) != sum(len(v) for v in self.simplices.values()):
            raise ValueError("simplex ids must be unique")
        self.faces = {s: tuple(SimplexRef(tuple(w), b) for w, b in faces.get(s, ()))
                      for s in self.dims}
        self.basepoint = basepoint
        self.name = name
        self.index = {s: i for ids in self.simplices.values() for i, s in enumerate(ids)}
        self._restrict_cache: dict = {}
        self._cache: dict = {}
        if basepoint not in self.dims or self.dims[basepoint] != 0:
            raise ValueError("basepoint must be a vertex")
        self._validate_faces()
        if check:
            self.check_identities()

    @property
    def dim(self) -> int:
        return max(self.simplices, default=-1)

    def nondegenerate(self, k: int) -> list:
        return self.simplices.get(k, [])

    def count(self, k: int) -> int:
        return len(self.simplices.get(k, ()))

    def counts(self) -> list[int]:
        return [self.count(k) for k in range(self.dim + 1)]

    def ref(self, s: SimplexId) -> SimplexRef:
        return SimplexRef((), s)

    def ref_dim(self, r: SimplexRef) -> int:
        return self.dims[r.base] + len(r.word)

    def surjection(self, r: SimplexRef) -> tuple:
        return word_to_surjection(r.word, self.dims[r.base])

    def _validate_faces(self):
        for s, k in self.dims.items():
            fs = self.faces[s]
            if k == 0:
                if fs:
                    raise ValueError(f"vertex {s!r} cannot have faces")
                continue
            if len(fs) != k + 1:
                raise ValueError(f"simplex {s!r} of dim {k} needs {k + 1} faces")
            for f in fs:
                if f.base not in self.dims:
                    raise ValueError(f"unknown face base {f.base!r}")
                if self.ref_dim(f) != k - 1:
                    raise ValueError(f"face {f} of {s!r} has the wrong dimension")
                word_to_surjection(f.word, self.dims[f.base])

    def check_identities(self):
        """d_i d_j = d_{j-1} d_i for i < j on every stored simplex."""
        for s, k in self.dims.items():
            if k < 2:
                continue
            r = self.ref(s)
            for j in range(k + 1):
                dj = self.face(r, j)
                for i in range(j):
                    if self.face(dj, i) != self.face(self.face(r, i), j - 1):
                        raise ValueError(f"simplicial identity fails on {s!r} (i={i}, j={j})")

    def apply(self, r: SimplexRef, theta: Sequence[int]) -> SimplexRef:
        """The simplex r * theta for a monotone map theta: [m'] -> [m]."""
        surj = self.surjection(r)
        phi = [surj[t] for t in theta]
        image = sorted(set(phi))
        pos = {v: i for i, v in enumerate(image)}
        eps = [pos[v] for v in phi]
        sub = self.restrict(r.base, tuple(image))
        theta1 = self.surjection(sub)
        return SimplexRef(surjection_to_word([theta1[e] for e in eps]), sub.base)

    def restrict(self, s: SimplexId, vertices: tuple) -> SimplexRef:
        """Face of the nondegenerate simplex s spanned by a sorted vertex subset."""
        key = (s, vertices)
        hit = self._restrict_cache.get(key)
        if hit is not None:
            return hit
        k = self.dims[s]
        if len(vertices) == k + 1:
            out = SimplexRef((), s)
        else:
            present = set(vertices)
            j = max(v for v in range(k + 1) if v not in present)
            sub = tuple(v if v < j else v - 1 for v in vertices)
            out = self.apply(self.faces[s][j], sub)
        self._restrict_cache[key] = out
        return out

    def face(self, r: SimplexRef, i: int) -> SimplexRef:
        m = self.ref_dim(r)
        if not 0 <= i <= m or m == 0:
            raise IndexError(f"face index {i} out of range in dimension {m}")
        return self.apply(r, coface(m, i))

    def degeneracy(self, r: SimplexRef, i: int) -> SimplexRef:
        m = self.ref_dim(r)
        if not 0 <= i <= m:
            raise IndexError(f"degeneracy index {i} out of range in dimension {m}")
        return self.apply(r, codegeneracy(m, i))

    def all_simplices(self, m: int) -> list[SimplexRef]:
        """Every m-simplex, degenerate ones included."""
        out = []
        for k in range(min(m, self.dim) + 1):
            for word in combinations(range(m - 1, -1, -1), m - k):
                for s in self.nondegenerate(k):
                    out.append(SimplexRef(tuple(word), s))
        return out

    def __repr__(self) -> str:
        return f"FinSimplicialSet({self.name or 'X'}, counts={self.counts()})"


def from_complex(facets: Iterable[Iterable], vertex_order: Optional[Sequence] = None,
                 basepoint=None, name: str = "") -> FinSimplicialSet:
    """Simplicial set of an abstract simplicial complex under a vertex order."""
    facets = [tuple(f) for f in facets]
    if vertex_order is None:
        vertex_order = sorted({v for f in facets for v in f}, key=_sort_key)
    rank = {v: i for i, v in enumerate(vertex_order)}
    closure: set = set()
    for f in facets:
        missing = [v for v in f if v not in rank]
        if missing:
            raise ValueError(f"vertex {missing[0]!r} missing from the vertex order")
        f = tuple(sorted(set(f), key=rank.__getitem__))
        for k in range(1, len(f) + 1):
            closure.update(combinations(f, k))
    for v in vertex_order:
        closure.add((v,))
    simplices: dict = {}
    faces = {}
    for sim in sorted(closure, key=lambda t: (len(t), [rank[v] for v in t])):
        sid = simplex_name(sim)
        simplices.setdefault(len(sim) - 1, []).append(sid)
        if len(sim) > 1:
            faces[sid] = [((), simplex_name(sim[:i] + sim[i + 1:])) for i in range(len(sim))]
    if basepoint is None:
        basepoint = vertex_order[0]
    return FinSimplicialSet(simplices, faces, simplex_name((basepoint,)), name=name)


def _sort_key(v):
    return (0, v, "") if isinstance(v, int) else (1, 0, str(v))


def simplex_name(vertices: Sequence) -> str:
    return ",".join(str(v) for v in vertices)


def standard_simplex(m: int) -> FinSimplicialSet:
    return from_complex([range(m + 1)], name=f"Delta^{m}")


def boundary_simplex(m: int) -> FinSimplicialSet:
    """Boundary of the m-simplex, a model of S^(m-1)."""
    return from_complex(combinations(range(m + 1), m), name=f"dDelta^{m}")


def minimal_sphere(n: int) -> FinSimplicialSet:
    """One vertex and one nondegenerate n-simplex with all faces degenerate."""
    if n < 1:
        raise ValueError("minimal sphere needs n >= 1")
    face = (full_degeneracy_word(n - 1), "v")
    return FinSimplicialSet({0: ["v"], n: [f"s{n}"]}, {f"s{n}": [face] * (n + 1)}, "v",
                            name=f"S^{n}")


def wedge(x: FinSimplicialSet, y: FinSimplicialSet, prefixes=("a:", "b:")) -> FinSimplicialSet:
    """One-point union identifying the basepoints."""

    def rename(space, prefix, s):
        return "*" if s == space.basepoint else prefix + str(s)

    simplices: dict = {0: ["*"]}
    faces = {}
    for space, prefix in ((x, prefixes[0]), (y, prefixes[1])):
        for k, ids in space.simplices.items():
            for s in ids:
                if s == space.basepoint:
                    continue
                sid = rename(space, prefix, s)
                simplices.setdefault(k, []).append(sid)
                if k:
                    faces[sid] = [(f.word, rename(space, prefix, f.base)) for f in space.faces[s]]
    return FinSimplicialSet(simplices, faces, "*", name=f"{x.name}v{y.name}")


class Cone(FinSimplicialSet):
    """Cone CX with the apex as vertex 0 of every cone simplex.

    cone(x) = [apex, x_0, ..., x_m], so d_0 cone(x) = x and
    d_{i+1} cone(x) = cone(d_i x).  The inclusion of X keeps its ids.
    """

    APEX = "cone:apex"

    def __init__(self, x: FinSimplicialSet):
        self.base_space = x
        simplices: dict = {k: list(ids) for k, ids in x.simplices.items()}
        simplices.setdefault(0, []).append(self.APEX)
        faces = {s: [(f.word, f.base) for f in x.faces[s]] for s in x.dims if x.dims[s]}
        for k, ids in x.simplices.items():
            for s in ids:
                c = self.cone_id(s)
                simplices.setdefault(k + 1, []).append(c)
                fs = [((), s)]
                if k == 0:
                    fs.append(((), self.APEX))
                else:
                    fs.extend(self._cone_ref(f) for f in x.faces[s])
                faces[c] = fs
        super().__init__(simplices, faces, x.basepoint, name=f"C({x.name})")

    @staticmethod
    def cone_id(s) -> str:
        return f"cone:{s}"

    def _cone_ref(self, f: SimplexRef):
        return tuple(j + 1 for j in f.word), self.cone_id(f.base)


class Suspension(FinSimplicialSet):
    """Reduced suspension: the cone with X and the cone on its basepoint collapsed.

    For m >= 1 the nondegenerate (m+1)-simplices are susp(x) for the
    nondegenerate m-simplices x of X; the only vertex is the collapsed one.
    """

    BASE = "susp:*"

    def __init__(self, x: FinSimplicialSet):
        self.base_space = x
        simplices: dict = {0: [self.BASE]}
        faces = {}
        for k, ids in x.simplices.items():
            for s in ids:
                if s == x.basepoint:
                    continue
                sid = self.susp_id(s)
                simplices.setdefault(k + 1, []).append(sid)
                fs = [(full_degeneracy_word(k), self.BASE)]
                if k == 0:
                    fs.append(((), self.BASE))
                else:
                    fs.extend(self._susp_ref(f, k - 1) for f in x.faces[s])
                faces[sid] = fs
        super().__init__(simplices, faces, self.BASE, name=f"S({x.name})")

    @staticmethod
    def susp_id(s) -> str:
        return f"susp:{s}"

    def _susp_ref(self, f: SimplexRef, k: int):
        if f.base == self.base_space.basepoint:
            return full_degeneracy_word(k + 1), self.BASE
        return tuple(j + 1 for j in f.word), self.susp_id(f.base)


def cone(x: FinSimplicialSet) -> Cone:
    return Cone(x)


def suspension(x: FinSimplicialSet) -> Suspension:
    return Suspension(x)


@lru_cache(maxsize=None)
def vertex_subsets(m: int, n: int) -> tuple:
    """The n-faces of Delta^m as sorted (n+1)-subsets, in lexicographic order."""
    if n < 0 or n > m:
        return ()
    return tuple(combinations(range(m + 1), n + 1))
