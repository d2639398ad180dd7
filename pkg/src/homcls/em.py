"""Eilenberg-MacLane simplicial sets K(pi, n) and E(pi, n).

An m-simplex of E(pi, n) is an n-cochain on the standard m-simplex; it lies
in K(pi, n) when it is a cocycle.  Cochains on Delta^m are stored densely,
one value per sorted (n+1)-subset of {0..m} in lexicographic order, and all
simplicial operators act by pulling back along monotone vertex maps.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from .cochains import Cochain, CoeffGroup, coboundary, cohomology_group, solve_coboundary
from .simplicial import FinSimplicialSet, codegeneracy, coface, vertex_subsets


@lru_cache(maxsize=None)
def subset_index(m: int, n: int) -> dict:
    return {f: i for i, f in enumerate(vertex_subsets(m, n))}


@lru_cache(maxsize=65536)
def pullback_index(theta: tuple, m: int, n: int) -> tuple:
    """For theta: [m'] -> [m], where each n-face of Delta^m' lands (-1: collapsed)."""
    mp = len(theta) - 1
    idx = subset_index(m, n)
    out = []
    for face in vertex_subsets(mp, n):
        image = tuple(theta[v] for v in face)
        out.append(idx[image] if len(set(image)) == len(image) else -1)
    return tuple(out)


@lru_cache(maxsize=None)
def coboundary_index(m: int, n: int) -> tuple:
    """For each (n+1)-face of Delta^m, the signed indices of its n-faces."""
    idx = subset_index(m, n)
    return tuple(tuple((idx[face[:i] + face[i + 1:]], -1 if i % 2 else 1) for i in range(len(face)))
                 for face in vertex_subsets(m, n + 1))


class EmSimplex:
    """An n-cochain on Delta^m with coefficients in pi."""

    __slots__ = ("m", "n", "coeff", "values", "_hash")

    def __init__(self, m: int, n: int, coeff: CoeffGroup, values=None):
        self.m, self.n, self.coeff = m, n, coeff
        size = len(vertex_subsets(m, n))
        if values is None:
            values = (coeff.zero,) * size
        elif isinstance(values, Mapping):
            idx = subset_index(m, n)
            vals = [coeff.zero] * size
            for face, v in values.items():
                vals[idx[tuple(face)]] = coeff.element(v)
            values = tuple(vals)
        else:
            values = tuple(coeff.element(v) for v in values)
            if len(values) != size:
                raise ValueError("wrong number of face values")
        self.values = values
        self._hash = None

    @classmethod
    def _raw(cls, m, n, coeff, values):
        s = cls.__new__(cls)
        s.m, s.n, s.coeff, s.values, s._hash = m, n, coeff, values, None
        return s

    def __eq__(self, other) -> bool:
        return (isinstance(other, EmSimplex) and self.m == other.m and self.n == other.n
                and self.coeff == other.coeff and self.values == other.values)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.n, self.values))
        return self._hash

    def __repr__(self) -> str:
        nz = {f: v for f, v in zip(vertex_subsets(self.m, self.n), self.values) if any(v)}
        return f"EmSimplex(m={self.m}, n={self.n}, {nz})"

    def __getitem__(self, face) -> tuple:
        return self.values[subset_index(self.m, self.n)[tuple(face)]]

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.values)

    @property
    def top(self) -> tuple:
        """Value on the top face (m == n), zero when m > n is not meaningful."""
        if self.m != self.n:
            raise ValueError("top value needs m == n")
        return self.values[0]

    def _check(self, other):
        if self.m != other.m or self.n != other.n or self.coeff != other.coeff:
            raise ValueError("incompatible EM simplices")

    def __add__(self, other: "EmSimplex") -> "EmSimplex":
        self._check(other)
        add = self.coeff.add
        return EmSimplex._raw(self.m, self.n, self.coeff,
                              tuple(add(a, b) for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "EmSimplex":
        neg = self.coeff.neg
        return EmSimplex._raw(self.m, self.n, self.coeff, tuple(neg(a) for a in self.values))

    def __sub__(self, other: "EmSimplex") -> "EmSimplex":
        self._check(other)
        sub = self.coeff.sub
        return EmSimplex._raw(self.m, self.n, self.coeff,
                              tuple(sub(a, b) for a, b in zip(self.values, other.values)))

    def pullback(self, theta: Sequence[int]) -> "EmSimplex":
        """The simplex sigma * theta for a monotone theta: [m'] -> [m]."""
        theta = tuple(theta)
        zero = self.coeff.zero
        vals = self.values
        return EmSimplex._raw(len(theta) - 1, self.n, self.coeff,
                              tuple(vals[j] if j >= 0 else zero
                                    for j in pullback_index(theta, self.m, self.n)))

    def coboundary(self) -> "EmSimplex":
        reduce = self.coeff.reduce
        r = self.coeff.rank
        vals = self.values
        out = []
        for row in coboundary_index(self.m, self.n):
            acc = [0] * r
            for j, sgn in row:
                v = vals[j]
                for k in range(r):
                    acc[k] += sgn * v[k]
            out.append(reduce(acc))
        return EmSimplex._raw(self.m, self.n + 1, self.coeff, tuple(out))

    def is_cocycle(self) -> bool:
        return self.coboundary().is_zero()


def em_zero(m: int, n: int, coeff: CoeffGroup) -> EmSimplex:
    return EmSimplex._raw(m, n, coeff, (coeff.zero,) * len(vertex_subsets(m, n)))


def em_face(s: EmSimplex, i: int) -> EmSimplex:
    if not 0 <= i <= s.m or s.m == 0:
        raise IndexError(f"face index {i} out of range")
    return s.pullback(coface(s.m, i))


def em_degeneracy(s: EmSimplex, i: int) -> EmSimplex:
    if not 0 <= i <= s.m:
        raise IndexError(f"degeneracy index {i} out of range")
    return s.pullback(codegeneracy(s.m, i))


def delta_map(s: EmSimplex) -> EmSimplex:
    """E(pi, n) -> K(pi, n+1): the coboundary on Delta^m."""
    return s.coboundary()


def restrict_cochain(c: Cochain, simplex) -> EmSimplex:
    """Pull a cochain on X back to Delta^k along a nondegenerate k-simplex of X."""
    space = c.space
    k = space.dims[simplex]
    n = c.dim
    key = ("restrict_map", simplex, n)
    targets = space._cache.get(key)
    if targets is None:
        targets = []
        for face in vertex_subsets(k, n):
            r = space.restrict(simplex, face)
            targets.append(None if r.word else r.base)
        targets = tuple(targets)
        space._cache[key] = targets
    zero = c.coeff.zero
    vals = c.values
    return EmSimplex._raw(k, n, c.coeff,
                          tuple(zero if t is None else vals.get(t, zero) for t in targets))


def cocycle_to_map(z: Cochain) -> dict:
    """Simplicial map X -> K(pi, n) of a cocycle, listed on nondegenerate simplices."""
    if not coboundary(z).is_zero():
        raise ValueError("not a cocycle")
    space = z.space
    return {s: restrict_cochain(z, s) for s in space.dims}


def map_to_cocycle(space: FinSimplicialSet, f: Mapping, n: int, coeff: CoeffGroup) -> Cochain:
    """Inverse of cocycle_to_map: read off the values on the n-simplices."""
    vals = {}
    for s in space.nondegenerate(n):
        img = f[s]
        if img.n != n or img.m != n:
            raise ValueError("map does not land in K(pi, n)")
        vals[s] = img.top
    z = Cochain(space, n, coeff, vals)
    if not coboundary(z).is_zero():
        raise ValueError("map does not land in K(pi, n)")
    return z


def em_homotopic(z1: Cochain, z2: Cochain):
    """Maps to K(pi, n) are homotopic iff their cocycles are cohomologous.

    Returns (flag, e) with delta e = z1 - z2 when homotopic.
    """
    if not (coboundary(z1).is_zero() and coboundary(z2).is_zero()):
        raise ValueError("inputs must be cocycles")
    diff = z1 - z2
    if not cohomology_group(z1.space, z1.dim, z1.coeff).is_zero(diff):
        return False, None
    return True, solve_coboundary(diff)
