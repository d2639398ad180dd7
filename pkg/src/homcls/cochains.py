"""Normalized cochains on finite simplicial sets and their cohomology."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from . import abelian
from .abelian import FullyEffectiveGroup, SemiEffectiveGroup
from .intlinalg import LinearSolver
from .simplicial import Cone, FinSimplicialSet, Suspension


@dataclass(frozen=True)
class CoeffGroup:
    """Z^r (+) Z/q_1 (+) ... (+) Z/q_t on integer vectors of length r + t."""

    free_rank: int = 1
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(q < 2 for q in self.torsion):
            raise ValueError("invalid coefficient group")

    @property
    def orders(self) -> tuple:
        return (0,) * self.free_rank + tuple(self.torsion)

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def zero(self) -> tuple:
        return (0,) * self.rank

    def reduce(self, v: Iterable[int]) -> tuple:
        return tuple(x % q if q else x for x, q in zip(v, self.orders))

    def add(self, a: tuple, b: tuple) -> tuple:
        return self.reduce(x + y for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        return self.reduce(x - y for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        return self.reduce(-x for x in a)

    def scale(self, n: int, a: tuple) -> tuple:
        return self.reduce(n * x for x in a)

    def element(self, v) -> tuple:
        if isinstance(v, int):
            v = (v,)
        v = tuple(int(x) for x in v)
        if len(v) != self.rank:
            raise ValueError(f"coefficient {v} does not fit {self}")
        return self.reduce(v)

    def __str__(self) -> str:
        return abelian.format_group(self.torsion, self.free_rank)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, d: Mapping) -> "CoeffGroup":
        return cls(int(d.get("free_rank", 0)), tuple(int(q) for q in d.get("torsion", ())))

    @classmethod
    def parse(cls, text: str) -> "CoeffGroup":
        """Grammar: Z, Z/q, Z^r, and sums of these joined by '+'."""
        free, torsion = 0, []
        for part in text.replace(" ", "").split("+"):
            if m := re.fullmatch(r"Z(?:\^(\d+))?", part):
                free += int(m.group(1) or 1)
            elif m := re.fullmatch(r"Z/(\d+)", part):
                q = int(m.group(1))
                if q < 2:
                    raise ValueError(f"bad cyclic order in {text!r}")
                torsion.append(q)
            else:
                raise ValueError(f"cannot parse coefficient group {text!r}")
        return cls(free, tuple(torsion))


Z = CoeffGroup(1, ())
Z2 = CoeffGroup(0, (2,))


class Cochain:
    """Sparse normalized n-cochain: values on nondegenerate n-simplices."""

    __slots__ = ("space", "dim", "coeff", "values", "_hash")

    def __init__(self, space: FinSimplicialSet, dim: int, coeff: CoeffGroup,
                 values: Optional[Mapping] = None):
        self.space = space
        self.dim = dim
        self.coeff = coeff
        vals = {}
        for s, v in (values or {}).items():
            if space.dims.get(s) != dim:
                raise ValueError(f"{s!r} is not a nondegenerate {dim}-simplex")
            v = coeff.element(v)
            if any(v):
                vals[s] = v
        self.values = vals
        self._hash = None

    @classmethod
    def _raw(cls, space, dim, coeff, values):
        c = cls.__new__(cls)
        c.space, c.dim, c.coeff, c.values, c._hash = space, dim, coeff, values, None
        return c

    def __getitem__(self, s) -> tuple:
        return self.values.get(s, self.coeff.zero)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.space is other.space and self.dim == other.dim
                and self.coeff == other.coeff and self.values == other.values)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.space), self.dim, frozenset(self.values.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Cochain(dim={self.dim}, {dict(self.values)})"

    def is_zero(self) -> bool:
        return not self.values

    def _check(self, other):
        if self.space is not other.space or self.dim != other.dim or self.coeff != other.coeff:
            raise ValueError("incompatible cochains")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        vals = dict(self.values)
        for s, v in other.values.items():
            w = self.coeff.add(vals.get(s, self.coeff.zero), v)
            if any(w):
                vals[s] = w
            else:
                vals.pop(s, None)
        return Cochain._raw(self.space, self.dim, self.coeff, vals)

    def __neg__(self) -> "Cochain":
        vals = {s: self.coeff.neg(v) for s, v in self.values.items()}
        return Cochain._raw(self.space, self.dim, self.coeff, vals)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, n: int) -> "Cochain":
        vals = {}
        for s, v in self.values.items():
            w = self.coeff.scale(n, v)
            if any(w):
                vals[s] = w
        return Cochain._raw(self.space, self.dim, self.coeff, vals)

    def vector(self) -> list[int]:
        """Flat coordinates: simplices in storage order, coefficient coordinates inside."""
        out = []
        zero = self.coeff.zero
        for s in self.space.nondegenerate(self.dim):
            out.extend(self.values.get(s, zero))
        return out


def zero_cochain(space: FinSimplicialSet, dim: int, coeff: CoeffGroup) -> Cochain:
    return Cochain._raw(space, dim, coeff, {})


def from_vector(space: FinSimplicialSet, dim: int, coeff: CoeffGroup, v: Sequence[int]) -> Cochain:
    r = coeff.rank
    vals = {}
    for i, s in enumerate(space.nondegenerate(dim)):
        w = coeff.reduce(v[i * r:(i + 1) * r])
        if any(w):
            vals[s] = w
    return Cochain._raw(space, dim, coeff, vals)


def coboundary_matrix(space: FinSimplicialSet, n: int) -> list[list[tuple[int, int]]]:
    """Sparse rows of delta: C^n -> C^(n+1), one row per (n+1)-simplex.

    Row entries are (column index of an n-simplex, coefficient).
    """
    key = ("cobdry", n)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    rows = []
    for t in space.nondegenerate(n + 1):
        acc: dict = {}
        if n >= 0:
            for i, f in enumerate(space.faces[t]):
                if not f.word:
                    j = space.index[f.base]
                    acc[j] = acc.get(j, 0) + (-1) ** i
        rows.append(sorted((j, c) for j, c in acc.items() if c))
    space._cache[key] = rows
    return rows


def coboundary(c: Cochain) -> Cochain:
    """(delta c)(t) = sum_i (-1)^i c(d_i t)."""
    space, n, coeff = c.space, c.dim, c.coeff
    if not c.values:
        return zero_cochain(space, n + 1, coeff)
    cols = space.nondegenerate(n)
    vals = {}
    for t, row in zip(space.nondegenerate(n + 1), coboundary_matrix(space, n)):
        acc = None
        for j, k in row:
            v = c.values.get(cols[j])
            if v is not None:
                acc = [a + k * x for a, x in zip(acc, v)] if acc else [k * x for x in v]
        if acc:
            w = coeff.reduce(acc)
            if any(w):
                vals[t] = w
    return Cochain._raw(space, n + 1, coeff, vals)


def dense_coboundary(space: FinSimplicialSet, n: int) -> list[list[int]]:
    rows = coboundary_matrix(space, n)
    ncols = space.count(n)
    out = []
    for row in rows:
        r = [0] * ncols
        for j, k in row:
            r[j] = k
        out.append(r)
    return out


def solve_coboundary(y: Cochain, n: Optional[int] = None) -> Optional[Cochain]:
    """Deterministic x with delta x = y, or None when y is not a coboundary."""
    space, coeff = y.space, y.coeff
    n = y.dim - 1 if n is None else n
    ncols = space.count(n)
    r = coeff.rank
    out = [0] * (ncols * r)
    yv = y.vector()
    nrows = space.count(n + 1)
    for k, q in enumerate(coeff.orders):
        key = ("solver", n, q)
        solver = space._cache.get(key)
        if solver is None:
            mat = dense_coboundary(space, n)
            if q:
                mat = [row + [q if j == i else 0 for j in range(nrows)] for i, row in enumerate(mat)]
            solver = LinearSolver(mat, ncols + (nrows if q else 0))
            space._cache[key] = solver
        b = [yv[i * r + k] for i in range(nrows)]
        x = solver.solve(b)
        if x is None:
            return None
        for i in range(ncols):
            out[i * r + k] = x[i]
    return from_vector(space, n, coeff, out)


def cochain_group(space: FinSimplicialSet, n: int, coeff: CoeffGroup) -> FullyEffectiveGroup:
    """C^n(X; pi) with one generator per (simplex, coefficient coordinate)."""
    base = SemiEffectiveGroup(zero_cochain(space, n, coeff), lambda a, b: a + b, lambda a: -a)
    r = coeff.rank
    gens, orders = [], []
    for s in space.nondegenerate(n):
        for k, q in enumerate(coeff.orders):
            v = [0] * r
            v[k] = 1
            gens.append(Cochain._raw(space, n, coeff, {s: tuple(v)}))
            orders.append(q)
    return FullyEffectiveGroup(base, tuple(gens), tuple(orders), lambda c: c.vector())


def cocycle_group(space: FinSimplicialSet, n: int, coeff: CoeffGroup) -> FullyEffectiveGroup:
    key = ("cocycles", n, coeff)
    hit = space._cache.get(key)
    if hit is None:
        hit = abelian.kernel(cochain_group(space, n, coeff), coboundary,
                             cochain_group(space, n + 1, coeff))
        space._cache[key] = hit
    return hit


def cohomology_group(space: FinSimplicialSet, n: int, coeff: CoeffGroup) -> FullyEffectiveGroup:
    """H^n(X; pi) as a fully effective group on cocycle representatives.

    `extras["zero_witness"](z)` returns e with delta e = z for a coboundary z.
    """
    key = ("cohomology", n, coeff)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    zn = cocycle_group(space, n, coeff)
    if n >= 1:
        prev = cochain_group(space, n - 1, coeff)
        group = abelian.cokernel(prev.generators, prev.base, coboundary, zn)
    else:
        group = abelian.cokernel([], zn.base, coboundary, zn)
    space._cache[key] = group
    return group


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


def restrict_to_subspace(b: Cochain, sub: FinSimplicialSet) -> Cochain:
    vals = {s: v for s, v in b.values.items() if s in sub.dims}
    return Cochain._raw(sub, b.dim, b.coeff, vals)


def cone_split(b: Cochain) -> tuple[Cochain, Cochain]:
    """b on CX -> (e, c) with e(x) = b(cone x) and c = b|_X.

    With the apex first, delta(e, c) = (-delta e + c, delta c).
    """
    cx = b.space
    if not isinstance(cx, Cone):
        raise ValueError("cochain does not live on a cone")
    x = cx.base_space
    e_vals, c_vals = {}, {}
    for s in x.nondegenerate(b.dim - 1):
        v = b.values.get(Cone.cone_id(s))
        if v is not None:
            e_vals[s] = v
    for s in x.nondegenerate(b.dim):
        v = b.values.get(s)
        if v is not None:
            c_vals[s] = v
    e = Cochain._raw(x, b.dim - 1, b.coeff, e_vals)
    c = Cochain._raw(x, b.dim, b.coeff, c_vals)
    return e, c


def cone_join(cx: Cone, e: Cochain, c: Cochain) -> Cochain:
    """Inverse of cone_split."""
    if e.dim != c.dim - 1 or e.space is not cx.base_space or c.space is not cx.base_space:
        raise ValueError("incompatible split components")
    vals = dict(c.values)
    for s, v in e.values.items():
        vals[Cone.cone_id(s)] = v
    return Cochain._raw(cx, c.dim, c.coeff, vals)


def susp_shift(z: Cochain) -> Cochain:
    """D: C^(i+1)(SX) -> C^i(X), (Dz)(x) = z(susp x); delta D = -D delta."""
    sx = z.space
    if not isinstance(sx, Suspension):
        raise ValueError("cochain does not live on a suspension")
    x = sx.base_space
    vals = {}
    for s in x.nondegenerate(z.dim - 1):
        if s == x.basepoint:
            continue
        v = z.values.get(Suspension.susp_id(s))
        if v is not None:
            vals[s] = v
    return Cochain._raw(x, z.dim - 1, z.coeff, vals)


def susp_unshift(sx: Suspension, c: Cochain) -> Cochain:
    """Inverse of susp_shift (for c of dimension >= 1)."""
    if c.space is not sx.base_space:
        raise ValueError("cochain does not live on the suspended space")
    vals = {Suspension.susp_id(s): v for s, v in c.values.items() if s != sx.base_space.basepoint}
    return Cochain._raw(sx, c.dim + 1, c.coeff, vals)

