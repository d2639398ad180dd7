"""Semi-effective and fully effective abelian groups.

A group is known through representatives: opaque Python objects together
with zero/add/neg routines.  Representatives need not be unique and the
operations need not obey the group laws on the nose; only the classes do.
A fully effective group additionally lists generators with their orders
and can express any representative in them, which is what makes equality
decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from .intlinalg import LinearSolver, smith_normal_form, transpose

Rep = Any


@dataclass(frozen=True)
class SemiEffectiveGroup:
    zero: Rep
    add: Callable[[Rep, Rep], Rep]
    neg: Callable[[Rep], Rep]

    def scale(self, n: int, a: Rep) -> Rep:
        """n * a by double-and-add."""
        if n < 0:
            return self.scale(-n, self.neg(a))
        out = self.zero
        while n:
            if n & 1:
                out = self.add(out, a)
            n >>= 1
            if n:
                a = self.add(a, a)
        return out

    def combine(self, coeffs: Sequence[int], reps: Sequence[Rep]) -> Rep:
        out = self.zero
        for c, a in zip(coeffs, reps):
            if c:
                out = self.add(out, self.scale(c, a))
        return out


@dataclass(frozen=True)
class Presentation:
    """Generators b_1..b_n, relation rows U, and an express routine into Z^n."""

    base: SemiEffectiveGroup
    generators: Sequence[Rep]
    relations: Sequence[Sequence[int]]
    express: Callable[[Rep], Sequence[int]]


@dataclass(frozen=True)
class FullyEffectiveGroup:
    """Direct sum of cyclic groups with generator representatives.

    `orders[i]` is 0 for an infinite cyclic summand.
    """

    base: SemiEffectiveGroup
    generators: tuple
    orders: tuple
    express_raw: Callable[[Rep], Sequence[int]]
    extras: dict = field(default_factory=dict, compare=False)

    def express(self, a: Rep) -> tuple:
        return self.reduce(self.express_raw(a))

    def reduce(self, z: Sequence[int]) -> tuple:
        return tuple(x % q if q else x for x, q in zip(z, self.orders))

    def is_zero(self, a: Rep) -> bool:
        return not any(self.express(a))

    def equal(self, a: Rep, b: Rep) -> bool:
        return self.express(a) == self.express(b)

    def synthesize(self, z: Sequence[int]) -> Rep:
        return self.base.combine(z, self.generators)

    @property
    def zero(self) -> Rep:
        return self.base.zero

    def add(self, a: Rep, b: Rep) -> Rep:
        return self.base.add(a, b)

    def neg(self, a: Rep) -> Rep:
        return self.base.neg(a)

    @property
    def free_rank(self) -> int:
        return sum(1 for q in self.orders if q == 0)

    @property
    def torsion(self) -> tuple:
        return invariant_factors(self.orders)[0]

    def invariants(self) -> tuple:
        """(torsion invariant factors, free rank)."""
        return invariant_factors(self.orders)

    @property
    def relation_matrix(self) -> list[list[int]]:
        n = len(self.orders)
        return [[q if j == i else 0 for j in range(n)] for i, q in enumerate(self.orders) if q]

    def __str__(self) -> str:
        return format_group(*self.invariants())


def invariant_factors(orders: Sequence[int]) -> tuple:
    """Canonical (torsion factors q_1 | q_2 | ..., free rank) of a sum of cyclics."""
    free = sum(1 for q in orders if q == 0)
    finite = [q for q in orders if q not in (0, 1)]
    snf = smith_normal_form([[q if j == i else 0 for j in range(len(finite))]
                             for i, q in enumerate(finite)], len(finite))
    return tuple(x for x in snf.diagonal if x != 1), free


def format_group(torsion: Sequence[int], free_rank: int) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts.extend(f"Z/{q}" for q in torsion)
    return " (+) ".join(parts) if parts else "0"


def group_json(g: FullyEffectiveGroup) -> dict:
    torsion, free = g.invariants()
    return {"free_rank": free, "torsion": list(torsion)}


def cyclic_sum(orders: Sequence[int]) -> FullyEffectiveGroup:
    """The group (+) Z/q_i on integer-vector representatives."""
    orders = tuple(orders)
    n = len(orders)

    def red(v):
        return tuple(x % q if q else x for x, q in zip(v, orders))

    base = SemiEffectiveGroup(
        zero=(0,) * n,
        add=lambda a, b: red(x + y for x, y in zip(a, b)),
        neg=lambda a: red(-x for x in a),
    )
    gens = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return FullyEffectiveGroup(base, gens, orders, lambda a: tuple(a))


def presentation_to_fully_effective(p: Presentation) -> FullyEffectiveGroup:
    """Normalize a presentation by a Smith normal form of its relation matrix.

    With D = S U T the new generators are a = T^-1 b; an element with
    coordinates z in the b's has coordinates z T in the a's.  Generators of
    order one are dropped.
    """
    n = len(p.generators)
    u = [list(r) for r in p.relations]
    snf = smith_normal_form(u, n)
    diag = snf.diagonal + [0] * (n - len(snf.diagonal))
    t = snf.T
    tinv = _unimodular_inverse(t)
    keep = [j for j in range(n) if diag[j] != 1]
    gens = tuple(p.base.combine(tinv[j], p.generators) for j in keep)
    orders = tuple(diag[j] for j in keep)

    def express(a):
        z = list(p.express(a))
        if len(z) != n:
            raise ValueError("express returned a vector of the wrong length")
        w = [sum(z[k] * t[k][j] for k in range(n) if z[k] and t[k][j]) for j in keep]
        return w

    return FullyEffectiveGroup(p.base, gens, orders, express)


def _unimodular_inverse(t: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(t)
    if n == 0:
        return []
    solver = LinearSolver(t, n)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solver.solve(e)
        if x is None:
            raise ArithmeticError("matrix is not unimodular")
        cols.append(x)
    return transpose(cols, n)


def homomorphism_matrix(gens: Sequence[Rep], f: Callable[[Rep], Rep],
                        target: FullyEffectiveGroup) -> list[list[int]]:
    """Rows are the target coordinates of f on each generator."""
    return [list(target.express(f(g))) for g in gens]


def kernel_lattice(zmat: Sequence[Sequence[int]], target_orders: Sequence[int],
                   nsrc: int) -> list[list[int]]:
    """Generators of {x in Z^nsrc : x Z = 0 in (+) Z/q_j}."""
    ntgt = len(target_orders)
    rows = [list(r) for r in zmat]
    rel = [[-q if j == i else 0 for j in range(ntgt)] for i, q in enumerate(target_orders) if q]
    stacked = rows + rel
    if not stacked:
        return []
    # left kernel of the stacked matrix, restricted to the first nsrc coordinates
    solver = LinearSolver(transpose(stacked, ntgt), len(stacked))
    out = []
    for v in solver.kernel:
        x = v[:nsrc]
        if any(x):
            out.append(x)
    return out


def kernel(source: FullyEffectiveGroup, f: Callable[[Rep], Rep],
           target: FullyEffectiveGroup) -> FullyEffectiveGroup:
    """Kernel of a homomorphism between fully effective groups."""
    m = len(source.generators)
    zmat = homomorphism_matrix(source.generators, f, target)
    xs = kernel_lattice(zmat, target.orders, m)
    # relations y with y X in rowspace(diag of source orders)
    src_rel = [[q if j == i else 0 for j in range(m)] for i, q in enumerate(source.orders) if q]
    k = len(xs)
    stacked = xs + [[-x for x in r] for r in src_rel]
    relations = []
    if stacked and k:
        solver = LinearSolver(transpose(stacked, m), len(stacked))
        relations = [v[:k] for v in solver.kernel if any(v[:k])]
    express_solver = LinearSolver(transpose(stacked, m), len(stacked)) if stacked else None

    def express(a):
        x = list(source.express(a))
        if k == 0:
            if any(x):
                raise ValueError("element is not in the kernel")
            return []
        sol = express_solver.solve(x)
        if sol is None:
            raise ValueError("element is not in the kernel")
        return sol[:k]

    gens = [source.synthesize(x) for x in xs]
    return presentation_to_fully_effective(Presentation(source.base, gens, relations, express))


def kernel_generators(gens: Sequence[Rep], base: SemiEffectiveGroup,
                      f: Callable[[Rep], Rep], target: FullyEffectiveGroup) -> list:
    """Generators of the kernel of f restricted to the subgroup spanned by gens.

    Only the generator list of the source is needed, not its relations.
    """
    zmat = homomorphism_matrix(gens, f, target)
    return [base.combine(x, gens) for x in kernel_lattice(zmat, target.orders, len(gens))]


def cokernel(gens: Sequence[Rep], base: SemiEffectiveGroup, f: Callable[[Rep], Rep],
             target: FullyEffectiveGroup) -> FullyEffectiveGroup:
    """Cokernel of f: A -> B where A is known only through a generator list.

    The result carries `zero_witness(beta)`: a representative alpha of A with
    [f(alpha)] = [beta] in B, or None if beta is not in the image.
    """
    zmat = homomorphism_matrix(gens, f, target)
    nb = len(target.orders)
    vrel = target.relation_matrix
    relations = zmat + vrel
    pres = Presentation(target.base, list(target.generators), relations, target.express)
    group = presentation_to_fully_effective(pres)
    ng = len(gens)
    solver = LinearSolver(transpose(relations, nb), len(relations)) if relations else None

    def zero_witness(beta):
        y = list(target.express(beta))
        if solver is None:
            return base.zero if not any(y) else None
        sol = solver.solve(y)
        if sol is None:
            return None
        return base.combine(sol[:ng], gens)

    group.extras["zero_witness"] = zero_witness
    return group


def assemble_short_exact(a: FullyEffectiveGroup, c: FullyEffectiveGroup,
                         f: Callable[[Rep], Rep], g: Callable[[Rep], Rep],
                         r: Callable[[Rep], Rep], xi: Callable[[Rep], Rep],
                         b: SemiEffectiveGroup) -> FullyEffectiveGroup:
    """Fully effective B from an exact sequence 0 -> A -f-> B -g-> C -> 0.

    r inverts f on ker g, xi lifts representatives of C to B.
    """
    ma, mc = len(a.generators), len(c.generators)
    fa = [f(x) for x in a.generators]
    xc = [xi(x) for x in c.generators]
    relations = []
    for j, q in enumerate(c.orders):
        if not q:
            continue
        bstar = b.scale(q, xc[j])
        y = list(a.express(r(bstar)))
        relations.append([-v for v in y] + [q if k == j else 0 for k in range(mc)])
    for i, q in enumerate(a.orders):
        if q:
            relations.append([q if k == i else 0 for k in range(ma)] + [0] * mc)

    def express(x):
        z = list(c.express(g(x)))
        lifted = b.combine(z, xc)
        y = list(a.express(r(b.add(x, b.neg(lifted)))))
        return y + z

    return presentation_to_fully_effective(Presentation(b, fa + xc, relations, express))


def group_order(g: FullyEffectiveGroup) -> Optional[int]:
    """Order of the group, or None when infinite."""
    out = 1
    for q in g.orders:
        if q == 0:
            return None
        out *= q
    return out
