"""Postnikov stages and their H-group structure.

An m-simplex of the stage P_i is a tuple (sigma^d, ..., sigma^i) of
cochains on Delta^m, sigma^j in C^j(Delta^m; pi_j), with sigma^d a cocycle
and k_{j-1}(sigma^d, ..., sigma^(j-1)) = delta sigma^j.  Only the
k-invariants are needed, and they are supplied by oracles.

The addition is built stage by stage.  On P_d it is cochain addition; above
that the last component is corrected by A_{i-1}, the nonadditivity of
k_{i-1} pushed through the Eilenberg-Zilber homotopy SHI.  This keeps the
stages closed under the operation and makes 0 a strict unit with strict
inverses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .cache import MemoCache
from .cochains import Cochain, CoeffGroup, Z, Z2
from .em import EmSimplex, em_zero
from .shuffle import inclusion, shi_terms
from .simplicial import FinSimplicialSet, minimal_sphere, vertex_subsets


@dataclass(frozen=True)
class StageSimplex:
    """An m-simplex of P_i; components[j - d] is sigma^j."""

    m: int
    d: int
    components: tuple

    @property
    def stage(self) -> int:
        return self.d + len(self.components) - 1

    def pullback(self, theta: Sequence[int]) -> "StageSimplex":
        theta = tuple(theta)
        return StageSimplex(len(theta) - 1, self.d, tuple(c.pullback(theta) for c in self.components))

    def face(self, i: int) -> "StageSimplex":
        return self.pullback(tuple(j if j < i else j + 1 for j in range(self.m)))

    def degeneracy(self, i: int) -> "StageSimplex":
        return self.pullback(tuple(j if j <= i else j - 1 for j in range(self.m + 2)))

    def restrict(self, vertices: Sequence[int]) -> "StageSimplex":
        return self.pullback(inclusion(vertices))

    def truncate(self, stage: int) -> "StageSimplex":
        return StageSimplex(self.m, self.d, self.components[: stage - self.d + 1])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    @property
    def last(self) -> EmSimplex:
        return self.components[-1]


KOracle = Callable[[StageSimplex], tuple]


@dataclass
class PostnikovData:
    """A Postnikov system given by its homotopy groups and k-invariant oracles.

    `k_top[i]` evaluates k_i on an (i+2)-simplex of P_i and returns an
    element of pi_{i+1}; the full cochain on larger simplices is obtained by
    restriction, which makes k_i simplicial by construction.  `phi`, when
    present, is a pair (model of Y, components) giving phi: Y -> P_top as
    cochains on the model.
    """

    d: int
    top_stage: int
    pis: dict
    k_top: dict = field(default_factory=dict)
    phi: Optional[tuple] = None
    name: str = ""
    shortcuts: bool = True

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("target must be simply connected (d >= 2)")
        if not self.d <= self.top_stage <= 2 * self.d - 2 and self.top_stage != self.d:
            raise ValueError("top stage must lie in [d, 2d-2]")
        for i in range(self.d, self.top_stage + 1):
            if i not in self.pis:
                raise ValueError(f"missing homotopy group pi_{i}")
        for i in range(self.d, self.top_stage):
            if i not in self.k_top:
                raise ValueError(f"missing k-invariant k_{i}")
        self._a_cache = MemoCache()
        self._add_cache = MemoCache()

    # --- stage simplices -------------------------------------------------

    def zero(self, stage: int, m: int) -> StageSimplex:
        return StageSimplex(m, self.d, tuple(em_zero(m, j, self.pis[j])
                                             for j in range(self.d, stage + 1)))

    def lambda_insert(self, z: EmSimplex) -> StageSimplex:
        """(0, ..., 0, z) at stage z.n."""
        if not z.is_cocycle():
            raise ValueError("lambda_insert needs a cocycle")
        i = z.n
        return StageSimplex(z.m, self.d, self.zero(i - 1, z.m).components + (z,))

    @staticmethod
    def project(s: StageSimplex) -> StageSimplex:
        if s.stage <= s.d:
            raise ValueError("cannot project below the first stage")
        return StageSimplex(s.m, s.d, s.components[:-1])

    def k_value(self, s: StageSimplex) -> tuple:
        """k_i on an (i+2)-simplex of P_i."""
        i = s.stage
        if s.m != i + 2:
            raise ValueError("k_value needs an (i+2)-simplex")
        if self.shortcuts and s.is_zero():
            return self.pis[i + 1].zero
        return self.k_top[i](s)

    def k_cochain(self, s: StageSimplex) -> EmSimplex:
        """k_i(s) as an (i+2)-cochain on Delta^m."""
        i = s.stage
        vals = tuple(self.k_value(s.restrict(face)) for face in vertex_subsets(s.m, i + 2))
        return EmSimplex._raw(s.m, i + 2, self.pis[i + 1], vals)

    def is_member(self, s: StageSimplex) -> bool:
        comps = s.components
        if not comps[0].is_cocycle():
            return False
        for j in range(1, len(comps)):
            lower = StageSimplex(s.m, s.d, comps[:j])
            if self.k_cochain(lower) != comps[j].coboundary():
                return False
        return True

    # --- H-group structure -----------------------------------------------

    def a_value(self, x: StageSimplex, y: StageSimplex) -> tuple:
        """a_i = k_i(x + y) - k_i(x) - k_i(y) on a pair of (i+2)-simplices."""
        pi = self.pis[x.stage + 1]
        if self.shortcuts and (x.is_zero() or y.is_zero()):
            return pi.zero
        s = self.add(x, y)
        return pi.sub(pi.sub(self.k_value(s), self.k_value(x)), self.k_value(y))

    def a_nonadd(self, x: StageSimplex, y: StageSimplex) -> EmSimplex:
        """a_i(x, y) as an (i+2)-cochain on Delta^m."""
        i = x.stage
        pi = self.pis[i + 1]
        faces = vertex_subsets(x.m, i + 2)
        vals = tuple(self.a_value(x.restrict(f), y.restrict(f)) for f in faces)
        return EmSimplex._raw(x.m, i + 2, pi, vals)

    def big_a_value(self, x: StageSimplex, y: StageSimplex) -> tuple:
        """A_i = a_i o SHI on a pair of (i+1)-simplices of P_i."""
        i = x.stage
        pi = self.pis[i + 1]
        if self.shortcuts and (x.is_zero() or y.is_zero()):
            return pi.zero
        key = (x, y)
        hit = self._a_cache.get(key)
        if hit is not None:
            return hit
        acc = pi.zero
        for sign, t1, t2 in shi_terms(x.m):
            v = self.a_value(x.pullback(t1), y.pullback(t2))
            if any(v):
                acc = pi.add(acc, v) if sign > 0 else pi.sub(acc, v)
        self._a_cache.put(key, acc)
        return acc

    def big_a(self, x: StageSimplex, y: StageSimplex) -> EmSimplex:
        """A_i(x, y) as an (i+1)-cochain on Delta^m."""
        i = x.stage
        faces = vertex_subsets(x.m, i + 1)
        vals = tuple(self.big_a_value(x.restrict(f), y.restrict(f)) for f in faces)
        return EmSimplex._raw(x.m, i + 1, self.pis[i + 1], vals)

    def add(self, x: StageSimplex, y: StageSimplex) -> StageSimplex:
        if x.m != y.m or x.stage != y.stage:
            raise ValueError("add needs simplices of the same stage and dimension")
        if self.shortcuts:
            if y.is_zero():
                return x
            if x.is_zero():
                return y
        key = (x, y)
        hit = self._add_cache.get(key)
        if hit is not None:
            return hit
        if x.stage == self.d:
            out = StageSimplex(x.m, x.d, (x.components[0] + y.components[0],))
        else:
            xb, yb = self.project(x), self.project(y)
            last = x.last + y.last + self.big_a(xb, yb)
            out = StageSimplex(x.m, x.d, self.add(xb, yb).components + (last,))
        self._add_cache.put(key, out)
        return out

    def neg(self, x: StageSimplex) -> StageSimplex:
        if x.stage == self.d:
            return StageSimplex(x.m, x.d, (-x.components[0],))
        xb = self.project(x)
        nb = self.neg(xb)
        last = -x.last - self.big_a(xb, nb)
        return StageSimplex(x.m, x.d, nb.components + (last,))

    def sub(self, x: StageSimplex, y: StageSimplex) -> StageSimplex:
        return self.add(x, self.neg(y))

    def clear_caches(self):
        self._a_cache.clear()
        self._add_cache.clear()


# --- shipped data -----------------------------------------------------------

# Cup-1 square of a 3-cochain on Delta^5: the pairs of 3-faces meeting in
# {0,3}, {1,4}, {2,5}.
SQ2_PAIRS = (
    ((0, 3, 4, 5), (0, 1, 2, 3)),
    ((0, 1, 4, 5), (1, 2, 3, 4)),
    ((0, 1, 2, 5), (2, 3, 4, 5)),
)


def _sq2_value(s: StageSimplex) -> tuple:
    c = s.components[0]
    total = 0
    for u, v in SQ2_PAIRS:
        total += c[u][0] * c[v][0]
    return (total % 2,)


def sphere3_data(shortcuts: bool = True) -> PostnikovData:
    """Postnikov data of S^3 through stage 4: pi_3 = Z, pi_4 = Z/2, k_3 = Sq^2."""
    model = minimal_sphere(3)
    phi = (model, (Cochain(model, 3, Z, {"s3": (1,)}), Cochain(model, 4, Z2, {})))
    return PostnikovData(3, 4, {3: Z, 4: Z2}, {3: _sq2_value}, phi=phi, name="S^3",
                         shortcuts=shortcuts)


def em_target_data(pi: CoeffGroup, n: int) -> PostnikovData:
    """The single-stage system of K(pi, n)."""
    if n < 2:
        raise ValueError("K(pi, n) targets need n >= 2")
    return PostnikovData(n, n, {n: pi}, name=f"K({pi},{n})")


def parse_target(text: str) -> PostnikovData:
    """`sphere:3` or `em:<coeff>:<n>`."""
    parts = text.split(":")
    if parts[0] == "sphere" and len(parts) == 2:
        if parts[1] != "3":
            raise ValueError("only sphere:3 ships with k-invariant data")
        return sphere3_data()
    if parts[0] == "em" and len(parts) == 3:
        return em_target_data(CoeffGroup.parse(parts[1]), int(parts[2]))
    raise ValueError(f"unknown target {text!r}; use sphere:3 or em:<coeff>:<n>")


def phi_model(data: PostnikovData) -> FinSimplicialSet:
    if data.phi is None:
        raise ValueError(f"target {data.name} has no stored finite model")
    return data.phi[0]
