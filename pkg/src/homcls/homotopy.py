"""Homotopy classes of maps X -> P_i and X -> Y in the metastable range.

A simplicial map X -> P_i is stored as its cochain representation
(c^d, ..., c^i), c^j in C^j(X; pi_j).  Operations on maps are evaluated
simplex by simplex: restrict the cochains to a nondegenerate simplex of X,
do the stage-level operation on Delta^k, read off the top value.

[X, P_i] is built by induction on i from the exact sequence

    [SX, P_{i-1}] --mu--> H^i(X; pi_i) --lambda--> [X, P_i] --p--> [X, P_{i-1}] --k--> H^(i+1)(X; pi_i)

with a lift xi for p and an inverse r for lambda, the latter computed
through explicit nullhomotopies on the cone CX.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from . import abelian
from .abelian import FullyEffectiveGroup, SemiEffectiveGroup
from .cochains import (Cochain, cohomology_group, coboundary, cone_join, is_cocycle,
                       restrict_to_subspace, solve_coboundary, susp_shift, zero_cochain)
from .em import restrict_cochain
from .postnikov import PostnikovData, StageSimplex
from .simplicial import Cone, FinSimplicialSet, SimplexRef, Suspension, cone, suspension


class PreconditionError(ValueError):
    """A computation was asked for outside its proven range."""


class NotNullhomotopic(ValueError):
    """The witness machinery failed: the input does not represent zero."""


@dataclass(frozen=True, eq=False)
class MapRep:
    """Cochain representation of a simplicial map X -> P_stage."""

    space: FinSimplicialSet
    d: int
    components: tuple

    @property
    def stage(self) -> int:
        return self.d + len(self.components) - 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, MapRep) and self.space is other.space and self.d == other.d
                and self.components == other.components)

    def __hash__(self):
        return hash((id(self.space), self.d, self.components))

    def component(self, j: int) -> Cochain:
        return self.components[j - self.d]

    def truncate(self, stage: int) -> "MapRep":
        return MapRep(self.space, self.d, self.components[: stage - self.d + 1])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __repr__(self) -> str:
        return f"MapRep(stage={self.stage}, {list(self.components)})"


class HomotopyEngine:
    """Maps into the stages of one Postnikov system, with per-space caches."""

    def __init__(self, data: PostnikovData):
        self.data = data
        self._groups: dict = {}
        self._gens: dict = {}
        self._cokernels: dict = {}
        self._cones: dict = {}
        self._susps: dict = {}

    # --- spaces -----------------------------------------------------------

    def cone_of(self, x: FinSimplicialSet) -> Cone:
        key = id(x)
        if key not in self._cones:
            self._cones[key] = (x, cone(x))
        return self._cones[key][1]

    def susp_of(self, x: FinSimplicialSet) -> Suspension:
        key = id(x)
        if key not in self._susps:
            self._susps[key] = (x, suspension(x))
        return self._susps[key][1]

    # --- map representations ----------------------------------------------

    def zero_map(self, x: FinSimplicialSet, stage: int) -> MapRep:
        data = self.data
        return MapRep(x, data.d, tuple(zero_cochain(x, j, data.pis[j])
                                       for j in range(data.d, stage + 1)))

    def restrict(self, m: MapRep, simplex, stage: Optional[int] = None) -> StageSimplex:
        """The stage simplex m(simplex), truncated to `stage`."""
        stage = m.stage if stage is None else stage
        comps = tuple(restrict_cochain(m.component(j), simplex) for j in range(m.d, stage + 1))
        return StageSimplex(m.space.dims[simplex], m.d, comps)

    def is_valid(self, m: MapRep) -> bool:
        """The lifting conditions: c^d a cocycle, k_{j-1*}(c^d..c^(j-1)) = delta c^j."""
        data = self.data
        for j, c in enumerate(m.components, start=m.d):
            if c.space is not m.space or c.dim != j or c.coeff != data.pis[j]:
                return False
        if not is_cocycle(m.components[0]):
            return False
        for j in range(m.d + 1, m.stage + 1):
            if self.k_star(m.truncate(j - 1)) != coboundary(m.component(j)):
                return False
        return True

    def add(self, m1: MapRep, m2: MapRep) -> MapRep:
        """The induced addition, componentwise on each simplex of X."""
        if m1.space is not m2.space or m1.stage != m2.stage:
            raise ValueError("incompatible map representations")
        if m2.is_zero():
            return m1
        if m1.is_zero():
            return m2
        data = self.data
        space = m1.space
        comps = [m1.components[0] + m2.components[0]]
        for j in range(m1.d + 1, m1.stage + 1):
            base = m1.component(j) + m2.component(j)
            pi = data.pis[j]
            corr = {}
            for s in space.nondegenerate(j):
                x = self.restrict(m1, s, j - 1)
                y = self.restrict(m2, s, j - 1)
                v = data.big_a_value(x, y)
                if any(v):
                    corr[s] = v
            comps.append(base + Cochain._raw(space, j, pi, corr) if corr else base)
        return MapRep(space, m1.d, tuple(comps))

    def neg(self, m: MapRep) -> MapRep:
        data = self.data
        space = m.space
        comps = [-m.components[0]]
        for j in range(m.d + 1, m.stage + 1):
            partial = MapRep(space, m.d, tuple(comps))
            pi = data.pis[j]
            corr = {}
            for s in space.nondegenerate(j):
                x = self.restrict(m, s, j - 1)
                y = self.restrict(partial, s, j - 1)
                v = data.big_a_value(x, y)
                if any(v):
                    corr[s] = v
            comps.append(-m.component(j) - Cochain._raw(space, j, pi, corr))
        return MapRep(space, m.d, tuple(comps))

    def sub(self, m1: MapRep, m2: MapRep) -> MapRep:
        return self.add(m1, self.neg(m2))

    def semi_group(self, x: FinSimplicialSet, stage: int) -> SemiEffectiveGroup:
        return SemiEffectiveGroup(self.zero_map(x, stage), self.add, self.neg)

    def k_star(self, m: MapRep) -> Cochain:
        """k_{i*}(m): the (i+2)-cochain on X with values in pi_{i+1}."""
        data = self.data
        i = m.stage
        space = m.space
        vals = {}
        if not m.is_zero():
            for s in space.nondegenerate(i + 2):
                v = data.k_value(self.restrict(m, s))
                if any(v):
                    vals[s] = v
        return Cochain._raw(space, i + 2, data.pis[i + 1], vals)

    @staticmethod
    def project(m: MapRep) -> MapRep:
        if m.stage <= m.d:
            raise ValueError("cannot project below the first stage")
        return MapRep(m.space, m.d, m.components[:-1])

    def lambda_insert(self, z: Cochain) -> MapRep:
        """(0, ..., 0, z) for a cocycle z of degree i."""
        return MapRep(z.space, self.data.d, self.zero_map(z.space, z.dim - 1).components + (z,)
                      if z.dim > self.data.d else (z,))

    def xi_lift(self, m: MapRep) -> MapRep:
        """(c, c^i) with delta c^i = k_{i-1*}(c), c^i from the canonical solver."""
        kc = self.k_star(m)
        ci = solve_coboundary(kc)
        if ci is None:
            raise NotNullhomotopic("k-invariant image is not a coboundary; no lift exists")
        return MapRep(m.space, m.d, m.components + (ci,))

    def mu(self, f: MapRep) -> Cochain:
        """mu_i = D o k_{i-1*} for a map SX -> P_{i-1}."""
        return susp_shift(self.k_star(f))

    def cone_pullback(self, f: MapRep, cx: Cone) -> MapRep:
        """Compose a map SX -> P with the quotient CX -> SX."""
        comps = []
        x = cx.base_space
        for c in f.components:
            e = susp_shift(c)
            comps.append(cone_join(cx, e, zero_cochain(x, c.dim, c.coeff)))
        return MapRep(cx, f.d, tuple(comps))

    @staticmethod
    def restrict_to_base(b: MapRep) -> MapRep:
        cx = b.space
        return MapRep(cx.base_space, b.d, tuple(restrict_to_subspace(c, cx.base_space)
                                                 for c in b.components))

    # --- groups -------------------------------------------------------------

    def _key(self, x: FinSimplicialSet, stage: int):
        return (id(x), stage)

    def compute_group(self, x: FinSimplicialSet, stage: int) -> FullyEffectiveGroup:
        """[X, P_stage] as a fully effective group on MapRep representatives."""
        data = self.data
        if not data.d <= stage <= data.top_stage:
            raise PreconditionError(f"stage must lie in [{data.d}, {data.top_stage}]")
        key = self._key(x, stage)
        hit = self._groups.get(key)
        if hit is not None:
            return hit[1]
        if stage == data.d:
            group = self._base_group(x)
        else:
            group = self._inductive_group(x, stage)
        self._groups[key] = (x, group)
        return group

    def _base_group(self, x: FinSimplicialSet) -> FullyEffectiveGroup:
        d = self.data.d
        h = cohomology_group(x, d, self.data.pis[d])
        gens = tuple(MapRep(x, d, (z,)) for z in h.generators)

        def express(m):
            return h.express(m.components[0])

        return FullyEffectiveGroup(self.semi_group(x, d), gens, h.orders, express)

    def _inductive_group(self, x: FinSimplicialSet, i: int) -> FullyEffectiveGroup:
        data = self.data
        pi = data.pis[i]
        prev = self.compute_group(x, i - 1)
        obstruction = cohomology_group(x, i + 1, pi)
        n_prev = abelian.kernel(prev, self.k_star, obstruction)
        m_i = self.cokernel_m(x, i)
        group = abelian.assemble_short_exact(
            m_i, n_prev,
            f=self.lambda_insert,
            g=self.project,
            r=self.rho,
            xi=self.xi_lift,
            b=self.semi_group(x, i),
        )
        return group

    def cokernel_m(self, x: FinSimplicialSet, i: int) -> FullyEffectiveGroup:
        """M_i = H^i(X; pi_i) / im mu_i, with zero witnesses in [SX, P_{i-1}]."""
        key = self._key(x, i)
        hit = self._cokernels.get(key)
        if hit is not None:
            return hit[1]
        sx = self.susp_of(x)
        gens = self.generators_only(sx, i - 1)
        target = cohomology_group(x, i, self.data.pis[i])
        group = abelian.cokernel(gens, self.semi_group(sx, i - 1), self.mu, target)
        self._cokernels[key] = (x, group)
        return group

    def generators_only(self, y: FinSimplicialSet, stage: int) -> list:
        """Generators of [Y, P_stage] without their relations.

        This needs cohomology of Y only, never of a further suspension.
        """
        key = self._key(y, stage)
        hit = self._gens.get(key)
        if hit is not None:
            return hit[1]
        data = self.data
        d = data.d
        if stage == d:
            gens = [MapRep(y, d, (z,)) for z in cohomology_group(y, d, data.pis[d]).generators]
        else:
            prev = self.generators_only(y, stage - 1)
            obstruction = cohomology_group(y, stage + 1, data.pis[stage])
            kern = abelian.kernel_generators(prev, self.semi_group(y, stage - 1), self.k_star,
                                             obstruction)
            gens = [self.xi_lift(c) for c in kern]
            gens += [self.lambda_insert(z)
                     for z in cohomology_group(y, stage, data.pis[stage]).generators]
        self._gens[key] = (y, gens)
        return gens

    # --- nullhomotopies -----------------------------------------------------

    def rho(self, m: MapRep) -> Cochain:
        """For m = (c, c^i) with c nullhomotopic: c^i - b^i|_X for a lifted nullhomotopy b."""
        b = self.nullhoa(self.project(m))
        lifted = self.xi_lift(b)
        return m.components[-1] - restrict_to_subspace(lifted.components[-1], m.space)

    def nullhoa(self, m: MapRep) -> MapRep:
        """A map CX -> P_i restricting to m on X, for nullhomotopic m."""
        data = self.data
        x = m.space
        cx = self.cone_of(x)
        d = data.d
        if m.stage == d:
            c = m.components[0]
            e = solve_coboundary(c)
            if e is None:
                raise NotNullhomotopic("cocycle is not a coboundary")
            return MapRep(cx, d, (cone_join(cx, e, c),))
        i = m.stage
        pi = data.pis[i]
        b0 = self.xi_lift(self.nullhoa(self.project(m)))
        z = m.components[-1] - restrict_to_subspace(b0.components[-1], x)
        m_i = self.cokernel_m(x, i)
        f = m_i.extras["zero_witness"](z)
        if f is None:
            raise NotNullhomotopic("class is nonzero in the cokernel of mu")
        a = self.cone_pullback(f, cx)
        zt = self.mu(f)
        e = solve_coboundary(z - zt)
        if e is None:
            raise NotNullhomotopic("no coboundary witness in [X, L_i]")
        zero_e = zero_cochain(x, i - 1, pi)
        term_a = MapRep(cx, d, a.components + (cone_join(cx, zero_e, zt),))
        term_e = MapRep(cx, d, self.zero_map(cx, i - 1).components
                        + (cone_join(cx, e, coboundary(e)),))
        return self.add(b0, self.add(term_a, term_e))


# --- top-level API -------------------------------------------------------------

def _engine(data: PostnikovData, engine: Optional[HomotopyEngine]) -> HomotopyEngine:
    if engine is not None:
        if engine.data is not data:
            raise ValueError("engine belongs to a different Postnikov system")
        return engine
    eng = getattr(data, "_engine", None)
    if eng is None:
        eng = HomotopyEngine(data)
        data._engine = eng
    return eng


def compute_group(x: FinSimplicialSet, data: PostnikovData, stage: int,
                  engine: Optional[HomotopyEngine] = None) -> FullyEffectiveGroup:
    return _engine(data, engine).compute_group(x, stage)


def classes_stage(x: FinSimplicialSet, data: PostnikovData) -> int:
    """Stage i with [X, Y] = [X, P_i]: dim X clamped to [d, 2d-2]."""
    d = data.d
    if x.dim > 2 * d - 2:
        raise PreconditionError(
            f"dim X = {x.dim} exceeds the metastable bound 2d-2 = {2 * d - 2} for {data.name}")
    return min(max(x.dim, d), data.top_stage)


def homotopy_classes(x: FinSimplicialSet, data: PostnikovData,
                     engine: Optional[HomotopyEngine] = None) -> FullyEffectiveGroup:
    """[X, Y] for dim X <= 2d - 2."""
    return compute_group(x, data, classes_stage(x, data), engine)


def check_simplicial(x: FinSimplicialSet, y: FinSimplicialSet, f: Mapping) -> dict:
    """Validate a map given on nondegenerate simplices; return it as SimplexRefs."""
    fmap = {}
    for s in x.dims:
        if s not in f:
            raise ValueError(f"map is undefined on simplex {s!r}")
        r = f[s]
        if not isinstance(r, SimplexRef):
            r = SimplexRef(tuple(r[0]), r[1])
        if r.base not in y.dims:
            raise ValueError(f"unknown target simplex {r.base!r}")
        if y.ref_dim(r) != x.dims[s]:
            raise ValueError(f"simplex {s!r} is sent to a simplex of the wrong dimension")
        fmap[s] = r

    def image(ref: SimplexRef) -> SimplexRef:
        t = fmap[ref.base]
        for j in reversed(ref.word):
            t = y.degeneracy(t, j)
        return t

    for s, k in x.dims.items():
        for i in range(k + 1 if k else 0):
            if image(x.faces[s][i]) != y.face(fmap[s], i):
                raise ValueError(f"map is not simplicial at face {i} of {s!r}")
    return fmap


def compose_with_phi(x: FinSimplicialSet, f: Mapping, data: PostnikovData,
                     stage: Optional[int] = None) -> MapRep:
    """The cochain representation of phi o f: X -> P_stage."""
    if data.phi is None:
        raise ValueError(f"target {data.name} has no stored finite model")
    y, phi = data.phi
    fmap = check_simplicial(x, y, f)
    stage = data.top_stage if stage is None else stage
    comps = []
    for j in range(data.d, stage + 1):
        c = phi[j - data.d]
        vals = {}
        for s in x.nondegenerate(j):
            r = fmap[s]
            if not r.word and r.base in c.values:
                vals[s] = c.values[r.base]
        comps.append(Cochain._raw(x, j, data.pis[j], vals))
    return MapRep(x, data.d, tuple(comps))


def class_of(x: FinSimplicialSet, f: Mapping, data: PostnikovData,
             engine: Optional[HomotopyEngine] = None) -> tuple:
    """Coordinates of [phi o f] in the generators of homotopy_classes(X, data)."""
    stage = classes_stage(x, data)
    group = compute_group(x, data, stage, engine)
    return group.express(compose_with_phi(x, f, data, stage))


def homotopic(x: FinSimplicialSet, f: Mapping, g: Mapping, data: PostnikovData,
              engine: Optional[HomotopyEngine] = None) -> bool:
    return class_of(x, f, data, engine) == class_of(x, g, data, engine)


def is_nullhomotopic(x: FinSimplicialSet, f: Mapping, data: PostnikovData,
                     engine: Optional[HomotopyEngine] = None) -> bool:
    return not any(class_of(x, f, data, engine))


def cocycle_map(z: Cochain, data: PostnikovData) -> MapRep:
    """A map into a single-stage target K(pi, n) given by its cocycle."""
    if data.top_stage != data.d or z.dim != data.d or z.coeff != data.pis[data.d]:
        raise ValueError("cocycle does not match the target")
    if not is_cocycle(z):
        raise ValueError("not a cocycle")
    return MapRep(z.space, data.d, (z,))
