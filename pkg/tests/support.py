"""Random data and brute-force checks shared by the test modules."""

from homcls.cochains import Cochain, Z, Z2, solve_coboundary
from homcls.em import EmSimplex
from homcls.postnikov import StageSimplex
from homcls.shuffle import add_chains, aw, eml, normalize, product_boundary, shi
from homcls.simplicial import from_complex, simplex_name, standard_simplex, vertex_subsets

_STANDARD = {}


def rand_em(rng, m, n, coeff=Z, lo=-3, hi=3):
    return EmSimplex(m, n, coeff, [(rng.randint(lo, hi),) for _ in vertex_subsets(m, n)])


def rand_p3(rng, m, lo=-3, hi=3):
    """A random m-simplex of P_3 = K(Z, 3): the coboundary of a random 2-cochain."""
    return StageSimplex(m, 3, (rand_em(rng, m, 2, Z, lo, hi).coboundary(),))


def lift_to_p4(data, x, rng):
    """A random simplex of P_4 over x: solve delta c4 = k3(x) on Delta^m, add a coboundary."""
    m = x.m
    if m not in _STANDARD:
        _STANDARD[m] = standard_simplex(m)
    s = _STANDARD[m]
    kx = data.k_cochain(x)
    y = Cochain(s, 5, Z2, {simplex_name(f): v for f, v in zip(vertex_subsets(m, 5), kx.values)})
    c = solve_coboundary(y) if m >= 5 else None
    vals = {f: (c[simplex_name(f)] if c is not None else (0,)) for f in vertex_subsets(m, 4)}
    c4 = EmSimplex(m, 4, Z2, vals) + rand_em(rng, m, 3, Z2, 0, 1).coboundary()
    return StageSimplex(m, 3, (x.components[0], c4))


def rand_p4(data, rng, m, lo=-3, hi=3):
    return lift_to_p4(data, rand_p3(rng, m, lo, hi), rng)


TWO_TRIANGLES = [(0, 1, 2), (1, 2, 3)]


def chain_homotopy_failures(max_dim=3):
    """Check id - EML o AW = SHI d + d SHI on every nondegenerate basis pair of Q x Q.

    Q is two triangles glued along an edge; returns (pairs checked, failures).
    """
    q = from_complex(TWO_TRIANGLES)
    ap = q.apply

    def degenerate_pair(x, y):
        return bool(set(x.word) & set(y.word))

    total = fails = 0
    for m in range(max_dim + 1):
        sims = q.all_simplices(m)
        for x in sims:
            for y in sims:
                if degenerate_pair(x, y):
                    continue
                total += 1
                ew = {}
                for (i, a, b) in aw(x, y, m, ap):
                    if not (a.word or b.word):
                        ew = add_chains(ew, eml(a, b, i, m - i, ap))
                lhs = normalize(add_chains({(x, y): 1}, ew, signs=[1, -1]), degenerate_pair)
                r1 = {}
                if m > 0:
                    r1 = shi(normalize(product_boundary({(x, y): 1}, m, ap), degenerate_pair), m - 1, ap)
                r2 = product_boundary(normalize(shi({(x, y): 1}, m, ap), degenerate_pair), m + 1, ap)
                if lhs != normalize(add_chains(r1, r2), degenerate_pair):
                    fails += 1
    return total, fails


def random_cochain(rng, x, n, coeff, lo=-3, hi=3):
    vals = {s: tuple(rng.randint(lo, hi) for _ in range(coeff.rank)) for s in x.nondegenerate(n)}
    return Cochain(x, n, coeff, vals)


def random_null_map(engine, x, rng):
    """A nullhomotopic MapRep at stage 4: the restriction of a random map CX -> P_4."""
    from homcls.cochains import coboundary
    from homcls.homotopy import MapRep
    cx = engine.cone_of(x)
    c3 = coboundary(random_cochain(rng, cx, 2, Z))
    lifted = engine.xi_lift(MapRep(cx, 3, (c3,)))
    c4 = lifted.components[1] + coboundary(random_cochain(rng, cx, 3, Z2, 0, 1))
    return engine.restrict_to_base(MapRep(cx, 3, (c3, c4)))


def random_map(engine, x, rng, stage=4):
    """A random valid MapRep X -> P_stage in an arbitrary homotopy class."""
    from homcls.cochains import coboundary, cohomology_group
    from homcls.homotopy import MapRep
    h3 = cohomology_group(x, 3, Z)
    c3 = h3.synthesize([rng.randint(-3, 3) for _ in h3.generators])
    c3 = c3 + coboundary(random_cochain(rng, x, 2, Z))
    m = MapRep(x, 3, (c3,))
    if stage == 3:
        return m
    m = engine.xi_lift(m)
    h4 = cohomology_group(x, 4, Z2)
    z = h4.synthesize([rng.randint(0, 1) for _ in h4.generators])
    z = z + coboundary(random_cochain(rng, x, 3, Z2, 0, 1))
    return MapRep(x, 3, (c3, m.components[1] + z))
