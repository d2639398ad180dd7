from itertools import combinations

from homcls.shuffle import (add_chains, aw, collapse, compose, eml, eml_terms, normalize,
                            product_boundary, shi_terms)
from homcls.simplicial import from_complex, standard_simplex

from support import TWO_TRIANGLES, chain_homotopy_failures


def degenerate_pair(x, y):
    return bool(set(x.word) & set(y.word))


def test_chain_homotopy_identity():
    total, fails = chain_homotopy_failures(3)
    assert total == 275
    assert fails == 0


def test_collapse_and_compose():
    assert collapse(3, [1]) == (0, 1, 1, 2)
    assert collapse(2, []) == (0, 1, 2)
    assert compose((0, 2, 3), (0, 0, 1)) == (0, 0, 2)


def test_shi_terms_shapes():
    assert shi_terms(0) == ()
    for m in range(1, 5):
        for sign, t1, t2 in shi_terms(m):
            assert sign in (1, -1)
            assert len(t1) == len(t2) == m + 2
            assert list(t1) == sorted(t1) and list(t2) == sorted(t2)
            assert max(t1) <= m and max(t2) <= m


def test_shuffle_count():
    for p in range(4):
        for q in range(4):
            assert len(eml_terms(p, q)) == len(list(combinations(range(p + q), p)))


def test_aw_after_eml_is_identity():
    """AW o EML = id on normalized chains, checked on nondegenerate pairs of a square."""
    x = from_complex(TWO_TRIANGLES)
    ap = x.apply
    for p in range(3):
        for q in range(3):
            for a in x.nondegenerate(p):
                for b in x.nondegenerate(q):
                    out = {}
                    for (u, v), c in eml(x.ref(a), x.ref(b), p, q, ap).items():
                        for (i, f, g) in aw(u, v, p + q, ap):
                            if not (f.word or g.word):
                                out[(i, f, g)] = out.get((i, f, g), 0) + c
                    out = {k: v for k, v in out.items() if v}
                    assert out == {(p, x.ref(a), x.ref(b)): 1}


def test_eml_after_aw_not_identity_in_dim_one():
    """EML o AW differs from the identity on the diagonal edge of Delta^1 x Delta^1."""
    x = standard_simplex(1)
    ap = x.apply
    e = x.ref("0,1")
    ew = {}
    for (i, a, b) in aw(e, e, 1, ap):
        if not (a.word or b.word):
            ew = add_chains(ew, eml(a, b, i, 1 - i, ap))
    assert normalize(ew, degenerate_pair) != {(e, e): 1}
    v = x.ref("0")
    ew0 = {}
    for (i, a, b) in aw(v, v, 0, ap):
        ew0 = add_chains(ew0, eml(a, b, i, 0, ap))
    assert ew0 == {(v, v): 1}


def test_product_boundary_squares_to_zero():
    x = standard_simplex(3)
    ap = x.apply
    for m in range(2, 4):
        for a in x.all_simplices(m)[:6]:
            for b in x.all_simplices(m)[:6]:
                d1 = product_boundary({(a, b): 1}, m, ap)
                assert product_boundary(d1, m - 1, ap) == {}
