from functools import reduce
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from homcls.intlinalg import (LinearSolver, determinant, identity, left_kernel, matmul, matvec,
                              smith_normal_form, solve_linear, transpose, vecmat)

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def minors_gcd(a, k):
    rows, cols = len(a), len(a[0])
    g = 0
    for ri in combinations(range(rows), k):
        for ci in combinations(range(cols), k):
            g = gcd(g, determinant([[a[i][j] for j in ci] for i in ri]))
    return g


def determinantal_invariants(a):
    """Elementary divisors from gcds of k x k minors, independent of any elimination."""
    out, prev = [], 1
    for k in range(1, min(len(a), len(a[0])) + 1):
        dk = minors_gcd(a, k)
        if dk == 0:
            break
        out.append(dk // prev)
        prev = dk
    return out


def test_determinant_small():
    assert determinant([[2, 1], [7, 4]]) == 1
    assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
    assert determinant([[0, 1], [1, 0]]) == -1


def test_snf_known_values():
    snf = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert snf.diagonal == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == [0, 0]
    assert smith_normal_form([[6, 4]]).diagonal == [2]


def test_snf_empty_shapes():
    snf = smith_normal_form([], 3)
    assert snf.T == identity(3) and snf.rank == 0
    assert smith_normal_form([[], []], 0).S == identity(2)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_snf_factorization(a):
    snf = smith_normal_form(a)
    assert matmul(matmul(snf.S, a), snf.T) == snf.D
    assert abs(determinant(snf.S)) == 1 and abs(determinant(snf.T)) == 1
    diag = snf.diagonal
    for i, row in enumerate(snf.D):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0
    assert all(v >= 0 for v in diag)
    nz = [v for v in diag if v]
    assert diag[: len(nz)] == nz
    for x, y in zip(nz, nz[1:]):
        assert y % x == 0


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(a):
    nz = [v for v in smith_normal_form(a).diagonal if v]
    assert nz == determinantal_invariants(a)


def test_snf_deterministic():
    a = [[3, 5, 7], [2, 4, 6], [9, 1, 1]]
    s1, s2 = smith_normal_form(a), smith_normal_form(a)
    assert (s1.S, s1.D, s1.T) == (s2.S, s2.D, s2.T)


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_solver_finds_solutions_and_kernel(a, data):
    cols = len(a[0])
    x = data.draw(st.lists(st.integers(-5, 5), min_size=cols, max_size=cols))
    b = matvec(a, x)
    sol, kernel = solve_linear(a, b, cols)
    assert sol is not None and matvec(a, sol) == b
    for k in kernel:
        assert not any(matvec(a, k))
    assert len(kernel) == cols - smith_normal_form(a).rank


def test_solver_detects_inconsistency():
    assert LinearSolver([[2, 0], [0, 2]], 2).solve([1, 0]) is None
    assert LinearSolver([[1, 1]], 2).solve([3]) is not None


def test_canonical_solution_is_stable():
    solver = LinearSolver([[1, 1, 0], [0, 1, 1]], 3)
    assert solver.solve([2, 3]) == solver.solve([2, 3])


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_left_kernel(a):
    cols = len(a[0])
    for v in left_kernel(a, cols):
        assert not any(vecmat(v, a, cols))
    assert len(left_kernel(a, cols)) == len(a) - smith_normal_form(a).rank


def test_transpose_and_products():
    a = [[1, 2, 3], [4, 5, 6]]
    assert transpose(a) == [[1, 4], [2, 5], [3, 6]]
    assert matmul(a, identity(3)) == a
    assert vecmat([1, -1], a) == [-3, -3, -3]
    assert matvec(a, [1, 0, -1]) == [-2, -2]


def test_large_entries_stay_exact():
    big = 2 ** 70
    snf = smith_normal_form([[big, 0], [0, 3 * big]])
    assert snf.diagonal == [big, 3 * big]
    assert reduce(gcd, snf.diagonal) == big


@pytest.mark.parametrize("a,expected", [([[4]], [4]), ([[-4]], [4]), ([[2, 0], [0, 3]], [1, 6])])
def test_small_diagonals(a, expected):
    assert smith_normal_form(a).diagonal == expected
