"""Eilenberg-Zilber operators on normalized chains of a product.

The chain homotopy SHI between the identity and EML o AW on C_*(X x Y) is
what turns the nonadditivity of a k-invariant into an explicit correction
cochain.  Every term of SHI applies a fixed simplicial operator to each
factor, so SHI in degree m is precomputed once as a list of
(sign, theta_1, theta_2) with theta_k: [m+1] -> [m] monotone.  AW and EML
are only used to validate the homotopy identity.

All functions are generic in the simplices: callers pass `apply(x, theta)`
computing x * theta for their simplicial set.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Hashable, Iterable

Chain = dict  # (x, y) -> integer coefficient
Apply = Callable[[Hashable, tuple], Hashable]


def collapse(n: int, positions: Iterable[int]) -> tuple:
    """Monotone surjection on [n] with theta(j) = theta(j+1) exactly for j in positions."""
    pos = set(positions)
    out, v = [0], 0
    for j in range(n):
        if j not in pos:
            v += 1
        out.append(v)
    return tuple(out)


def compose(outer: tuple, inner: tuple) -> tuple:
    """outer o inner as vertex maps."""
    return tuple(outer[j] for j in inner)


def inclusion(vertices: Iterable[int]) -> tuple:
    return tuple(vertices)


@lru_cache(maxsize=None)
def shi_terms(m: int) -> tuple:
    """SHI in degree m as (sign, theta_1, theta_2) triples.

    Sum over (p+1, q)-shuffles (alpha, beta) of {0..p+q} with p + q <= m-1,
    mbar = m - p - q, sign (-1)^(mbar + sum_i (alpha_i - i)):
      first factor  s_{{mbar-1} u (beta + mbar)} of the front (m-q)-face,
      second factor s_{alpha + mbar} of the face missing vertices mbar..m-q-1.
    """
    out = []
    for k in range(m):
        for q in range(k + 1):
            p = k - q
            mbar = m - p - q
            front = inclusion(range(m - q + 1))
            gapped = inclusion([*range(mbar), *range(m - q, m + 1)])
            for alpha in combinations(range(p + q + 1), p + 1):
                beta = [v for v in range(p + q + 1) if v not in alpha]
                sig = sum(a - i for i, a in enumerate(alpha))
                sign = -1 if (mbar + sig) % 2 else 1
                deg1 = collapse(m + 1, [mbar - 1, *(b + mbar for b in beta)])
                deg2 = collapse(m + 1, [a + mbar for a in alpha])
                out.append((sign, compose(front, deg1), compose(gapped, deg2)))
    return tuple(out)


def shi_pair(x, y, m: int, apply: Apply) -> Chain:
    out: Chain = {}
    for sign, t1, t2 in shi_terms(m):
        key = (apply(x, t1), apply(y, t2))
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def shi(chain: Chain, m: int, apply: Apply) -> Chain:
    """SHI extended linearly over a chain of m-dimensional pairs."""
    out: Chain = {}
    for (x, y), c in chain.items():
        for key, v in shi_pair(x, y, m, apply).items():
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


def product_boundary(chain: Chain, m: int, apply: Apply) -> Chain:
    """d(x, y) = sum_i (-1)^i (d_i x, d_i y)."""
    out: Chain = {}
    for (x, y), c in chain.items():
        for i in range(m + 1):
            theta = tuple(j if j < i else j + 1 for j in range(m))
            key = (apply(x, theta), apply(y, theta))
            out[key] = out.get(key, 0) + (c if i % 2 == 0 else -c)
    return {k: v for k, v in out.items() if v}


def aw(x, y, m: int, apply: Apply) -> dict:
    """Alexander-Whitney: sum_i (front i-face of x) (x) (back (m-i)-face of y).

    Keys are (i, front, back); all coefficients are 1.
    """
    return {(i, apply(x, inclusion(range(i + 1))), apply(y, inclusion(range(i, m + 1)))): 1
            for i in range(m + 1)}


@lru_cache(maxsize=None)
def eml_terms(p: int, q: int) -> tuple:
    """(sign, collapse for the p-simplex, collapse for the q-simplex) per (p, q)-shuffle."""
    out = []
    for mu in combinations(range(p + q), p):
        nu = [v for v in range(p + q) if v not in mu]
        sig = sum(a - i for i, a in enumerate(mu))
        out.append((-1 if sig % 2 else 1, collapse(p + q, nu), collapse(p + q, mu)))
    return tuple(out)


def eml(a, b, p: int, q: int, apply: Apply) -> Chain:
    """Eilenberg-MacLane shuffle map of a (x) b with dim a = p, dim b = q."""
    out: Chain = {}
    for sign, t1, t2 in eml_terms(p, q):
        key = (apply(a, t1), apply(b, t2))
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def normalize(chain: Chain, is_degenerate_pair: Callable) -> Chain:
    """Drop degenerate pairs (zero in normalized chains) and zero coefficients."""
    return {k: v for k, v in chain.items() if v and not is_degenerate_pair(*k)}


def add_chains(*chains: Chain, signs=None) -> Chain:
    out: Chain = {}
    for idx, ch in enumerate(chains):
        s = 1 if signs is None else signs[idx]
        for k, v in ch.items():
            out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}
