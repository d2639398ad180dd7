import random
from fractions import Fraction

import pytest

from homcls.io import data_path, load_space
from homcls.simplicial import boundary_simplex, cone, from_complex, minimal_sphere, suspension, wedge


def bundled(name):
    return load_space(data_path(name + ".json"))


def rank_over(mat, p=None):
    """Rank over Q (p None) or F_p by plain Gaussian elimination."""
    rows = [[Fraction(v) if p is None else v % p for v in r] for r in mat]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col] if p is None else pow(rows[rank][col], -1, p)
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] * inv
                rows[i] = [a - f * b if p is None else (a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


TWO_TRIANGLES = [(0, 1, 2), (1, 2, 3)]


@pytest.fixture(scope="session")
def spaces():
    out = {
        "dd4": bundled("dd4"),
        "rp2": bundled("rp2"),
        "torus": bundled("torus7"),
        "s3": minimal_sphere(3),
        "s4": minimal_sphere(4),
        "wedge": wedge(minimal_sphere(4), minimal_sphere(3)),
        "dd5": boundary_simplex(5),
        "two": from_complex(TWO_TRIANGLES),
    }
    out["cone_rp2"] = cone(out["rp2"])
    out["susp_torus"] = suspension(out["torus"])
    out["susp_dd4"] = suspension(out["dd4"])
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)
