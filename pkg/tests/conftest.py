import random
from fractions import Fraction

import pytest

from epwtools import exterior, linalg, strata
from epwtools.cli import gamma_instance, subseed


def random_symmetric(rng, n=10, bound=9):
    q = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            q[i][j] = q[j][i] = Fraction(rng.randint(-bound, bound))
    return q


def random_u3(rng, bound=10):
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(6)] for _ in range(3)]
        if linalg.rank(rows) == 3:
            return exterior.Subspace(6, rows)


@pytest.fixture(scope="session")
def chart():
    return exterior.default_chart()


@pytest.fixture(scope="session")
def gamma_data(chart):
    """A Lagrangian of corank exactly 4 at the chart's U0, with the
    4-dim intersection it was built over."""
    return gamma_instance(2024, chart)


@pytest.fixture(scope="session")
def certified_pool(chart, gamma_data):
    """Ten certified decomposable-free Lagrangians (nine random graphs
    plus the corank-4 construction), shared across acceptance tests."""
    pool = []
    for i in range(9):
        rng = random.Random(subseed(77, f"pool{i}"))
        A = exterior.graph_lagrangian(random_symmetric(rng), chart)
        cert = exterior.decomposable_free_certificate(A)
        assert cert.certified
        pool.append((f"random-{i}", A, cert))
    A, _K = gamma_data
    cert = exterior.decomposable_free_certificate(A)
    assert cert.certified
    pool.append(("gamma", A, cert))
    return pool
