import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from epwtools import exterior, linalg, strata
from epwtools.cli import gamma_instance, subseed
from conftest import random_symmetric, random_u3

mat3 = st.lists(
    st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3
)


def test_corank_of_self_tangent(chart):
    T0 = chart.tangent0()
    assert strata.corank(T0, chart.U0) == 10
    assert strata.corank(T0, chart.Uinf) == 0


def test_corank_generic_zero(chart):
    rng = random.Random(20)
    A = exterior.graph_lagrangian(random_symmetric(rng), chart)
    zeros = sum(
        strata.corank(A, random_u3(rng)) == 0 for _ in range(30)
    )
    assert zeros >= 25


def test_corank_matches_psi_kernel(chart):
    rng = random.Random(21)
    for _ in range(8):
        A = exterior.graph_lagrangian(random_symmetric(rng), chart)
        U = random_u3(rng)
        TU = exterior.tangent_lagrangian(U)
        if exterior.intersection_dim(TU, chart.tangent_inf()) != 0:
            continue
        form = strata.psi(A, U, chart)
        assert 10 - linalg.rank(form) == strata.corank(A, U)


def test_corank_gamma_attains_four(gamma_data, chart):
    A, K = gamma_data
    assert K.dim == 4
    assert strata.corank(A, chart.U0) == 4
    assert exterior.intersection_dim(A, chart.tangent0()) == 4


@given(mat3)
@settings(max_examples=100, deadline=None)
def test_phi_involution(M):
    P = strata.phi_cofactor(M)
    d = linalg.det(M)
    PP = strata.phi_cofactor(P)
    assert all(PP[i][j] == d * M[i][j] for i in range(3) for j in range(3))


@given(st.lists(st.integers(-6, 6), min_size=6, max_size=6))
@settings(max_examples=100, deadline=None)
def test_phi_rank_mapping(v):
    x, y = v[:3], v[3:]
    R1 = [[x[i] * y[j] for j in range(3)] for i in range(3)]
    if any(e for row in R1 for e in row):
        assert all(e == 0 for row in strata.phi_cofactor(R1) for e in row)
    R2 = [[x[i] * y[j] + y[i] * x[j] for j in range(3)] for i in range(3)]
    if linalg.rank(R2) == 2:
        assert linalg.rank(strata.phi_cofactor(R2)) == 1


def test_cofactor_quadrics_evaluate():
    rng = random.Random(22)
    quads = strata.cofactor_quadrics()
    assert len(quads) == 9
    for _ in range(50):
        M = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        flat = [x for row in M for x in row]
        P = strata.phi_cofactor(M)
        for idx, Q in enumerate(quads):
            i, j = idx // 3, idx % 3
            assert strata.evaluate_quadric(Q, flat) == P[i][j]
    tri = [(i, j) for i in range(9) for j in range(i, 9)]
    assert linalg.rank([[q[i][j] for i, j in tri] for q in quads]) == 9


def _k_subspace(chart, k, seed):
    """A certified k-dim subspace of T0 avoiding the vertex line."""
    T0 = chart.tangent0()
    t0_rows = [list(r) for r in T0.rows]
    rng = random.Random(seed)
    while True:
        coeffs = [
            [Fraction(rng.randint(-5, 5)) for _ in range(10)] for _ in range(k)
        ]
        K = exterior.Subspace(20, linalg.matmul(coeffs, t0_rows))
        if K.dim != k:
            continue
        if not exterior.decomposable_free_certificate(K).certified:
            continue
        try:
            return K, strata.restriction_map(K, chart)
        except ValueError:
            continue


@pytest.mark.parametrize("k,expected", [(1, 1), (2, 3), (3, 6), (4, 9)])
def test_restriction_map_ranks(chart, k, expected):
    for trial in range(3):
        K, rmap = _k_subspace(chart, k, subseed(30 + k, trial))
        assert rmap.rank == expected
        if k == 4:
            assert rmap.annihilator is not None
            assert rmap.annihilator_rank == 4
            # the annihilator kills every restricted cofactor form
            tri = strata._sym_flatten_basis(4)
            a_flat = [
                rmap.annihilator[i][j] * (1 if i == j else 2) for i, j in tri
            ]
            for row in rmap.matrix:
                assert sum(x * y for x, y in zip(row, a_flat)) == 0


def test_restriction_map_rejects_outside_t0(chart):
    Tinf = chart.tangent_inf()
    K = exterior.Subspace(20, [list(Tinf.rows[0])])
    with pytest.raises(ValueError):
        strata.restriction_map(K, chart)


def test_tangent_map_check_spanning_k(chart):
    # k = 3 is exercised by the acceptance gate; keep the unit test lean
    T0 = chart.tangent0()
    for k in (2, 4):
        K, _ = _k_subspace(chart, k, subseed(40, k))
        A = exterior.lagrangian_through(K, subseed(41, k))
        assert exterior.intersection_dim(A, T0) == k
        assert strata.tangent_map_check(A, chart)


def test_tangent_map_check_trivial_when_disjoint(chart):
    rng = random.Random(23)
    A = exterior.graph_lagrangian(random_symmetric(rng), chart)
    if exterior.intersection_dim(A, chart.tangent0()) == 0:
        assert strata.tangent_map_check(A, chart)


def test_line_degree_is_four(chart):
    rng = random.Random(24)
    A = exterior.graph_lagrangian(random_symmetric(rng), chart)
    pencil = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]]
    assert strata.line_degree(A, pencil) == 4


def test_line_degree_rejects_degenerate_pencil(chart):
    rng = random.Random(25)
    A = exterior.graph_lagrangian(random_symmetric(rng), chart)
    pencil = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [1, 1, 1, 0, 0, 0]]
    with pytest.raises(ValueError):
        strata.line_degree(A, pencil)


def test_stratum_sample_requires_certificate(chart):
    # T0 itself contains decomposables, so no certificate exists for it
    with pytest.raises(ValueError):
        strata.stratum_sample(chart.tangent0(), 5, 0)


def test_stratum_sample_deterministic(chart):
    rng = random.Random(26)
    A = exterior.graph_lagrangian(random_symmetric(rng), chart)
    cert = exterior.decomposable_free_certificate(A)
    s1 = strata.stratum_sample(A, 50, 123, certificate=cert)
    s2 = strata.stratum_sample(A, 50, 123, certificate=cert)
    assert s1.to_json() == s2.to_json()
    assert sum(s1.histogram.values()) == 50
    assert s1.max_corank() <= 4


def test_stratum_sample_special_points(gamma_data, chart):
    A, _K = gamma_data
    cert = exterior.decomposable_free_certificate(A)
    s = strata.stratum_sample(
        A, 20, 7, certificate=cert, special_subspaces=[chart.U0]
    )
    assert s.special_points[0]["corank"] == 4
    assert s.max_corank() == 4
