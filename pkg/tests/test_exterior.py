import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from epwtools import exterior, linalg
from conftest import random_symmetric, random_u3


def unit(I):
    v = [Fraction(0)] * 20
    v[exterior.INDEX3[I]] = Fraction(1)
    return v


vec6 = st.lists(st.integers(-7, 7), min_size=6, max_size=6)


def test_pairing_values():
    assert exterior.symplectic_pairing(unit((1, 2, 3)), unit((4, 5, 6))) == 1
    # sign of the permutation (1,2,4,3,5,6): one inversion
    assert exterior.symplectic_pairing(unit((1, 2, 4)), unit((3, 5, 6))) == -1
    assert linalg.rank(exterior.OMEGA) == 20


@given(vec6, vec6, vec6)
@settings(max_examples=40, deadline=None)
def test_pairing_antisymmetric(a, b, c):
    t = exterior.wedge3(a, b, c)
    assert exterior.symplectic_pairing(t, t) == 0


def test_wedge3_basis_cases():
    e = [[int(i == j) for j in range(6)] for i in range(6)]
    assert exterior.wedge3(e[0], e[1], e[2]) == unit((1, 2, 3))
    assert exterior.wedge3(e[1], e[0], e[2]) == [-x for x in unit((1, 2, 3))]
    assert all(x == 0 for x in exterior.wedge3(e[0], e[0], e[2]))


@given(vec6, vec6, vec6, vec6)
@settings(max_examples=40, deadline=None)
def test_wedge3_multilinear(a, b, c, d):
    left = exterior.wedge3([x + y for x, y in zip(a, d)], b, c)
    right = [
        x + y for x, y in zip(exterior.wedge3(a, b, c), exterior.wedge3(d, b, c))
    ]
    assert left == right


def test_tangent_lagrangian_standard():
    e = [[int(i == j) for j in range(6)] for i in range(6)]
    T0 = exterior.tangent_lagrangian(exterior.Subspace(6, e[:3]))
    Tinf = exterior.tangent_lagrangian(exterior.Subspace(6, e[3:]))
    assert T0.dim == 10 and exterior.is_lagrangian(T0)
    assert exterior.intersection_dim(T0, Tinf) == 0
    assert exterior.intersection_dim(T0, T0) == 10
    # explicit description: subsets with at least two indices below 4
    expected = [
        unit(I)
        for I in exterior.TUPLES3
        if sum(1 for x in I if x <= 3) >= 2
    ]
    assert T0 == exterior.Subspace(20, expected)


def test_tangent_lagrangian_basis_independent():
    rng = random.Random(5)
    U = random_u3(rng)
    mixed = linalg.matmul(
        [[2, 1, 0], [1, 1, 1], [0, 3, 1]], [list(r) for r in U.rows]
    )
    assert exterior.tangent_lagrangian(U) == exterior.tangent_lagrangian(
        exterior.Subspace(6, mixed)
    )


def test_tangent_lagrangian_random():
    rng = random.Random(6)
    for _ in range(10):
        T = exterior.tangent_lagrangian(random_u3(rng))
        assert T.dim == 10
        assert exterior.is_lagrangian(T)


def test_is_lagrangian_rejects_nonisotropic():
    rows = [unit(I) for I in [(1, 2, 3), (4, 5, 6)]]
    rows += [unit(I) for I in list(exterior.TUPLES3)[1:9]]
    S = exterior.Subspace(20, rows)
    if S.dim == 10:
        assert not exterior.is_lagrangian(S)


def test_graph_lagrangian_roundtrip(chart):
    rng = random.Random(8)
    zero = [[Fraction(0)] * 10 for _ in range(10)]
    assert exterior.graph_lagrangian(zero, chart) == chart.tangent0()
    for _ in range(5):
        q = random_symmetric(rng)
        A = exterior.graph_lagrangian(q, chart)
        assert exterior.is_lagrangian(A)
        assert exterior.intersection_dim(A, chart.tangent_inf()) == 0
        assert linalg.mat_eq(exterior.q_of_lagrangian(A, chart), q)


def test_graph_lagrangian_rejects_asymmetric(chart):
    q = [[Fraction(0)] * 10 for _ in range(10)]
    q[0][1] = Fraction(1)
    with pytest.raises(ValueError):
        exterior.graph_lagrangian(q, chart)


def test_q_of_lagrangian_outside_chart(chart):
    with pytest.raises(ValueError):
        exterior.q_of_lagrangian(chart.tangent_inf(), chart)


def test_lagrangian_through(chart):
    T0 = chart.tangent0()
    assert exterior.lagrangian_through(T0, 1) == T0
    K = exterior.Subspace(20, [list(r) for r in T0.rows[:4]])
    A = exterior.lagrangian_through(K, 3)
    assert exterior.is_lagrangian(A)
    assert exterior.intersection_dim(A, T0) == 4
    assert exterior.lagrangian_through(K, 3) == A  # deterministic
    assert exterior.lagrangian_through(K, 4) != A
    R = exterior.lagrangian_through(exterior.Subspace(20, []), 9)
    assert exterior.is_lagrangian(R)


def test_lagrangian_through_rejects_nonisotropic():
    bad = exterior.Subspace(20, [unit((1, 2, 3)), unit((4, 5, 6))])
    with pytest.raises(ValueError):
        exterior.lagrangian_through(bad, 0)


@given(vec6, vec6, vec6)
@settings(max_examples=30, deadline=None)
def test_decomposable_witness_on_wedges(a, b, c):
    t = exterior.wedge3(a, b, c)
    if any(x != 0 for x in t):
        assert exterior.decomposable_witness(t)


def test_decomposable_witness_cases():
    assert exterior.decomposable_witness(unit((1, 2, 3)))
    both = [a + b for a, b in zip(unit((1, 2, 3)), unit((4, 5, 6)))]
    assert not exterior.decomposable_witness(both)
    factored = [a + b for a, b in zip(unit((1, 2, 3)), unit((1, 2, 4)))]
    assert exterior.decomposable_witness(factored)
    with pytest.raises(ValueError):
        exterior.decomposable_witness([0] * 20)


def test_plucker_quadrics_span():
    quads = exterior.plucker_quadrics()
    assert len(quads) == 35
    tri = [(i, j) for i in range(20) for j in range(i, 20)]
    assert linalg.rank([[q[i][j] for i, j in tri] for q in quads]) == 35
    # vanish on decomposables, not on a sum of complementary wedges
    w = exterior.wedge3([1, 2, 3, 4, 5, 6], [0, 1, 1, 0, 2, -1], [3, 0, 0, 1, 1, 1])
    for q in quads:
        assert sum(q[i][j] * w[i] * w[j] for i in range(20) for j in range(20)) == 0
    both = [a + b for a, b in zip(unit((1, 2, 3)), unit((4, 5, 6)))]
    vals = [
        sum(q[i][j] * both[i] * both[j] for i in range(20) for j in range(20))
        for q in quads
    ]
    assert any(v != 0 for v in vals)


def test_emptiness_certificate_full_basis():
    # a basis of all quadratic monomials on 3 variables spans, so the
    # certificate closes at degree 2
    quads = []
    for i in range(3):
        for j in range(i, 3):
            m = [[Fraction(0)] * 3 for _ in range(3)]
            m[i][j] += Fraction(1, 2)
            m[j][i] += Fraction(1, 2)
            quads.append(m)
    res = exterior.emptiness_certificate(quads, 6)
    assert res == exterior.CertifiedEmpty(2)


def test_emptiness_certificate_squares_only():
    # the squares of the coordinates have no common zero, but their
    # ideal first contains every monomial only in degree n + 1
    quads = []
    for i in range(4):
        m = [[0] * 4 for _ in range(4)]
        m[i][i] = 1
        quads.append(m)
    assert exterior.emptiness_certificate(quads, 6) == exterior.CertifiedEmpty(5)


def test_emptiness_certificate_inconclusive_on_common_zero():
    m = [[0, 1], [1, 0]]
    res = exterior.emptiness_certificate([m], 6)
    assert not res.certified


def test_certificate_spot_check_no_zero(chart):
    # certified-empty restricted quadrics have no zero on a rational sample
    rng = random.Random(10)
    A = exterior.graph_lagrangian(random_symmetric(rng), chart)
    cert = exterior.decomposable_free_certificate(A)
    assert cert.certified
    quads = [
        exterior.restrict_quadric(q, A.rows) for q in exterior.plucker_quadrics()
    ]
    for _ in range(200):
        x = [rng.randint(-5, 5) for _ in range(10)]
        if all(v == 0 for v in x):
            continue
        vals = [
            sum(q[i][j] * x[i] * x[j] for i in range(10) for j in range(10))
            for q in quads
        ]
        assert any(v != 0 for v in vals)


def test_serialization_roundtrip(chart):
    rng = random.Random(12)
    A = exterior.graph_lagrangian(random_symmetric(rng), chart)
    data = exterior.subspace_to_json(A)
    back = exterior.subspace_from_json(data)
    assert back == A
    assert exterior.frac_to_str(Fraction(-3, 7)) == "-3/7"
    assert exterior.frac_from_str("-3/7") == Fraction(-3, 7)
