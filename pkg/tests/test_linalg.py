from fractions import Fraction

from hypothesis import given, settings, strategies as st

from epwtools import linalg
from epwtools.smith import invariant_factors, saturated_kernel, smith_normal_form

fracs = st.fractions(
    min_value=-20, max_value=20, max_denominator=7
)


def square(n, elems=fracs):
    return st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n)


@given(square(4))
@settings(max_examples=60, deadline=None)
def test_det_vs_rank(a):
    assert (linalg.det(a) != 0) == (linalg.rank(a) == 4)


@given(square(3), square(3))
@settings(max_examples=60, deadline=None)
def test_det_multiplicative(a, b):
    assert linalg.det(linalg.matmul(a, b)) == linalg.det(a) * linalg.det(b)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_kernel_annihilates(m):
    for v in linalg.kernel(m):
        for row in m:
            assert sum(Fraction(x) * y for x, y in zip(row, v)) == 0
    assert len(linalg.kernel(m)) == 5 - linalg.rank(m)


def test_rref_canonical():
    a = [[2, 4, 6], [1, 2, 3], [0, 0, 5]]
    b = [[1, 2, 0], [0, 0, 1]]
    ra, _ = linalg.rref(a)
    rb, _ = linalg.rref(b)
    assert ra == rb


def test_solve_roundtrip():
    a = [[2, 1], [1, 3]]
    b = [[5], [10]]
    x = linalg.solve(a, b)
    assert linalg.mat_eq(linalg.matmul(a, x), b)


def test_solve_singular_raises():
    import pytest

    with pytest.raises(ValueError):
        linalg.solve([[1, 2], [2, 4]], [[1], [1]])


def test_solve_rect():
    a = [[1, 0], [0, 1], [1, 1]]
    b = [[2], [3], [5]]
    x = linalg.solve_rect(a, b)
    assert x == [[Fraction(2)], [Fraction(3)]]


def test_inertia_basics():
    assert linalg.inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert linalg.inertia([[2, 0], [0, -3]]) == (1, 1, 0)
    assert linalg.inertia([[1, 1], [1, 1]]) == (1, 0, 1)
    assert linalg.inertia([[0, 0], [0, 0]]) == (0, 0, 2)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=5, max_size=5), min_size=5, max_size=5))
@settings(max_examples=80, deadline=None)
def test_inertia_int_matches_rational(a):
    sym = [[a[i][j] + a[j][i] for j in range(5)] for i in range(5)]
    got = linalg.inertia(sym)
    want = linalg.inertia([[Fraction(x) for x in row] for row in sym])
    assert got == want
    assert got[0] + got[1] == linalg.rank(sym)


@given(st.lists(st.lists(st.integers(-8, 8), min_size=4, max_size=4), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_smith_form(m):
    s, u, v = smith_normal_form(m)
    assert linalg.mat_eq(linalg.matmul(linalg.matmul(u, m), v), s)
    assert abs(linalg.det(u)) == 1
    assert abs(linalg.det(v)) == 1
    diag = [s[i][i] for i in range(3)]
    for x, y in zip(diag, diag[1:]):
        if x:
            assert y % x == 0
        else:
            assert y == 0


@given(st.lists(st.lists(st.integers(-7, 7), min_size=5, max_size=5), min_size=2, max_size=2))
@settings(max_examples=60, deadline=None)
def test_saturated_kernel(m):
    ker = saturated_kernel(m)
    assert len(ker) == 5 - linalg.rank(m)
    for x in ker:
        for row in m:
            assert sum(a * b for a, b in zip(row, x)) == 0
    if ker:
        # saturation: the kernel basis extends to a basis of Z^5
        assert invariant_factors(ker) == [1] * len(ker)
