"""Exact univariate polynomials over Q: interpolation, gcd, evaluation.

Polynomials are coefficient lists [c0, c1, ...] of Fractions, lowest
degree first, with no trailing zeros (the zero polynomial is []).
"""

from __future__ import annotations

from fractions import Fraction


def trim(coeffs):
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(coeffs) -> int:
    """Degree, with deg(0) = -1."""
    c = trim(coeffs)
    return len(c) - 1


def evaluate(coeffs, t):
    acc = Fraction(0)
    for c in reversed(trim(coeffs)):
        acc = acc * t + c
    return acc


def interpolate(points):
    """Newton interpolation through [(t_i, y_i)] with distinct t_i."""
    ts = [Fraction(t) for t, _ in points]
    ys = [Fraction(y) for _, y in points]
    n = len(points)
    # divided differences
    dd = list(ys)
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (ts[i] - ts[i - k])
    # expand the Newton form
    coeffs = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - t_k) + dd[k]
        new = [Fraction(0)] * n
        for i in range(n - 1):
            new[i + 1] += coeffs[i]
            new[i] -= coeffs[i] * ts[k]
        new[0] += dd[k]
        coeffs = new
    return trim(coeffs)


def interpolate_verified(sample, max_degree: int):
    """Interpolate t -> sample(t) from max_degree+1 points, then confirm
    the result on two extra points.  Guards against an underestimated
    degree bound."""
    pts = [(Fraction(t), sample(Fraction(t))) for t in range(max_degree + 1)]
    poly = interpolate(pts)
    for t in (max_degree + 1, max_degree + 2):
        if evaluate(poly, Fraction(t)) != sample(Fraction(t)):
            raise ValueError("degree bound exceeded in interpolation")
    return poly


def _divmod(a, b):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] / b[-1]
        q[k] = f
        for i, bc in enumerate(b):
            r[k + i] -= f * bc
        r = trim(r)
    return trim(q), r


def poly_gcd(a, b):
    """Monic gcd over Q."""
    a = trim(a)
    b = trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a
