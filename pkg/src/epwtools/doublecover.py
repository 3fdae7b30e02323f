"""The double cover of the rank-2 symmetric-matrix cone by rank-1
tensors, mu -> mu + mu^T, with its graded ring identities, hyperplane
pullback, incidence membership, and the sign-choice flop graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from . import linalg


def tensor_rank(mu) -> int:
    return linalg.rank(mu)


def g2(mu):
    """mu + mu^T for a rank <= 1 square tensor; output has rank <= 2."""
    n = len(mu)
    if linalg.rank(mu) > 1:
        raise ValueError("expected a tensor of rank at most 1")
    return [
        [Fraction(mu[i][j]) + Fraction(mu[j][i]) for j in range(n)]
        for i in range(n)
    ]


def outer(x, y):
    return [[Fraction(a) * Fraction(b) for b in y] for a in x]


@dataclass(frozen=True)
class RequiresExtension:
    """Marker: the fiber exists only over a quadratic extension of Q."""

    discriminant: Fraction


def _rational_sqrt(x):
    """Exact square root of a nonnegative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    rn = isqrt(x.numerator)
    rd = isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def fiber_g2(S, mu_hint=None):
    """The two-element fiber {mu, mu^T} of g2 over a rank-2 symmetric S.

    With a hint mu such that g2(mu) = S the fiber is returned directly.
    Without one, a rational rank-1 factorization S = x y^T + y x^T is
    attempted; if it requires an irrational square root the marker
    RequiresExtension is returned (never a wrong answer).
    """
    n = len(S)
    if not linalg.is_symmetric(S):
        raise ValueError("expected a symmetric matrix")
    if linalg.rank(S) != 2:
        raise ValueError("expected rank exactly 2")
    if mu_hint is not None:
        if not linalg.mat_eq(g2(mu_hint), S):
            raise ValueError("hint does not map to the given matrix")
        mt = linalg.transpose(mu_hint)
        pair = [mu_hint] if linalg.mat_eq(mu_hint, mt) else [mu_hint, mt]
        return pair
    # column-space basis (two independent columns of S)
    cols = linalg.transpose([[Fraction(x) for x in row] for row in S])
    a = b = None
    for c in cols:
        if any(x != 0 for x in c):
            if a is None:
                a = c
            elif linalg.rank([a, c]) == 2:
                b = c
                break
    # S = alpha a a^T + beta (a b^T + b a^T) + gamma b b^T
    coeffs = linalg.transpose(linalg.solve_rect(linalg.transpose([a, b]), linalg.transpose(cols)))
    # column j of S is coeffs[j][0] a + coeffs[j][1] b; by symmetry the
    # two coefficient rows are themselves combinations of a and b
    w1 = [c[0] for c in coeffs]
    w2 = [c[1] for c in coeffs]
    ab = linalg.transpose(linalg.solve_rect(linalg.transpose([a, b]), linalg.transpose([w1, w2])))
    alpha, beta = ab[0][0], ab[0][1]
    beta2, gamma = ab[1][0], ab[1][1]
    assert beta == beta2
    disc = beta * beta - alpha * gamma
    r = _rational_sqrt(disc)
    if r is None:
        return RequiresExtension(disc)
    # factor alpha s^2 + 2 beta s t + gamma t^2 = 2 (x1 s + x2 t)(y1 s + y2 t)
    if alpha != 0:
        lam1 = (-beta + r) / alpha
        lam2 = (-beta - r) / alpha
        x12 = (alpha / 2, -alpha / 2 * lam1)
        y12 = (Fraction(1), -lam2)
    elif gamma != 0:
        lam1 = (-beta + r) / gamma
        lam2 = (-beta - r) / gamma
        x12 = (-gamma / 2 * lam1, gamma / 2)
        y12 = (-lam2, Fraction(1))
    else:
        x12 = (beta, Fraction(0))
        y12 = (Fraction(0), Fraction(1))
    x = [x12[0] * ai + x12[1] * bi for ai, bi in zip(a, b)]
    y = [y12[0] * ai + y12[1] * bi for ai, bi in zip(a, b)]
    mu = outer(x, y)
    assert linalg.mat_eq(g2(mu), S)
    mt = linalg.transpose(mu)
    return [mu] if linalg.mat_eq(mu, mt) else [mu, mt]


# ---------------------------------------------------------------------------
# graded ring of the quotient


def graded_dims(n: int, i: int):
    """(dim of the symmetric part, dim of the alternating part) in
    weight i: S^2 of S^i V and the second exterior power of S^i V."""
    if n < 1 or i < 0:
        raise ValueError("need n >= 1, i >= 0")
    m = comb(i + n - 1, n - 1)
    return m * (m + 1) // 2, m * (m - 1) // 2


def _monomials(nvars, d):
    return list(itertools.combinations_with_replacement(range(nvars), d))


def verify_coord_ring(n: int, j: int) -> bool:
    """Explicitly builds degree j of the polynomial ring on the n x n
    tensor entries modulo the rank-1 relations
    z_ab z_cd - z_ad z_cb, and checks the quotient dimension is
    dim(S^j V)^2 with swap-eigenspace dimensions given by graded_dims.
    """
    if n > 3 or j > 3:
        raise ValueError("guarded to small parameters")
    nv = n * n  # variable z_ab at flat index n*a + b
    mons = _monomials(nv, j)
    midx = {m: i for i, m in enumerate(mons)}

    def mono_vec(mono):
        v = [0] * len(mons)
        v[midx[tuple(sorted(mono))]] = 1
        return v

    # degree-j ideal rows: generators times degree j-2 monomials
    rows = []
    if j >= 2:
        gens = []
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        m1 = tuple(sorted((n * a + b, n * c + d)))
                        m2 = tuple(sorted((n * a + d, n * c + b)))
                        if m1 != m2:
                            gens.append((m1, m2))
        for m1, m2 in gens:
            for extra in _monomials(nv, j - 2):
                v = [0] * len(mons)
                v[midx[tuple(sorted(m1 + extra))]] += 1
                v[midx[tuple(sorted(m2 + extra))]] -= 1
                if any(v):
                    rows.append(v)
    ideal_dim = linalg.rank(rows) if rows else 0
    m = comb(j + n - 1, n - 1)
    if len(mons) - ideal_dim != m * m:
        return False
    # swap involution z_ab -> z_ba on monomials
    def swap_mono(mono):
        return tuple(sorted(n * (f % n) + f // n for f in mono))

    plus_rows = []
    minus_rows = []
    for mono in mons:
        sw = swap_mono(mono)
        v = [0] * len(mons)
        v[midx[mono]] += 1
        v[midx[sw]] += 1
        plus_rows.append(v)
        w = [0] * len(mons)
        w[midx[mono]] += 1
        w[midx[sw]] -= 1
        if any(w):
            minus_rows.append(w)
    dplus, dminus = graded_dims(n, j)
    got_plus = linalg.rank(plus_rows + rows) - ideal_dim
    got_minus = (linalg.rank(minus_rows + rows) - ideal_dim) if minus_rows else 0
    return got_plus == dplus and got_minus == dminus


# ---------------------------------------------------------------------------
# hyperplanes, jacobians, incidence


def hyperplane_pullback(H):
    """Bilinear form B with B(x, y) = H(g2(x tensor y)) for a linear
    functional H given by its coefficient matrix on symmetric-matrix
    entries.  B = H + H^T; the trace functional gives twice the
    standard pairing."""
    n = len(H)
    return [
        [Fraction(H[i][j]) + Fraction(H[j][i]) for j in range(n)]
        for i in range(n)
    ]


def jacobian_rank_g2(n: int, mu) -> int:
    """Exact rank of the differential of (x, y) -> x y^T + y x^T at the
    factor pair of a rank-1 tensor mu."""
    if linalg.rank(mu) != 1:
        raise ValueError("expected a rank-1 tensor")
    x = y = None
    for col in linalg.transpose(mu):
        if any(Fraction(v) != 0 for v in col):
            x = [Fraction(v) for v in col]
            break
    for row in mu:
        if any(Fraction(v) != 0 for v in row):
            y = [Fraction(v) for v in row]
            break
    cols = []
    for k in range(n):
        e = [Fraction(int(i == k)) for i in range(n)]
        d = [[e[i] * y[j] + y[i] * e[j] for j in range(n)] for i in range(n)]
        cols.append([v for r in d for v in r])
    for k in range(n):
        e = [Fraction(int(i == k)) for i in range(n)]
        d = [[x[i] * e[j] + e[i] * x[j] for j in range(n)] for i in range(n)]
        cols.append([v for r in d for v in r])
    return linalg.rank(cols)


def incidence_member(x, y) -> bool:
    """True iff sum x_i y_i = 0 (projective incidence of a point and a
    dual point)."""
    if all(Fraction(v) == 0 for v in x) or all(Fraction(v) == 0 for v in y):
        raise ValueError("zero vector")
    return sum(Fraction(a) * Fraction(b) for a, b in zip(x, y)) == 0


# ---------------------------------------------------------------------------
# flop combinatorics


@dataclass(frozen=True)
class FlopGraph:
    r: int
    vertices: tuple
    edges: tuple

    def n_vertices(self) -> int:
        return len(self.vertices)

    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v) -> int:
        i = self.vertices.index(v)
        return sum(1 for a, b in self.edges if i in (a, b))

    def is_regular(self) -> bool:
        return all(self.degree(v) == self.r for v in self.vertices)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {i: [] for i in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.vertices)

    def antipode(self, v):
        return tuple(-s for s in v)


def flop_graph(r: int) -> FlopGraph:
    """Hypercube graph on sign tuples of length r; one edge per single
    sign flip."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    verts = list(itertools.product((1, -1), repeat=r))
    vidx = {v: i for i, v in enumerate(verts)}
    edges = []
    for v in verts:
        for pos in range(r):
            w = v[:pos] + (-v[pos],) + v[pos + 1 :]
            a, b = vidx[v], vidx[w]
            if a < b:
                edges.append((a, b))
    return FlopGraph(r, tuple(verts), tuple(edges))
