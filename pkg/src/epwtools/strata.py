"""Degeneracy strata of a Lagrangian: coranks, chart quadratic forms,
the cofactor quadrics and their restriction maps, and the degree of a
line section of the corank locus.

The chart identifications follow exterior.Chart: the tangent Lagrangian
T0 has basis index 0 at the "vertex" u1^u2^u3 and index 1 + 3l + k at
b_{l,k}; the latter nine coordinates are identified with 3x3 matrices
(elements of Hom(U0, Uinf)) by sending b_{l,k} to the entry in row k,
column l (flat index 3k + l, row-major).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exterior, linalg, modp, polys
from .exterior import Chart, Subspace


# ---------------------------------------------------------------------------
# coranks


def _tangent_spanning_rows(u_int_rows):
    """18 integer rows spanning T_U, without the RREF of tangent_lagrangian."""
    u1, u2, u3 = u_int_rows
    e = [[int(i == j) for j in range(6)] for i in range(6)]
    rows = []
    for a, b in ((u1, u2), (u1, u3), (u2, u3)):
        for k in range(6):
            rows.append(exterior.wedge3(a, b, e[k]))
    return rows


def corank(A: Subspace, U: Subspace) -> int:
    """dim(A meet T_U) for a Lagrangian A and 3-dim U."""
    if U.dim != 3 or U.ambient_dim != 6:
        raise ValueError("expected a 3-dimensional subspace of the 6-space")
    a_int = linalg.int_rows([list(r) for r in A.rows])
    return _corank_int(a_int, linalg.int_rows([list(r) for r in U.rows]))


def _corank_int(a_int_rows, u_int_rows) -> int:
    stacked = a_int_rows + _tangent_spanning_rows(u_int_rows)
    # dim(A + T_U) = rank of the stack; corank = 20 - that
    if modp.row_space_full_modp(stacked, 20):
        return 0
    return 20 - linalg.rank(stacked)


# ---------------------------------------------------------------------------
# chart quadratic forms


def psi(A: Subspace, U: Subspace, chart: Chart):
    """The chart form q_U - q_A (10x10 symmetric); its corank equals
    corank(A, U).  Both A and T_U must miss the chart's Tinf."""
    q_u = exterior.q_of_lagrangian(exterior.tangent_lagrangian(U), chart)
    q_a = exterior.q_of_lagrangian(A, chart)
    return [[q_u[i][j] - q_a[i][j] for j in range(10)] for i in range(10)]


# ---------------------------------------------------------------------------
# cofactor quadrics and the involution


def _cofactor_positions(i, j):
    """Index data of the 2x2 determinant left after deleting column i
    and row j of a 3x3 matrix (flat row-major indices)."""
    rows = [r for r in range(3) if r != j]
    cols = [c for c in range(3) if c != i]
    a = 3 * rows[0] + cols[0]
    d = 3 * rows[1] + cols[1]
    b = 3 * rows[0] + cols[1]
    c = 3 * rows[1] + cols[0]
    return a, d, b, c


def cofactor_quadrics():
    """The 9 cofactor forms M -> M^{i,j} as symmetric 9x9 matrices over
    the flat (row-major) entries of a 3x3 matrix.  Ordered by (i, j)
    with i the deleted column and j the deleted row."""
    out = []
    half = Fraction(1, 2)
    for i in range(3):
        for j in range(3):
            a, d, b, c = _cofactor_positions(i, j)
            m = [[Fraction(0)] * 9 for _ in range(9)]
            m[a][d] += half
            m[d][a] += half
            m[b][c] -= half
            m[c][b] -= half
            out.append(m)
    return out


def phi_cofactor(M):
    """The cofactor involution: entry (i, j) of the output is the minor
    of M with column i and row j deleted.  Satisfies
    phi(phi(M)) = det(M) * M exactly."""
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            a, d, b, c = _cofactor_positions(i, j)
            flat = [x for row in M for x in row]
            out[i][j] = flat[a] * flat[d] - flat[b] * flat[c]
    return out


def evaluate_quadric(Q, x):
    return sum(Q[i][j] * x[i] * x[j] for i in range(len(x)) for j in range(len(x)))


# ---------------------------------------------------------------------------
# the restriction map r_K


def _hom_chart_permutation():
    """Permutation sending chart coordinate 1 + 3l + k to the flat
    matrix index 3k + l."""
    perm = [0] * 9
    for l in range(3):
        for k in range(3):
            perm[3 * l + k] = 3 * k + l
    return perm


_HOM_PERM = _hom_chart_permutation()


def _sym_flatten_basis(k):
    """Index pairs (i <= j) used to flatten symmetric k x k matrices."""
    return [(i, j) for i in range(k) for j in range(i, k)]


@dataclass
class RestrictionMap:
    k: int
    matrix: list  # 9 rows, one per cofactor quadric, flattened Sym^2 K^vee
    rank: int
    restricted_forms: list  # the 9 restricted k x k symmetric forms
    annihilator: list | None = None  # symmetric k x k matrix, k = 4 only
    annihilator_rank: int | None = None


def restriction_map(K: Subspace, chart: Chart) -> RestrictionMap:
    """The restriction r_K of the 9 cofactor quadrics to a subspace
    K of T0 (projected from the vertex), with its rank; for dim K = 4
    also the annihilator of the image and its symmetric rank."""
    k = K.dim
    if not 1 <= k <= 4:
        raise ValueError("expected 1 <= dim K <= 4")
    X, Y = chart.coords(K.rows)
    if any(any(y != 0 for y in row) for row in Y):
        raise ValueError("K is not contained in the T0 of the chart")
    # project from the vertex and reorder chart coords to matrix coords
    P = []
    for row in X:
        hom = row[1:]
        flat = [Fraction(0)] * 9
        for idx in range(9):
            flat[_HOM_PERM[idx]] = hom[idx]
        P.append(flat)
    if linalg.rank(P) != k:
        raise ValueError("K meets the vertex line; projection degenerates")
    forms = [exterior.restrict_quadric(Q, P) for Q in cofactor_quadrics()]
    tri = _sym_flatten_basis(k)
    mat = [[f[i][j] for i, j in tri] for f in forms]
    r = linalg.rank(mat)
    ann = ann_rank = None
    if k == 4:
        # functionals on Sym^2 K^vee killing the 9-dim image
        ker = linalg.kernel(mat)
        if len(ker) == 1:
            c = ker[0]
            ann = [[Fraction(0)] * k for _ in range(k)]
            for idx, (i, j) in enumerate(tri):
                if i == j:
                    ann[i][i] = c[idx]
                else:
                    ann[i][j] = ann[j][i] = c[idx] / 2
            ann_rank = linalg.rank(ann)
    return RestrictionMap(k, mat, r, forms, ann, ann_rank)


# ---------------------------------------------------------------------------
# tangent-map identity


def _matrix_poly(sample, degree_bounds=(4, 8, 20)):
    """Entrywise exact polynomial interpolation of a matrix-valued
    function of one rational variable, with verification points.  Tries
    the degree bounds in order and raises if even the last fails."""
    cache = {}

    def ev(t):
        if t not in cache:
            cache[t] = sample(Fraction(t))
        return cache[t]

    last_err = None
    for d in degree_bounds:
        pts_t = list(range(d + 1))
        mats = [ev(t) for t in pts_t]
        n = len(mats[0])
        m = len(mats[0][0])
        entry_polys = [
            [
                polys.interpolate([(Fraction(t), mats[s][i][j]) for s, t in enumerate(pts_t)])
                for j in range(m)
            ]
            for i in range(n)
        ]
        ok = True
        for t in (d + 1, d + 2):
            check = ev(t)
            for i in range(n):
                for j in range(m):
                    if polys.evaluate(entry_polys[i][j], Fraction(t)) != check[i][j]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return entry_polys
        last_err = d
    raise ValueError(f"degree bound {last_err} exceeded in matrix interpolation")


def _poly_coeff(entry_polys, power):
    return [
        [p[power] if len(p) > power else Fraction(0) for p in row]
        for row in entry_polys
    ]


def _perturbed_u(chart: Chart, B, eps):
    """The 3-space spanned by u_l + eps * sum_k B[k][l] w_k."""
    u = [list(r) for r in chart.U0.rows]
    w = [list(r) for r in chart.Uinf.rows]
    rows = []
    for l in range(3):
        row = list(map(Fraction, u[l]))
        for k in range(3):
            c = eps * Fraction(B[k][l])
            if c != 0:
                row = [x + c * y for x, y in zip(row, w[k])]
        rows.append(row)
    return Subspace(6, rows)


def q_u_derivative(chart: Chart, B):
    """d/deps of q_{U(eps B)} at eps = 0, as an exact 10x10 matrix."""

    def sample(eps):
        U = _perturbed_u(chart, B, eps)
        return exterior.q_of_lagrangian(exterior.tangent_lagrangian(U), chart)

    entry_polys = _matrix_poly(sample)
    return _poly_coeff(entry_polys, 1)


def tangent_map_check(A: Subspace, chart: Chart) -> bool:
    """Verifies that the derivative of the chart form's K-block along
    each of the 9 chart directions factors through the restriction map
    r_K applied to the cofactor coefficients of the derivative.

    K is A meet T0; requires A inside the chart (A meet Tinf = 0).
    """
    T0 = chart.tangent0()
    k = exterior.intersection_dim(A, T0)
    if k == 0:
        return True
    K = _intersection(A, T0)
    rmap = restriction_map(K, chart)
    XK, YK = chart.coords(K.rows)
    cof = cofactor_quadrics()
    # embedded cofactor quadrics on chart coordinates (vertex row/col 0)
    cof_chart = []
    for Q in cof:
        m = [[Fraction(0)] * 10 for _ in range(10)]
        for a in range(9):
            for b in range(9):
                m[1 + a][1 + b] = Q[_HOM_PERM[a]][_HOM_PERM[b]]
        cof_chart.append(m)
    tri10 = _sym_flatten_basis(10)
    cof_flat = [[m[i][j] for i, j in tri10] for m in cof_chart]
    for d in range(9):
        B = [[0] * 3 for _ in range(3)]
        B[d // 3][d % 3] = 1
        L = q_u_derivative(chart, B)
        # express L in the embedded cofactor basis
        target = [L[i][j] for i, j in tri10]
        sol = _solve_in_span(cof_flat, target)
        if sol is None:
            return False
        lhs = linalg.matmul(linalg.matmul(XK, L), linalg.transpose(XK))
        rhs = [[Fraction(0)] * k for _ in range(k)]
        for m_idx, c in enumerate(sol):
            if c != 0:
                f = rmap.restricted_forms[m_idx]
                for i in range(k):
                    for j in range(k):
                        rhs[i][j] += c * f[i][j]
        if not linalg.mat_eq(lhs, rhs):
            return False
    return True


def _solve_in_span(basis_rows, target):
    """Coefficients expressing target in the span of basis_rows, or
    None if target is outside the span."""
    n = len(basis_rows)
    # columns are the basis vectors plus the target; a kernel vector
    # with nonzero last entry expresses the target in the span
    cols = linalg.transpose(basis_rows)
    rows = [list(r) + [Fraction(t)] for r, t in zip(cols, target)]
    ker = linalg.kernel(rows)
    for v in ker:
        if v[n] != 0:
            return [-x / v[n] for x in v[:n]]
    return None


def _intersection(A: Subspace, B: Subspace) -> Subspace:
    """The subspace A meet B."""
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("ambient dimensions differ")
    rows_a = [list(r) for r in A.rows]
    rows_b = [list(r) for r in B.rows]
    # coefficient pairs (c, d) with c . rows_a = d . rows_b
    stacked = rows_a + [[-x for x in r] for r in rows_b]
    ker = linalg.kernel(linalg.transpose(stacked))
    out = []
    for v in ker:
        c = v[: len(rows_a)]
        vec = [Fraction(0)] * A.ambient_dim
        for ci, row in zip(c, rows_a):
            if ci != 0:
                vec = [x + ci * y for x, y in zip(vec, row)]
        out.append(vec)
    return Subspace(A.ambient_dim, out)


# ---------------------------------------------------------------------------
# line sections


def line_degree(A: Subspace, pencil, aux_seeds=(101, 102, 103)) -> int:
    """Degree of the corank divisor restricted to a pencil of 3-spaces
    U(t) = <u1, u2, x + t y>.

    d_A(t) = det of the 20x20 stack of an A-basis and a 10-row frame of
    T_{U(t)}; the frame's own degeneration factor h(t) is removed as the
    gcd of the same determinant over three auxiliary random Lagrangians;
    returns deg d_A - deg gcd(d_A, h).
    """
    u1, u2, x, y = [linalg._row_to_int(list(v)) for v in pencil]
    if linalg.rank([u1, u2, x, y]) != 4:
        raise ValueError("pencil vectors must be independent")
    frame = _pencil_frame(u1, u2, x, y)
    a_rows = linalg.int_rows([list(r) for r in A.rows])
    d_a = _pencil_det_poly(a_rows, frame)
    if not d_a:
        raise ValueError("determinant vanishes identically on the pencil")
    chart = exterior.default_chart()
    hs = []
    for s in aux_seeds:
        rng = random.Random(s)
        q = [[Fraction(0)] * 10 for _ in range(10)]
        for i in range(10):
            for j in range(i, 10):
                q[i][j] = q[j][i] = Fraction(rng.randint(-9, 9))
        aux = exterior.graph_lagrangian(q, chart)
        aux_rows = linalg.int_rows([list(r) for r in aux.rows])
        hs.append(_pencil_det_poly(aux_rows, frame))
    h = hs[0]
    for other in hs[1:]:
        h = polys.poly_gcd(h, other)
    g = polys.poly_gcd(d_a, h)
    return polys.degree(d_a) - polys.degree(g)


def _pencil_frame(u1, u2, x, y):
    """A 10-row frame of T_{U(t)}: rows are (constant, linear) pairs
    (r0, r1) meaning r0 + t r1; chosen greedily at t = 0 and verified
    independent at two more parameter values."""
    cands = []
    e = [[int(i == j) for j in range(6)] for i in range(6)]
    for k in range(6):
        cands.append((exterior.wedge3(u1, u2, e[k]), [0] * 20))
    for a in (u1, u2):
        for k in range(6):
            cands.append((exterior.wedge3(a, x, e[k]), exterior.wedge3(a, y, e[k])))
    chosen = []
    for r0, r1 in cands:
        trial = [list(c0) for c0, _ in chosen] + [list(r0)]
        if linalg.rank(trial) > len(chosen):
            chosen.append((r0, r1))
        if len(chosen) == 10:
            break
    if len(chosen) < 10:
        raise ValueError("pencil frame is degenerate at t = 0")
    # full rank at t = 0 makes the frame generically full rank; isolated
    # degenerate parameter values are absorbed into the frame factor h
    return chosen


def _pencil_det_poly(a_rows, frame):
    def sample(t):
        rows = [list(r) for r in a_rows]
        for r0, r1 in frame:
            rows.append([r0[i] + t * r1[i] for i in range(20)])
        return linalg.det(rows)

    pts = [(Fraction(t), sample(Fraction(t))) for t in range(7)]
    poly = polys.interpolate(pts)
    for t in (7, 8):
        if polys.evaluate(poly, Fraction(t)) != sample(Fraction(t)):
            raise ValueError("pencil determinant exceeded expected degree")
    return poly


# ---------------------------------------------------------------------------
# sampling


@dataclass
class StratumSample:
    seed: int
    n_samples: int
    histogram: dict
    special_points: list = field(default_factory=list)

    def max_corank(self) -> int:
        ks = list(self.histogram) + [p["corank"] for p in self.special_points]
        return max(ks) if ks else 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "n_samples": self.n_samples,
                "corank_histogram": {str(k): v for k, v in sorted(self.histogram.items())},
                "special_points": self.special_points,
            },
            indent=2,
            sort_keys=True,
        )


def stratum_sample(
    A: Subspace,
    n_samples: int,
    seed: int,
    certificate=None,
    special_subspaces=(),
    bound: int = 10,
) -> StratumSample:
    """Corank histogram of A over seeded random 3-spaces.

    Requires a decomposable-freeness certificate for A (computed here
    if not supplied); refuses to run without one.  Special subspaces
    (e.g. the U0 of a corank-4 construction) are evaluated separately
    and recorded with their coranks.  Asserts max corank <= 4.
    """
    if certificate is None:
        certificate = exterior.decomposable_free_certificate(A)
    if not certificate.certified:
        raise ValueError("Lagrangian is not certified decomposable-free")
    rng = random.Random(seed)
    a_int = linalg.int_rows([list(r) for r in A.rows])
    hist = {}
    done = 0
    while done < n_samples:
        rows = [[rng.randint(-bound, bound) for _ in range(6)] for _ in range(3)]
        if linalg.rank(rows) != 3:
            continue
        c = _corank_int(a_int, linalg.int_rows(rows))
        hist[c] = hist.get(c, 0) + 1
        done += 1
    specials = []
    for U in special_subspaces:
        c = corank(A, U)
        specials.append(
            {
                "U": exterior.matrix_to_json(U.rows),
                "corank": c,
            }
        )
    out = StratumSample(seed, n_samples, hist, specials)
    if out.max_corank() > 4:
        raise AssertionError(
            "corank above 4 observed; either a bug or a genuine counterexample"
        )
    return out
