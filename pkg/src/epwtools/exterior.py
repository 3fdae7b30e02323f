"""Exact symplectic exterior algebra on the third wedge of a 6-space.

Coordinates on the 20-dimensional space are indexed by the 3-element
subsets of {1..6} in lexicographic order.  The symplectic form is the
wedge pairing: omega(e_I, e_J) is the sign of the permutation (I, J)
when J is the complement of I, and 0 otherwise.  Everything is over Q
(fractions.Fraction); there is no floating point in this module except
inside the optional mod-p fast paths, which only ever certify, never
decide negatively.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from . import modp

N = 6
DIM = 20

SUBSETS3 = [frozenset(s) for s in itertools.combinations(range(1, N + 1), 3)]
TUPLES3 = list(itertools.combinations(range(1, N + 1), 3))
INDEX3 = {t: i for i, t in enumerate(TUPLES3)}
TUPLES4 = list(itertools.combinations(range(1, N + 1), 4))
INDEX4 = {t: i for i, t in enumerate(TUPLES4)}


def perm_sign(seq) -> int:
    """Sign of the permutation sorting seq; 0 if entries repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _pairing_matrix():
    omega = [[0] * DIM for _ in range(DIM)]
    for i, I in enumerate(TUPLES3):
        J = tuple(sorted(set(range(1, N + 1)) - set(I)))
        omega[i][INDEX3[J]] = perm_sign(I + J)
    return omega


OMEGA = _pairing_matrix()


def symplectic_pairing(a, b) -> Fraction:
    """Wedge pairing of two trivectors (20-coordinate sequences)."""
    total = Fraction(0)
    for i, I in enumerate(TUPLES3):
        if a[i] == 0:
            continue
        J = tuple(sorted(set(range(1, N + 1)) - set(I)))
        j = INDEX3[J]
        if b[j] != 0:
            total += Fraction(a[i]) * Fraction(b[j]) * OMEGA[i][j]
    return total


def wedge3(v1, v2, v3):
    """Wedge of three vectors of V6, as a 20-coordinate trivector.

    The coordinate at {i<j<k} is the 3x3 minor of the stacked vectors on
    those columns.  Integer inputs stay integers (fast path for
    sampling loops); Fractions propagate automatically.
    """
    out = []
    for i, j, k in TUPLES3:
        a1, a2, a3 = v1[i - 1], v1[j - 1], v1[k - 1]
        b1, b2, b3 = v2[i - 1], v2[j - 1], v2[k - 1]
        c1, c2, c3 = v3[i - 1], v3[j - 1], v3[k - 1]
        out.append(
            a1 * (b2 * c3 - b3 * c2)
            - a2 * (b1 * c3 - b3 * c1)
            + a3 * (b1 * c2 - b2 * c1)
        )
    return out


def wedge_1_3(v, t):
    """Wedge of a vector of V6 with a trivector, in the 15 coords of
    the fourth exterior power (lex 4-subsets)."""
    out = [Fraction(0)] * 15
    for i, I in enumerate(TUPLES3):
        c = Fraction(t[i])
        if c == 0:
            continue
        for a in range(1, N + 1):
            x = Fraction(v[a - 1])
            if x == 0 or a in I:
                continue
            sign = (-1) ** sum(1 for b in I if b < a)
            out[INDEX4[tuple(sorted(I + (a,)))]] += sign * x * c
    return out


def contract2(a, b, t):
    """Double contraction of a trivector t against e_a^vee wedge e_b^vee
    (a < b), yielding a vector of V6."""
    out = [Fraction(0)] * N
    for i, I in enumerate(TUPLES3):
        c = Fraction(t[i])
        if c == 0 or a not in I or b not in I:
            continue
        (rest,) = set(I) - {a, b}
        # contract a first, then b
        pa = I.index(a)
        sign = (-1) ** pa
        pair = I[:pa] + I[pa + 1 :]
        pb = pair.index(b)
        sign *= (-1) ** pb
        out[rest - 1] += sign * c
    return out


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Exact linear subspace in canonical reduced row echelon form.

    Two equal subspaces always have identical rows, so equality of
    representations is equality of subspaces.
    """

    __slots__ = ("ambient_dim", "rows")

    def __init__(self, ambient_dim: int, spanning_rows):
        self.ambient_dim = ambient_dim
        for r in spanning_rows:
            if len(r) != ambient_dim:
                raise ValueError("row length does not match ambient dimension")
        red, _ = linalg.rref(spanning_rows) if spanning_rows else ([], [])
        self.rows = tuple(tuple(r) for r in red)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v) -> bool:
        if not self.rows:
            return all(Fraction(x) == 0 for x in v)
        stacked = [list(r) for r in self.rows] + [list(v)]
        return linalg.rank(stacked) == self.dim

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def intersection_dim(A: Subspace, B: Subspace) -> int:
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if not A.rows or not B.rows:
        return 0
    stacked = [list(r) for r in A.rows] + [list(r) for r in B.rows]
    # mod-p fast path: full stacked rank certifies the generic answer
    want = A.dim + B.dim
    if want <= A.ambient_dim and modp.row_space_full_modp(stacked, want):
        return 0
    return A.dim + B.dim - linalg.rank(stacked)


def tangent_lagrangian(U: Subspace) -> Subspace:
    """The 10-dim Lagrangian spanned by u_i^u_j^e_k over a 3-dim U."""
    if U.ambient_dim != N or U.dim != 3:
        raise ValueError("expected a 3-dimensional subspace of the 6-space")
    # primitive integer representatives keep the wedge loop in int arithmetic
    u1, u2, u3 = linalg.int_rows([list(r) for r in U.rows])
    rows = []
    e = [[int(i == j) for j in range(N)] for i in range(N)]
    for a, b in ((u1, u2), (u1, u3), (u2, u3)):
        for k in range(N):
            rows.append(wedge3(a, b, e[k]))
    T = Subspace(DIM, rows)
    assert T.dim == 10
    return T


def is_lagrangian(A: Subspace) -> bool:
    if A.ambient_dim != DIM:
        raise ValueError("expected a subspace of the 20-space")
    if A.dim != 10:
        return False
    rows = linalg.int_rows([list(r) for r in A.rows])
    for i in range(10):
        for j in range(i + 1, 10):
            if symplectic_pairing(rows[i], rows[j]) != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# charts


class Chart:
    """A decomposition V6 = U0 + Uinf into complementary 3-spaces.

    Fixes bases of the two tangent Lagrangians T0 = T_{U0} and
    Tinf = T_{Uinf}, which together span the 20-space.  The T0 basis
    order is: index 0 is u1^u2^u3, then index 1 + 3*l + k (l, k in
    0..2) is the "b_{l,k}" vector pairing U0-direction l with
    Uinf-direction k:

        b_{0,k} = u2^u3^w_k,  b_{1,k} = u3^u1^w_k,  b_{2,k} = u1^u2^w_k.

    The Tinf basis mirrors this with the roles of U0 and Uinf swapped.
    """

    def __init__(self, U0: Subspace, Uinf: Subspace):
        if U0.ambient_dim != N or Uinf.ambient_dim != N:
            raise ValueError("chart subspaces must live in the 6-space")
        if U0.dim != 3 or Uinf.dim != 3:
            raise ValueError("chart subspaces must be 3-dimensional")
        stacked = [list(r) for r in U0.rows] + [list(r) for r in Uinf.rows]
        if linalg.rank(stacked) != N:
            raise ValueError("chart subspaces are not complementary")
        self.U0 = U0
        self.Uinf = Uinf
        u = [list(r) for r in U0.rows]
        w = [list(r) for r in Uinf.rows]
        self.t_basis = self._half_basis(u, w)
        self.s_basis = self._half_basis(w, u)
        # P[j][l] = omega(t_j, s_l); invertible since T0 + Tinf = all
        self.P = [
            [symplectic_pairing(t, s) for s in self.s_basis]
            for t in self.t_basis
        ]
        self._pt_inv = linalg.solve(
            linalg.transpose(self.P), linalg.identity(10)
        )
        self._basis_t = linalg.transpose(self.t_basis + self.s_basis)

    @staticmethod
    def _half_basis(u, w):
        basis = [wedge3(u[0], u[1], u[2])]
        pairs = ((u[1], u[2]), (u[2], u[0]), (u[0], u[1]))
        for a, b in pairs:
            for k in range(3):
                basis.append(wedge3(a, b, w[k]))
        return basis

    def coords(self, rows):
        """Coefficients of ambient rows in the (t_basis, s_basis) frame.

        Returns (X, Y) with row_i = X_i . t_basis + Y_i . s_basis.
        """
        rhs = linalg.transpose([list(r) for r in rows])
        sol = linalg.transpose(linalg.solve(self._basis_t, rhs))
        return [r[:10] for r in sol], [r[10:] for r in sol]

    def tangent0(self) -> Subspace:
        return Subspace(DIM, self.t_basis)

    def tangent_inf(self) -> Subspace:
        return Subspace(DIM, self.s_basis)


def default_chart() -> Chart:
    e = linalg.identity(N)
    return Chart(Subspace(N, e[:3]), Subspace(N, e[3:]))


def graph_lagrangian(q, chart: Chart) -> Subspace:
    """The Lagrangian graph of a symmetric 10x10 form in the given chart.

    Rows are t_j + sum_l C[j][l] s_l with C = q (P^T)^{-1}, so that the
    graph map composes q with the inverse of the pairing isomorphism
    between the chart's two tangent Lagrangians.  q = 0 gives T0.
    """
    if len(q) != 10 or not linalg.is_symmetric(q):
        raise ValueError("expected a symmetric 10x10 form")
    C = linalg.matmul([[Fraction(x) for x in row] for row in q], chart._pt_inv)
    rows = []
    for j in range(10):
        row = list(chart.t_basis[j])
        for l in range(10):
            c = C[j][l]
            if c != 0:
                s = chart.s_basis[l]
                row = [r + c * sv for r, sv in zip(row, s)]
        rows.append(row)
    return Subspace(DIM, rows)


def q_of_lagrangian(A: Subspace, chart: Chart):
    """The unique symmetric form whose graph is A; inverse of
    graph_lagrangian.  Requires A to miss the chart's Tinf."""
    if A.dim != 10:
        raise ValueError("expected a 10-dimensional subspace")
    X, Y = chart.coords(A.rows)
    try:
        Z = linalg.solve(X, Y)
    except ValueError:
        raise ValueError("subspace meets the Tinf of the chart") from None
    q = linalg.matmul(Z, linalg.transpose(chart.P))
    if not linalg.is_symmetric(q):
        raise ValueError("subspace is not Lagrangian")
    return q


def lagrangian_through(K: Subspace, seed) -> Subspace:
    """A random Lagrangian containing the isotropic subspace K.

    Works in the symplectic quotient of K-perp by K: picks a hyperbolic
    basis there by pairing Gram-Schmidt, takes a random symmetric graph
    over one half, and lifts.  Deterministic given the seed.
    """
    if K.ambient_dim != DIM or K.dim > 10:
        raise ValueError("expected an isotropic subspace of the 20-space")
    krows = [list(r) for r in K.rows]
    for i in range(len(krows)):
        for j in range(i + 1, len(krows)):
            if symplectic_pairing(krows[i], krows[j]) != 0:
                raise ValueError("subspace is not isotropic")
    # K-perp = kernel of x -> omega(x, k_i)
    if krows:
        cond = [
            [
                sum(OMEGA[c][j] * Fraction(k[j]) for j in range(DIM) if OMEGA[c][j])
                for c in range(DIM)
            ]
            for k in krows
        ]
        perp = linalg.kernel(cond)
    else:
        perp = linalg.identity(DIM)
    rng = random.Random(seed)
    rng.shuffle(perp)

    def pair_reduce(x, pairs):
        for a, b in pairs:
            ca = symplectic_pairing(x, b)
            cb = symplectic_pairing(x, a)
            if ca != 0:
                x = [xi - ca * ai for xi, ai in zip(x, a)]
            if cb != 0:
                x = [xi + cb * bi for xi, bi in zip(x, b)]
        return x

    pairs = []
    need = 10 - K.dim
    cand = [list(v) for v in perp]
    while len(pairs) < need:
        a = pair_reduce(cand.pop(0), pairs)
        partner = None
        for idx, y in enumerate(cand):
            if symplectic_pairing(a, y) != 0:
                partner = idx
                break
        if partner is None:
            continue  # a lies in the radical (K plus chosen pairs)
        b = pair_reduce(cand.pop(partner), pairs)
        w = symplectic_pairing(a, b)
        b = [x / w for x in b]
        pairs.append((a, b))
    # random symmetric graph over the a-half
    q = [[Fraction(0)] * need for _ in range(need)]
    for i in range(need):
        for j in range(i, need):
            q[i][j] = q[j][i] = Fraction(rng.randint(-9, 9))
    rows = list(krows)
    for i, (a, _) in enumerate(pairs):
        row = list(a)
        for j, (_, b) in enumerate(pairs):
            c = q[i][j]
            if c != 0:
                row = [r + c * bv for r, bv in zip(row, b)]
        rows.append(row)
    A = Subspace(DIM, rows)
    assert A.dim == 10 and is_lagrangian(A)
    for k in krows:
        assert A.contains(k)
    return A


# ---------------------------------------------------------------------------
# decomposability


XI_PAIRS = list(itertools.combinations(range(1, N + 1), 2))


def decomposable_witness(t) -> bool:
    """True iff the trivector t is decomposable (a pure wedge v1^v2^v3),
    by the contraction criterion: (i_xi t) ^ t = 0 for all xi in a
    basis of the second exterior power of the dual."""
    if all(Fraction(x) == 0 for x in t):
        raise ValueError("zero trivector")
    for a, b in XI_PAIRS:
        v = contract2(a, b, t)
        if any(x != 0 for x in wedge_1_3(v, t)):
            return False
    return True


def plucker_quadrics():
    """An independent spanning set (35 forms) of the degree-2 part of
    the Grassmannian ideal, as symmetric 20x20 integer matrices.

    Form Q represents t -> t^T Q t; every decomposable trivector is a
    common zero.  Built from the coefficient quadrics of the
    contraction criterion and reduced to an independent set.
    """
    forms = []
    for a, b in XI_PAIRS:
        # coefficient of each 4-subset L in (i_xi t) ^ t, bilinear in t
        coeff = {}
        for i, I in enumerate(TUPLES3):
            if a not in I or b not in I:
                continue
            (rest,) = set(I) - {a, b}
            pa = I.index(a)
            s = (-1) ** pa
            pair = I[:pa] + I[pa + 1 :]
            s *= (-1) ** pair.index(b)
            for j, J in enumerate(TUPLES3):
                if rest in J:
                    continue
                s2 = s * (-1) ** sum(1 for c in J if c < rest)
                L = INDEX4[tuple(sorted(J + (rest,)))]
                coeff.setdefault(L, {})
                coeff[L][(i, j)] = coeff[L].get((i, j), 0) + s2
        for L, entries in coeff.items():
            mat = [[0] * DIM for _ in range(DIM)]
            for (i, j), c in entries.items():
                mat[i][j] += c
                mat[j][i] += c
            forms.append(mat)
    # reduce the flattened upper triangles to an independent subset
    tri = [(i, j) for i in range(DIM) for j in range(i, DIM)]
    chosen = []
    out = []
    for mat in forms:
        vec = [mat[i][j] for i, j in tri]
        work = [list(v) for v in chosen] + [vec]
        if len(linalg._int_echelon(work)) > len(chosen):
            chosen.append(vec)
            out.append(mat)
    return out


# ---------------------------------------------------------------------------
# Nullstellensatz emptiness certificates


_PLUCKER_CACHE = None


def decomposable_free_certificate(A: Subspace, max_degree: int = 6):
    """Certificate that the Lagrangian A contains no decomposable
    vector: the Grassmannian quadrics restricted to A are certified to
    have no common projective zero."""
    global _PLUCKER_CACHE
    if _PLUCKER_CACHE is None:
        _PLUCKER_CACHE = plucker_quadrics()
    restricted = [restrict_quadric(Q, A.rows) for Q in _PLUCKER_CACHE]
    return emptiness_certificate(restricted, max_degree)


def restrict_quadric(Q, basis_rows):
    """Pull back a quadratic form along the inclusion of the span of
    basis_rows: returns B Q B^T."""
    B = [[Fraction(x) for x in r] for r in basis_rows]
    return linalg.matmul(linalg.matmul(B, [[Fraction(x) for x in r] for r in Q]), linalg.transpose(B))


@dataclass(frozen=True)
class CertifiedEmpty:
    degree: int

    @property
    def certified(self) -> bool:
        return True


@dataclass(frozen=True)
class Inconclusive:
    @property
    def certified(self) -> bool:
        return False


def _monomials(nvars, d):
    return list(itertools.combinations_with_replacement(range(nvars), d))


def emptiness_certificate(quads, max_degree: int = 6):
    """Nullstellensatz certificate that homogeneous quadrics have no
    common projective zero.

    Returns CertifiedEmpty(d) when the multiples of the quadrics span
    all forms of some degree d <= max_degree, certified by a full-rank
    computation over a large prime field (rank mod p is at most the
    rank over Q, so a full span mod p is sound).  Inconclusive
    otherwise; Inconclusive never asserts a common zero exists.
    """
    import numpy as np

    if not quads:
        return Inconclusive()
    w = len(quads[0])
    for q in quads:
        if len(q) != w or not linalg.is_symmetric(q):
            raise ValueError("expected symmetric matrices of equal size")
    p = modp.PRIME
    # degree-2 rows: x^T q x expanded in the monomial basis
    mon = _monomials(w, 2)
    midx = {m: i for i, m in enumerate(mon)}
    rows = []
    for q in quads:
        flat = [Fraction(x) for row in q for x in row]
        from math import lcm

        den = 1
        for x in flat:
            den = lcm(den, x.denominator)
        ints = [int(x * den) for x in flat]
        row = [0] * len(mon)
        for i in range(w):
            row[midx[(i, i)]] = ints[i * w + i] % p
            for j in range(i + 1, w):
                row[midx[(i, j)]] = (ints[i * w + j] + ints[j * w + i]) % p
        rows.append(row)
    acc = modp.IncrementalRank(len(mon), p)
    acc.add_batch(np.array(rows, dtype=np.float64))
    if acc.rank == len(mon):
        return CertifiedEmpty(2)
    for d in range(3, max_degree + 1):
        mon_prev = _monomials(w, d - 1)
        mon_d = _monomials(w, d)
        midx_d = {m: i for i, m in enumerate(mon_d)}
        shifts = [
            np.array(
                [midx_d[tuple(sorted(m + (k,)))] for m in mon_prev],
                dtype=np.intp,
            )
            for k in range(w)
        ]
        nxt = modp.IncrementalRank(len(mon_d), p)
        prev_rows = acc.rows
        chunk = max(1, 2_000_000 // max(len(mon_d), 1))
        for k in range(w):
            for lo in range(0, prev_rows.shape[0], chunk):
                block = prev_rows[lo : lo + chunk]
                out = np.zeros((block.shape[0], len(mon_d)), dtype=np.float64)
                out[:, shifts[k]] = block
                nxt.add_batch(out)
                if nxt.rank == len(mon_d):
                    return CertifiedEmpty(d)
            if nxt.rank == len(mon_d):
                return CertifiedEmpty(d)
        acc = nxt
    return Inconclusive()


# ---------------------------------------------------------------------------
# serialization

def frac_to_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def frac_from_str(s: str) -> Fraction:
    return Fraction(s)


def matrix_to_json(rows):
    return [[frac_to_str(x) for x in row] for row in rows]


def matrix_from_json(data):
    return [[frac_from_str(x) for x in row] for row in data]


def subspace_to_json(S: Subspace):
    return {"ambient_dim": S.ambient_dim, "basis": matrix_to_json(S.rows)}


def subspace_from_json(data) -> Subspace:
    return Subspace(data["ambient_dim"], matrix_from_json(data["basis"]))
