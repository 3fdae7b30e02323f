"""Exact rational linear algebra on small dense matrices.

Matrices are lists of rows; entries are ints or fractions.Fraction.  All
rank/kernel/determinant decisions are exact: rows are scaled to primitive
integer vectors and reduced with fraction-free integer elimination, so no
floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _row_to_int(row):
    """Scale a row of rationals to a primitive integer row (gcd 1).

    Returns the zero row unchanged.  The scaling factor is positive, so the
    sign pattern of the row is preserved.
    """
    fracs = [x if isinstance(x, Fraction) else Fraction(x) for x in row]
    denom = 1
    for x in fracs:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _primitive(row):
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        return [x // g for x in row]
    return list(row)


def int_rows(rows):
    """Primitive integer representatives of the given rational rows."""
    return [_row_to_int(r) for r in rows]


def _int_echelon(m):
    """In-place fraction-free row echelon form of an integer matrix.

    Returns the list of pivot columns.  Rows are kept primitive after each
    elimination step to bound coefficient growth.
    """
    if not m:
        return []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        p = prow[c]
        for i in range(r + 1, len(m)):
            q = m[i][c]
            if q != 0:
                row = m[i]
                m[i] = _primitive([p * row[j] - q * prow[j] for j in range(ncols)])
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return pivots


def rank(rows) -> int:
    """Exact rank of a rational matrix."""
    m = int_rows(rows)
    return len(_int_echelon(m))


def rref(rows):
    """Reduced row echelon form over Q.

    Returns (rref_rows, pivot_columns).  Zero rows are dropped, pivots are
    scaled to 1, so equal row spaces give identical output.
    """
    m = int_rows(rows)
    pivots = _int_echelon(m)
    m = m[: len(pivots)]
    # back-eliminate above each pivot, still over the integers
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        prow = m[k]
        p = prow[c]
        for i in range(k):
            q = m[i][c]
            if q != 0:
                row = m[i]
                m[i] = _primitive([p * row[j] - q * row_p for j, row_p in enumerate(prow)])
    out = []
    for k, c in enumerate(pivots):
        p = m[k][c]
        out.append([Fraction(x, p) for x in m[k]])
    return out, pivots


def kernel(rows):
    """Basis of the right null space {x : rows @ x = 0}, as rational rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -red[k][f]
        basis.append(v)
    return basis


def int_kernel(rows):
    """Basis of the saturated integer kernel {x in Z^n : rows @ x = 0}.

    The rational kernel basis is scaled row-by-row to primitive integer
    vectors and then reduced to a lattice basis of the full integer kernel
    (which is saturated, hence the primitive row-space HNF-style reduction
    below is enough for our small sizes).
    """
    rat = kernel(rows)
    if not rat:
        return []
    # The integer points of the rational kernel form a saturated lattice.
    # Columns at the free positions of the rref form an identity block, so
    # the primitive scalings below are already a lattice basis of it.
    out = []
    for v in rat:
        out.append(_row_to_int(v))
    return out


def det(rows) -> Fraction:
    """Exact determinant via Bareiss fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    # scale rows to integers, tracking the factor
    m = []
    scale = Fraction(1)
    for r in rows:
        fr = [x if isinstance(x, Fraction) else Fraction(x) for x in r]
        denom = 1
        for x in fr:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        m.append([int(x * denom) for x in fr])
        scale /= denom
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = None
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    piv = i
                    break
            if piv is None:
                return Fraction(0)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row = m[i]
            prow = m[k]
            for j in range(k + 1, n):
                row[j] = (pkk * row[j] - mik * prow[j]) // prev
            row[k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1] * scale


def solve(a, b):
    """Solve a @ x = b for square nonsingular a; b is a matrix (list of rows).

    Returns x as rows of Fractions.  Raises ValueError if a is singular.
    """
    n = len(a)
    m = len(b[0]) if b else 0
    aug = [
        [Fraction(x) for x in a[i]] + [Fraction(x) for x in b[i]]
        for i in range(n)
    ]
    red, pivots = rref(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ValueError("singular system")
    return [row[n : n + m] for row in red[:n]]


def solve_rect(a, b):
    """Solve a @ x = b where a has full column rank (possibly more rows
    than columns).  Raises ValueError if a is rank-deficient or the
    system is inconsistent."""
    n = len(a[0])
    m = len(b[0]) if b else 0
    aug = [
        [Fraction(x) for x in ra] + [Fraction(x) for x in rb]
        for ra, rb in zip(a, b)
    ]
    red, pivots = rref(aug)
    if any(p >= n for p in pivots):
        raise ValueError("inconsistent system")
    if len(pivots) != n or pivots != list(range(n)):
        raise ValueError("coefficient matrix is rank-deficient")
    return [row[n : n + m] for row in red]


def matmul(a, b):
    """Exact matrix product of two rational matrices."""
    if not a or not b:
        return []
    bt = list(zip(*b))
    # plain sum keeps integer inputs in int arithmetic
    return [
        [sum(x * y for x, y in zip(row, col)) for col in bt]
        for row in a
    ]


def transpose(a):
    return [list(col) for col in zip(*a)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n, m):
    return [[Fraction(0)] * m for _ in range(n)]


def mat_eq(a, b) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if Fraction(x) != Fraction(y):
                return False
    return True


def is_symmetric(a) -> bool:
    n = len(a)
    return all(Fraction(a[i][j]) == Fraction(a[j][i]) for i in range(n) for j in range(i))


def symmetric_rank(a) -> int:
    return rank(a)


def inertia(a):
    """Signature (n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Computed by exact symmetric reduction (congruence, never
    eigenvalues), so definiteness decisions are exact.  Integer input
    takes a fraction-free path.
    """
    n = len(a)
    if all(isinstance(x, int) for row in a for x in row):
        return _inertia_int([list(row) for row in a])
    m = [[Fraction(a[i][j]) for j in range(n)] for i in range(n)]
    plus = minus = 0
    idx = list(range(n))
    while idx:
        # find a nonzero diagonal entry, or create one from an off-diagonal
        dpos = None
        for i in idx:
            if m[i][i] != 0:
                dpos = i
                break
        if dpos is None:
            opos = None
            for i in idx:
                for j in idx:
                    if j > i and m[i][j] != 0:
                        opos = (i, j)
                        break
                if opos:
                    break
            if opos is None:
                break  # remaining block is zero
            i, j = opos
            # row/col operation: add row j to row i (and col j to col i)
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            dpos = i
        d = m[dpos][dpos]
        if d > 0:
            plus += 1
        else:
            minus += 1
        idx = [i for i in idx if i != dpos]
        for i in idx:
            if m[i][dpos] != 0:
                f = m[i][dpos] / d
                for c in range(n):
                    m[i][c] -= f * m[dpos][c]
                for r in range(n):
                    m[r][i] -= f * m[r][dpos]
    zero = n - plus - minus
    return plus, minus, zero


def _inertia_int(m):
    """Fraction-free inertia of a symmetric integer matrix.

    Each Schur-complement step scales the remaining block by the
    positive factor |pivot|, which preserves the signature; blocks are
    divided by their gcd to bound growth."""
    n = len(m)
    idx = list(range(n))
    plus = minus = 0
    while idx:
        dpos = None
        for i in idx:
            if m[i][i] != 0:
                dpos = i
                break
        if dpos is None:
            opos = None
            for i in idx:
                for j in idx:
                    if j > i and m[i][j] != 0:
                        opos = (i, j)
                        break
                if opos:
                    break
            if opos is None:
                break
            i, j = opos
            for c in idx:
                m[i][c] += m[j][c]
            for r in idx:
                m[r][i] += m[r][j]
            dpos = i
        d = m[dpos][dpos]
        if d > 0:
            plus += 1
        else:
            minus += 1
        idx = [i for i in idx if i != dpos]
        ad = abs(d)
        sg = 1 if d > 0 else -1
        md = m[dpos]
        col = {i: m[i][dpos] for i in idx}
        g = 0
        for i in idx:
            mi = m[i]
            ci = col[i]
            for j in idx:
                mi[j] = ad * mi[j] - sg * ci * md[j]
                g = gcd(g, mi[j])
        if g > 1:
            for i in idx:
                for j in idx:
                    m[i][j] //= g
    zero = n - plus - minus
    return plus, minus, zero
