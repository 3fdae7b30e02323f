"""Integer Smith and kernel computations with unimodular transforms."""

from __future__ import annotations


def smith_normal_form(mat):
    """Smith normal form of an integer matrix.

    Returns (s, u, v) with u @ mat @ v = s, u and v unimodular, and s
    diagonal with s[i][i] dividing s[i+1][i+1] and nonnegative.
    Matrices are lists of int rows.
    """
    m = [list(map(int, row)) for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in m:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        m[i] = [-a for a in m[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(nr, nc):
        # find smallest nonzero entry in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if m[t][t] < 0:
            negate_row(t)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        if m[t][t] < 0:
                            negate_row(t)
                        dirty = True
            for j in range(t + 1, nc):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        if m[t][t] < 0:
                            negate_row(t)
                        dirty = True
        # divisibility condition: m[t][t] must divide the rest of the block
        fixed = False
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if m[i][j] % m[t][t] != 0:
                    # add row i to row t and restart the reduction at t
                    m[t] = [a + b for a, b in zip(m[t], m[i])]
                    u[t] = [a + b for a, b in zip(u[t], u[i])]
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        t += 1
    return m, u, v


def invariant_factors(mat):
    """Nonzero diagonal entries of the Smith normal form."""
    s, _, _ = smith_normal_form(mat)
    out = []
    for i in range(min(len(s), len(s[0]) if s else 0)):
        if s[i][i] != 0:
            out.append(s[i][i])
    return out


def saturated_kernel(mat):
    """Basis of {x in Z^n : mat @ x = 0}, a saturated sublattice of Z^n.

    With u @ mat @ v = s diagonal, the kernel is spanned by the columns of v
    at the zero diagonal positions.  Returned as a list of integer rows.
    """
    mat = [list(map(int, row)) for row in mat]
    if not mat:
        return []
    nc = len(mat[0])
    s, _, v = smith_normal_form(mat)
    rank = len(invariant_factors(mat))
    cols = range(rank, nc)
    return [[v[r][c] for r in range(nc)] for c in cols]
