"""Fast rank bounds over a large prime field, backed by numpy.

Rank over F_p is at most the rank over Q, so a full-rank (or
full-row-span) result mod p is a sound certificate over Q, while a rank
drop mod p proves nothing and callers must fall back to exact
arithmetic.  Entries are stored in float64; with p close to 10^6 every
intermediate a*b + c stays below 2^53, so the matmul-based reduction is
exact integer arithmetic in disguise.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

PRIME = 999983

assert (PRIME - 1) ** 2 + PRIME < 2 ** 53


def _inv(a: int, p: int = PRIME) -> int:
    return pow(int(a) % p, p - 2, p)


def to_modp(rows, p: int = PRIME):
    """Reduce a rational matrix mod p.  Raises ZeroDivisionError if a
    denominator is divisible by p (callers treat that as "no certificate")."""
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=np.float64)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if isinstance(x, Fraction):
                out[i, j] = x.numerator % p * _inv(x.denominator, p) % p
            else:
                out[i, j] = int(x) % p
    return out


def rank_modp(mat: np.ndarray, p: int = PRIME) -> int:
    """Rank of an integer matrix mod p (entries already reduced to [0,p)).

    Plain right-looking elimination with a blocked update so the heavy
    lifting is matmul on float64 blocks, reduced mod p after each panel.
    """
    a = np.array(mat, dtype=np.float64, copy=True)
    m, n = a.shape
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = None
        for i in range(rank, m):
            if a[i, col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = _inv(int(a[rank, col]), p)
        a[rank, col:] = a[rank, col:] * inv % p
        if rank + 1 < m:
            factors = a[rank + 1 :, col : col + 1]
            if factors.any():
                a[rank + 1 :, col:] = (
                    a[rank + 1 :, col:] - factors * a[rank, col:][None, :]
                ) % p
        rank += 1
        col += 1
    return rank


def row_space_full_modp(rows, dim: int, p: int = PRIME) -> bool:
    """True if the rows certifiably span a space of dimension dim over Q.

    Sound one-sided test: rank mod p <= exact rank, so a mod-p rank of
    dim proves the exact rank is dim.  False means "not certified".
    """
    try:
        mat = to_modp(rows, p)
    except ZeroDivisionError:
        return False
    return rank_modp(mat, p) >= dim


class IncrementalRank:
    """Maintains an echelon basis mod p, absorbing new rows in batches.

    Used by the Nullstellensatz certificates, where millions of product
    rows must be tested against a growing row space.
    """

    def __init__(self, ncols: int, p: int = PRIME):
        self.p = p
        self.ncols = ncols
        # echelon rows with leading 1s, and their pivot columns
        self.rows = np.zeros((0, ncols), dtype=np.float64)
        self.pivots = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add_batch(self, batch: np.ndarray) -> None:
        p = self.p
        b = np.array(batch, dtype=np.float64, copy=True) % p
        if self.rank:
            # eliminate existing pivots from the whole batch in one matmul
            coeffs = b[:, self.pivots]
            if coeffs.any():
                b = (b - coeffs @ self.rows) % p
        for i in range(b.shape[0]):
            if self.rank >= self.ncols:
                return
            row = b[i]
            if self.rank:
                coeffs = row[self.pivots]
                if coeffs.any():
                    row = (row - coeffs @ self.rows) % p
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                continue
            c = int(nz[0])
            row = row * _inv(int(row[c]), p) % p
            # keep stored rows reduced against the new pivot
            if self.rank:
                col = self.rows[:, c].copy()
                if col.any():
                    self.rows = (self.rows - col[:, None] * row[None, :]) % p
            self.rows = np.vstack([self.rows, row])
            self.pivots.append(c)
