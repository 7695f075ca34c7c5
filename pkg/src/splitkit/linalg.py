"""Exact linear algebra over Q and F_p.

Vectors are sparse dicts ``column -> coefficient``.  ``p=None`` means the
rationals (``Fraction`` entries); an integer ``p`` means the prime field F_p
with entries stored as ints in ``range(p)``.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def _normalize(c, p):
    if p is None:
        return Fraction(c)
    return int(c) % p


def _inverse(c, p):
    if p is None:
        return 1 / Fraction(c)
    return pow(int(c), -1, p)


class Echelon:
    """Incrementally built semi-echelon basis.

    Every stored row has a leading column (its minimal column) that is not
    the leading column of any other row, and is scaled so that the leading
    coefficient is one.
    """

    def __init__(self, p=None):
        self.p = p
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Reduce ``vec`` against the basis, returning the (possibly empty) remainder."""
        p = self.p
        v = {k: _normalize(c, p) for k, c in vec.items()}
        v = {k: c for k, c in v.items() if c}
        while v:
            col = min(v)
            row = self.rows.get(col)
            if row is None:
                break
            factor = v[col]
            for k, c in row.items():
                nc = v.get(k, 0) - factor * c
                if p is not None:
                    nc %= p
                if nc:
                    v[k] = nc
                else:
                    v.pop(k, None)
        return v

    def add(self, vec):
        """Insert ``vec``; return True if it was independent of the basis."""
        v = self.reduce(vec)
        if not v:
            return False
        col = min(v)
        inv = _inverse(v[col], self.p)
        if self.p is None:
            row = {k: c * inv for k, c in v.items()}
        else:
            row = {k: (c * inv) % self.p for k, c in v.items()}
        self.rows[col] = row
        return True

    def contains(self, vec):
        return not self.reduce(vec)


def rank(vectors, p=None):
    ech = Echelon(p)
    for v in vectors:
        ech.add(v)
    return ech.rank


def dense_to_sparse(row):
    return {j: c for j, c in enumerate(row) if c}


def matrix_rank(rows, p=None):
    """Rank of a dense matrix given as a list of rows."""
    return rank((dense_to_sparse(r) for r in rows), p)


def nullspace(rows, ncols, p=None):
    """Basis of ``{v : M v = 0}`` for the dense matrix ``rows`` (list of lists).

    Returns a list of dense vectors of length ``ncols``.
    """
    m = [[_normalize(c, p) for c in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = _inverse(m[r][col], p)
        m[r] = [_normalize(c * inv, p) for c in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [_normalize(a - f * b, p) for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero = _normalize(0, p)
    one = _normalize(1, p)
    for fcol in free:
        v = [zero] * ncols
        v[fcol] = one
        for i, pcol in enumerate(pivots):
            v[pcol] = _normalize(-m[i][fcol], p)
        basis.append(v)
    return basis


def rank_mod_p(matrix, p):
    """Rank of an integer matrix modulo a prime ``p < 2**31`` (dense, numpy).

    Row operations are vectorized; intermediate products stay below 2**62.
    """
    a = np.array(matrix, dtype=np.int64) % p
    nrows, ncols = a.shape
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], col:] = a[[piv, r], col:]
        inv = pow(int(a[r, col]), -1, p)
        pivot_row = (a[r, col:] * inv) % p
        below = a[r + 1:, col]
        rows = np.nonzero(below)[0] + r + 1
        if rows.size:
            a[rows, col:] = (a[rows, col:] - np.outer(a[rows, col], pivot_row)) % p
        r += 1
    return r
