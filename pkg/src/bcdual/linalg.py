"""Dense linear algebra over F3 on numpy integer arrays.

Vectors are rows. Every routine reduces mod 3 on entry, so callers may pass
balanced or unbalanced representatives.
"""
from __future__ import annotations

import numpy as np


def as_matrix(rows, ncols: int | None = None) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a % 3


def rref(rows, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form, zero rows dropped, together with pivot columns."""
    a = as_matrix(rows, ncols).copy()
    nrows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        if a[r, c] == 2:
            a[r] = (2 * a[r]) % 3
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % 3
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(m, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {v : m @ v == 0}."""
    a = as_matrix(m, ncols)
    n = a.shape[1]
    r, piv = rref(a, n)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, p in enumerate(piv):
            out[k, p] = (-r[i, f]) % 3
    return out


def left_kernel(m) -> np.ndarray:
    """Basis of {c : c @ m == 0}."""
    a = as_matrix(m)
    return nullspace(a.T, a.shape[0])


class Echelon:
    """A subspace of F3^n kept in reduced echelon form, for fast membership tests."""

    def __init__(self, n: int, rows=None):
        self.n = n
        if rows is None or len(rows) == 0:
            self.rows = np.zeros((0, n), dtype=np.int64)
            self.pivots: list[int] = []
        else:
            self.rows, self.pivots = rref(rows, n)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        """Reduce rows of v modulo the subspace (canonical representative)."""
        v = as_matrix(v, self.n).copy()
        for i, p in enumerate(self.pivots):
            c = v[:, p].copy()
            hit = np.flatnonzero(c)
            if hit.size:
                v[hit] = (v[hit] - np.outer(c[hit], self.rows[i])) % 3
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def add(self, v) -> "Echelon":
        v = as_matrix(v, self.n)
        if v.shape[0] == 0:
            return self
        return Echelon(self.n, np.vstack([self.rows, v]))

    def __contains__(self, v):
        return self.contains(v)


def same_span(a, b, n: int) -> bool:
    ea, eb = Echelon(n, a), Echelon(n, b)
    return ea.dim == eb.dim and eb.contains(ea.rows) if ea.dim else eb.dim == 0
