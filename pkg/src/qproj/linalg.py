"""Sparse matrices over arbitrary-precision floats, with SVD-based rank.

Plumbing shared by the representation modules.  Matrices are immutable-ish
dicts keyed by (row, col); all scalar entries are mpmath floats created under
an explicit working precision.
"""

from __future__ import annotations

from collections import namedtuple

from mpmath import mp

from .qarith import check_precision

__all__ = ["SparseMatrix", "RankResult", "numeric_rank"]


RankResult = namedtuple("RankResult", "rank ill_conditioned threshold sigmas")


class SparseMatrix:
    """A (nrows x ncols) sparse matrix over mpf entries."""

    __slots__ = ("nrows", "ncols", "_d")

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        d = {}
        if entries:
            items = entries.items() if hasattr(entries, "items") else entries
            for (i, j), v in items:
                if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                    raise IndexError("entry (%d, %d) outside %dx%d" % (i, j, nrows, ncols))
                if v:
                    d[(i, j)] = v
        self._d = d

    @classmethod
    def identity(cls, n, one=None):
        one = mp.mpf(1) if one is None else one
        return cls(n, n, {(i, i): one for i in range(n)})

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        n = len(values)
        return cls(n, n, {(i, i): v for i, v in enumerate(values) if v})

    def get(self, i, j):
        return self._d.get((i, j), mp.mpf(0))

    def entries(self):
        return self._d.items()

    @property
    def nnz(self):
        return len(self._d)

    def transpose(self):
        return SparseMatrix(
            self.ncols, self.nrows, {(j, i): v for (i, j), v in self._d.items()}
        )

    def scaled(self, c):
        return SparseMatrix(
            self.nrows, self.ncols, {k: c * v for k, v in self._d.items()}
        )

    def __add__(self, other):
        self._check_shape(other)
        d = dict(self._d)
        for k, v in other._d.items():
            nv = d.get(k, mp.mpf(0)) + v
            if nv:
                d[k] = nv
            elif k in d:
                del d[k]
        return SparseMatrix(self.nrows, self.ncols, d)

    def __sub__(self, other):
        return self + other.scaled(mp.mpf(-1))

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(
                "shape mismatch: %dx%d @ %dx%d"
                % (self.nrows, self.ncols, other.nrows, other.ncols)
            )
        rows_of_b = {}
        for (k, j), v in other._d.items():
            rows_of_b.setdefault(k, []).append((j, v))
        acc = {}
        for (i, k), va in self._d.items():
            for j, vb in rows_of_b.get(k, ()):
                key = (i, j)
                acc[key] = acc.get(key, mp.mpf(0)) + va * vb
        return SparseMatrix(self.nrows, other.ncols, acc)

    def max_abs(self):
        if not self._d:
            return mp.mpf(0)
        return max(abs(v) for v in self._d.values())

    def is_diagonal(self, tol=0):
        return all(i == j or abs(v) <= tol for (i, j), v in self._d.items())

    def column(self, j):
        return {i: v for (i, jj), v in self._d.items() if jj == j}

    def _check_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def __repr__(self):
        return "SparseMatrix(%dx%d, nnz=%d)" % (self.nrows, self.ncols, self.nnz)


def numeric_rank(matrix, precision, sigma_ref=None) -> RankResult:
    """Numeric rank with relative singular-value threshold 10^(-precision/2).

    Zero rows and columns are compressed away before the SVD.  The reference
    scale is the largest singular value (or `sigma_ref` if given, so several
    blocks of one operator can share a scale).  A rank decision is flagged as
    ill conditioned when any singular value falls within a factor 10 of the
    cut; callers must surface the flag rather than resolve it silently.
    """
    if not isinstance(matrix, SparseMatrix):
        raise TypeError("numeric_rank expects a SparseMatrix")
    precision = check_precision(precision)
    with mp.workdps(precision):
        rows = sorted({i for (i, _j), _v in matrix.entries()})
        cols = sorted({j for (_i, j), _v in matrix.entries()})
        if not rows or not cols:
            return RankResult(0, False, mp.mpf(0), ())
        rmap = {r: a for a, r in enumerate(rows)}
        cmap = {c: a for a, c in enumerate(cols)}
        dense = mp.zeros(len(rows), len(cols))
        for (i, j), v in matrix.entries():
            dense[rmap[i], cmap[j]] = v
        sigmas = mp.svd_r(dense, compute_uv=False)
        sigmas = sorted((abs(s) for s in sigmas), reverse=True)
        if not sigmas:
            return RankResult(0, False, mp.mpf(0), ())
        scale = mp.mpf(sigma_ref) if sigma_ref is not None else sigmas[0]
        if scale == 0:
            return RankResult(0, False, mp.mpf(0), tuple(sigmas))
        cut = scale * mp.mpf(10) ** (-(precision // 2))
        rank = sum(1 for s in sigmas if s > cut)
        ill = any(cut / 10 < s < cut * 10 for s in sigmas)
        return RankResult(rank, ill, cut, tuple(sigmas))
