"""Sparse square matrices over the max-plus semiring and their kernels.

Storage is CSR-like: per row, strictly increasing column indices with finite
float64 weights.  An absent entry *is* ``-inf``; infinities are never stored.
All operations are pure functions on immutable inputs, so values can be
shared freely across threads, and row-parallel evaluation cannot change
results (max is associative and commutative).
"""
from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionError
from .lattice import FLOAT_ATOL, NEG_INF


class MaxPlusMatrix:
    """An ``n x n`` matrix with entries in ``R ∪ {-inf}``.

    Build instances with :meth:`from_dense`, :meth:`from_entries`,
    :meth:`identity`, :meth:`constant` or :meth:`empty`; the raw constructor
    expects canonical CSR arrays and is mostly internal.
    """

    __slots__ = ("n", "indptr", "indices", "data", "_transpose", "_integral")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray, data: np.ndarray):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.data = np.ascontiguousarray(data, dtype=np.float64)
        if self.indptr.size != self.n + 1:
            raise DimensionError("indptr must have length n + 1")
        if self.indices.size != self.data.size:
            raise DimensionError("indices and data must have equal length")
        if self.data.size and not np.all(np.isfinite(self.data)):
            raise ValueError("stored weights must be finite (-inf means absent)")
        for arr in (self.indptr, self.indices, self.data):
            arr.setflags(write=False)
        self._transpose = None
        self._integral = None

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_dense(cls, dense) -> "MaxPlusMatrix":
        """Build from a dense array; ``-inf`` entries are dropped."""
        arr = np.asarray(dense, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
        if np.any(np.isposinf(arr)) or np.any(np.isnan(arr)):
            raise ValueError("entries must be finite or -inf")
        n = arr.shape[0]
        mask = arr > NEG_INF
        counts = mask.sum(axis=1)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        rows, cols = np.nonzero(mask)
        return cls(n, indptr, cols, arr[rows, cols])

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, int, float]]) -> "MaxPlusMatrix":
        """Build from ``(i, j, weight)`` triples; duplicates are rejected."""
        triples = list(entries)
        if not triples:
            return cls.empty(n)
        rows = np.array([t[0] for t in triples], dtype=np.int64)
        cols = np.array([t[1] for t in triples], dtype=np.int64)
        vals = np.array([t[2] for t in triples], dtype=np.float64)
        if np.any(rows < 0) or np.any(rows >= n) or np.any(cols < 0) or np.any(cols >= n):
            raise IndexError("entry index out of range")
        key = rows * n + cols
        if np.unique(key).size != key.size:
            raise ValueError("duplicate (i, j) entry")
        return _from_coo_max(n, rows, cols, vals)

    @classmethod
    def identity(cls, n: int) -> "MaxPlusMatrix":
        """Max-plus identity: 0 on the diagonal, -inf elsewhere."""
        return cls(n, np.arange(n + 1), np.arange(n), np.zeros(n))

    @classmethod
    def constant(cls, n: int, value: float) -> "MaxPlusMatrix":
        """Full matrix with every entry equal to ``value`` (must be finite)."""
        if not np.isfinite(value):
            if value == NEG_INF:
                return cls.empty(n)
            raise ValueError("constant value must be finite or -inf")
        indptr = np.arange(0, n * n + 1, n, dtype=np.int64)
        indices = np.tile(np.arange(n, dtype=np.int64), n)
        return cls(n, indptr, indices, np.full(n * n, float(value)))

    @classmethod
    def empty(cls, n: int) -> "MaxPlusMatrix":
        """The all ``-inf`` matrix (neutral element for entrywise max)."""
        return cls(n, np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64), np.zeros(0))

    # ------------------------------------------------------------------
    # accessors
    # ------------------------------------------------------------------

    @property
    def nnz(self) -> int:
        return int(self.data.size)

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Column indices and weights stored in row ``i``."""
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.data[lo:hi]

    def entry(self, i: int, j: int) -> float:
        cols, vals = self.row(i)
        pos = np.searchsorted(cols, j)
        if pos < cols.size and cols[pos] == j:
            return float(vals[pos])
        return NEG_INF

    def items(self) -> Iterator[tuple[int, int, float]]:
        """Yield stored ``(i, j, weight)`` triples in row-major order."""
        for i in range(self.n):
            cols, vals = self.row(i)
            for j, w in zip(cols.tolist(), vals.tolist()):
                yield i, j, w

    def to_dense(self) -> np.ndarray:
        out = np.full((self.n, self.n), NEG_INF)
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        out[rows, self.indices] = self.data
        return out

    def diagonal(self) -> np.ndarray:
        d = np.full(self.n, NEG_INF)
        for i in range(self.n):
            d[i] = self.entry(i, i)
        return d

    def transpose(self) -> "MaxPlusMatrix":
        """Transposed matrix; computed once and cached (idempotent, so the
        benign race under free threading cannot produce a wrong value)."""
        if self._transpose is None:
            rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
            t = _from_coo_max(self.n, self.indices, rows, self.data)
            t._transpose = self
            self._transpose = t
        return self._transpose

    def row_suprema(self) -> np.ndarray:
        """Per-row maxima; ``-inf`` for empty rows."""
        return _segment_reduce(np.maximum, self.data, self.indptr, NEG_INF)

    def column_suprema(self) -> np.ndarray:
        return self.transpose().row_suprema()

    def is_integral(self) -> bool:
        """True when every stored weight is an integer-valued float."""
        if self._integral is None:
            self._integral = bool(np.all(self.data == np.floor(self.data)))
        return self._integral

    def is_symmetric(self, atol: float = 0.0) -> bool:
        return mats_equal(self, self.transpose(), atol=atol)

    # ------------------------------------------------------------------
    # operators
    # ------------------------------------------------------------------

    def __matmul__(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        return mp_mat_mat(self, other)

    def __or__(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        return mp_mat_join(self, other)

    def __pow__(self, p: int) -> "MaxPlusMatrix":
        return mp_mat_power(self, p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaxPlusMatrix):
            return NotImplemented
        return mats_equal(self, other, atol=0.0)

    __hash__ = None

    def __repr__(self) -> str:
        return f"MaxPlusMatrix(n={self.n}, nnz={self.nnz})"


# ----------------------------------------------------------------------
# construction helpers
# ----------------------------------------------------------------------


def _from_coo_max(n: int, rows: np.ndarray, cols: np.ndarray, vals: np.ndarray) -> MaxPlusMatrix:
    """Canonicalise COO triples, taking the max over duplicate positions."""
    if rows.size == 0:
        return MaxPlusMatrix.empty(n)
    key = rows.astype(np.int64) * n + cols.astype(np.int64)
    order = np.argsort(key, kind="stable")
    key = key[order]
    vals = np.asarray(vals, dtype=np.float64)[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(key)) + 1))
    gmax = np.maximum.reduceat(vals, starts)
    ukey = key[starts]
    urows = ukey // n
    ucols = ukey % n
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(urows, minlength=n), out=indptr[1:])
    return MaxPlusMatrix(n, indptr, ucols, gmax)


def _segment_reduce(ufunc, data: np.ndarray, indptr: np.ndarray, fill: float) -> np.ndarray:
    n = indptr.size - 1
    out = np.full(n, fill)
    nonempty = indptr[:-1] < indptr[1:]
    if np.any(nonempty):
        # reduceat over the non-empty starts: zero-length rows in between
        # contribute no elements, so consecutive starts still bound exactly
        # one row's slice each.
        out[nonempty] = ufunc.reduceat(data, indptr[:-1][nonempty])
    return out


def zero_tolerance(*mats: MaxPlusMatrix) -> float:
    """Comparison tolerance: exact for integral weights, ``1e-9`` otherwise."""
    return 0.0 if all(m.is_integral() for m in mats) else FLOAT_ATOL


# ----------------------------------------------------------------------
# semiring kernels
# ----------------------------------------------------------------------


def mp_mat_vec(w: MaxPlusMatrix, x) -> np.ndarray:
    """Max-plus matrix-vector product.

    ``result[i] = max_j (w[i, j] + x[j])`` over stored entries; ``-inf``
    when row ``i`` is empty or every reached ``x[j]`` is ``-inf``.

    Parameters
    ----------
    w : MaxPlusMatrix
    x : array_like of float
        Length-``n`` vector; ``-inf`` entries are allowed.

    Returns
    -------
    ndarray of float64, shape (n,)
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size != w.n:
        raise DimensionError(f"vector length {x.size} does not match n={w.n}")
    terms = w.data + x[w.indices]
    return _segment_reduce(np.maximum, terms, w.indptr, NEG_INF)


def mp_mat_vec_min(w: MaxPlusMatrix, y) -> np.ndarray:
    """Row-wise residual kernel: ``result[i] = min_j (y[j] - w[i, j])``.

    Evaluating it on a transpose gives the erosion of Eq-style adjoints
    directly, without any complement round-trips.  Empty rows produce
    ``+inf`` (min over the empty set); callers either forbid or clamp them.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.size != w.n:
        raise DimensionError(f"vector length {y.size} does not match n={w.n}")
    terms = y[w.indices] - w.data
    return _segment_reduce(np.minimum, terms, w.indptr, np.inf)


def mp_mat_mat(a: MaxPlusMatrix, b: MaxPlusMatrix) -> MaxPlusMatrix:
    """Max-plus matrix product ``(a ⊗ b)[i, j] = max_k (a[i, k] + b[k, j])``.

    Sparse expand-and-reduce: every stored ``a[i, k]`` is combined with row
    ``k`` of ``b``, then duplicates are folded by a grouped max.  Entries
    that would evaluate to ``-inf`` are simply never produced.
    """
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    n = a.n
    if a.nnz == 0 or b.nnz == 0:
        return MaxPlusMatrix.empty(n)
    arows = np.repeat(np.arange(n), np.diff(a.indptr))
    k = a.indices
    counts = b.indptr[k + 1] - b.indptr[k]
    total = int(counts.sum())
    if total == 0:
        return MaxPlusMatrix.empty(n)
    ptr = np.concatenate(([0], np.cumsum(counts)))
    pos = np.arange(total, dtype=np.int64) + np.repeat(b.indptr[k] - ptr[:-1], counts)
    rows = np.repeat(arows, counts)
    cols = b.indices[pos]
    vals = np.repeat(a.data, counts) + b.data[pos]
    return _from_coo_max(n, rows, cols, vals)


def mp_mat_join(a: MaxPlusMatrix, b: MaxPlusMatrix) -> MaxPlusMatrix:
    """Entrywise max; an entry absent from both stays absent."""
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    n = a.n
    arows = np.repeat(np.arange(n), np.diff(a.indptr))
    brows = np.repeat(np.arange(n), np.diff(b.indptr))
    return _from_coo_max(
        n,
        np.concatenate((arows, brows)),
        np.concatenate((a.indices, b.indices)),
        np.concatenate((a.data, b.data)),
    )


def mp_mat_power(w: MaxPlusMatrix, p: int) -> MaxPlusMatrix:
    """``p``-fold ⊗-product by repeated squaring (``p >= 1``).

    ``p = 0`` is rejected: callers that want the identity should say so
    explicitly with :meth:`MaxPlusMatrix.identity`.
    """
    if int(p) != p or p < 1:
        raise ValueError(f"power must be a positive integer, got {p}")
    p = int(p)
    result = None
    base = w
    while True:
        if p & 1:
            result = base if result is None else mp_mat_mat(result, base)
        p >>= 1
        if p == 0:
            return result
        base = mp_mat_mat(base, base)


def prune_keep_above(w: MaxPlusMatrix, threshold: float) -> MaxPlusMatrix:
    """Drop stored entries ``<= threshold`` (they become ``-inf``)."""
    keep = w.data > threshold
    if np.all(keep):
        return w
    rows = np.repeat(np.arange(w.n), np.diff(w.indptr))
    return _from_coo_max(w.n, rows[keep], w.indices[keep], w.data[keep])


def mats_equal(a: MaxPlusMatrix, b: MaxPlusMatrix, atol: float = 0.0) -> bool:
    """Entrywise equality (same ``-inf`` pattern, weights within ``atol``)."""
    if a.n != b.n:
        return False
    if not (np.array_equal(a.indptr, b.indptr) and np.array_equal(a.indices, b.indices)):
        return False
    if atol == 0.0:
        return bool(np.array_equal(a.data, b.data))
    return bool(np.all(np.abs(a.data - b.data) <= atol))
