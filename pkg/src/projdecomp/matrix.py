"""Real matrices in dense or coordinate-sparse storage, and the handful of
operations the decomposition needs: RMS measures, diagonal scaling,
Hadamard powers and transposition.

All reductions sum squares sequentially, left to right, in canonical index
order (row-major for rows and the whole matrix, column-major for columns).
Zeros contribute an exact ``+0.0`` to a running sum of squares, so the
dense and sparse paths produce bit-identical results on the same values.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, DomainError, ShapeError

__all__ = [
    "Matrix",
    "as_matrix",
    "rms",
    "rms_rows",
    "rms_cols",
    "scale_rows",
    "scale_cols",
    "hadamard_power",
    "transpose",
]


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class Matrix:
    """Immutable m x n matrix of float64 values.

    Storage is either a dense row-major array or a coordinate list of
    ``(row, col, value)`` triples kept sorted in row-major order, with no
    explicit zeros and no duplicate positions. Build one with
    ``Matrix(array_like)`` (dense) or :meth:`Matrix.from_coo` (sparse), or
    let :func:`as_matrix` coerce whatever you have.
    """

    __slots__ = ("shape", "_dense", "_rows", "_cols", "_vals", "_colorder")

    def __init__(self, data):
        a = np.array(data, dtype=np.float64)
        if a.ndim != 2:
            raise ShapeError(f"expected a 2-d array, got {a.ndim} dimension(s)")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ShapeError(f"matrix must be at least 1x1, got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("matrix entries must be finite")
        self.shape = (int(a.shape[0]), int(a.shape[1]))
        self._dense = _frozen(a)
        self._rows = self._cols = self._vals = self._colorder = None

    @classmethod
    def from_coo(cls, shape, rows, cols, vals) -> "Matrix":
        """Sparse matrix from coordinate triples (0-based indices).

        Explicit zeros are dropped; duplicate positions are an error.
        """
        m, n = (int(shape[0]), int(shape[1]))
        if m < 1 or n < 1:
            raise ShapeError(f"matrix must be at least 1x1, got {(m, n)}")
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        vals = np.asarray(vals, dtype=np.float64).ravel()
        if not (len(rows) == len(cols) == len(vals)):
            raise DimensionError("rows, cols and vals must have equal length")
        if len(rows) and (rows.min() < 0 or rows.max() >= m or cols.min() < 0 or cols.max() >= n):
            raise DimensionError(f"coordinate out of range for shape {(m, n)}")
        if not np.all(np.isfinite(vals)):
            raise DomainError("matrix entries must be finite")
        keep = vals != 0.0
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        if len(rows) > 1:
            dup = (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
            if dup.any():
                k = int(np.argmax(dup))
                raise DomainError(f"duplicate entry at ({rows[k]}, {cols[k]})")
        obj = cls.__new__(cls)
        obj.shape = (m, n)
        obj._dense = None
        obj._rows, obj._cols, obj._vals = _frozen(rows), _frozen(cols), _frozen(vals)
        obj._colorder = None
        return obj

    @property
    def is_sparse(self) -> bool:
        return self._dense is None

    @property
    def nnz(self) -> int:
        if self.is_sparse:
            return len(self._vals)
        return int(np.count_nonzero(self._dense))

    def toarray(self) -> np.ndarray:
        """Dense copy as a writable ndarray."""
        if not self.is_sparse:
            return np.array(self._dense)
        out = np.zeros(self.shape)
        out[self._rows, self._cols] = self._vals
        return out

    def to_coo(self):
        """``(rows, cols, vals)`` of the nonzeros in row-major order."""
        if self.is_sparse:
            return self._rows.copy(), self._cols.copy(), self._vals.copy()
        r, c = np.nonzero(self._dense)
        return r.astype(np.int64), c.astype(np.int64), self._dense[r, c].copy()

    def to_sparse(self) -> "Matrix":
        return self if self.is_sparse else Matrix.from_coo(self.shape, *self.to_coo())

    def to_dense(self) -> "Matrix":
        return self if not self.is_sparse else Matrix(self.toarray())

    def __array__(self, dtype=None, copy=None):
        a = self.toarray()
        return a if dtype is None else a.astype(dtype)

    def __repr__(self):
        kind = f"sparse, nnz={self.nnz}" if self.is_sparse else "dense"
        return f"Matrix({self.shape[0]}x{self.shape[1]}, {kind})"

    # Internal accessors used by the reductions below.

    def _map_values(self, fn) -> "Matrix":
        """Apply ``fn(values, rows, cols)`` to the stored values, keeping storage."""
        if not self.is_sparse:
            m, n = self.shape
            r = np.arange(m)[:, None]
            c = np.arange(n)[None, :]
            return Matrix(fn(self._dense, r, c))
        vals = fn(self._vals, self._rows, self._cols)
        return Matrix.from_coo(self.shape, self._rows, self._cols, vals)

    def _column_order(self):
        if self._colorder is None:
            self._colorder = _frozen(np.lexsort((self._rows, self._cols)))
        return self._colorder


def as_matrix(x) -> Matrix:
    """Coerce an ndarray, nested list, scipy sparse matrix or Matrix to Matrix."""
    if isinstance(x, Matrix):
        return x
    if hasattr(x, "tocoo") and hasattr(x, "shape"):
        coo = x.tocoo()
        return Matrix.from_coo(coo.shape, coo.row, coo.col, coo.data)
    return Matrix(x)


def _grouped_sequential_sums(values, groups, ngroups):
    """Left-to-right sums of ``values`` per group; values must be sorted by group."""
    if len(values) == 0:
        return np.zeros(ngroups)
    counts = np.bincount(groups, minlength=ngroups)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    pos = np.arange(len(values)) - starts[groups]
    padded = np.zeros((ngroups, int(counts.max())))
    padded[groups, pos] = values
    return np.cumsum(padded, axis=1)[:, -1]


def _sumsq_total(M: Matrix) -> float:
    if M.is_sparse:
        sq = M._vals * M._vals
    else:
        sq = (M._dense * M._dense).ravel()
    return float(np.cumsum(sq)[-1]) if len(sq) else 0.0


def _sumsq_rows(M: Matrix) -> np.ndarray:
    if M.is_sparse:
        return _grouped_sequential_sums(M._vals * M._vals, M._rows, M.shape[0])
    return np.cumsum(M._dense * M._dense, axis=1)[:, -1]


def _sumsq_cols(M: Matrix) -> np.ndarray:
    if M.is_sparse:
        order = M._column_order()
        v = M._vals[order]
        return _grouped_sequential_sums(v * v, M._cols[order], M.shape[1])
    return np.cumsum(M._dense * M._dense, axis=0)[-1, :]


def rms(M) -> float:
    """Root-mean-square of all entries, ``sqrt(sum a_ij^2 / (m n))``."""
    M = as_matrix(M)
    m, n = M.shape
    return float(np.sqrt(_sumsq_total(M) / (m * n)))


def rms_rows(M) -> np.ndarray:
    """RMS of each row (length m); zero rows give 0."""
    M = as_matrix(M)
    return np.sqrt(_sumsq_rows(M) / M.shape[1])


def rms_cols(M) -> np.ndarray:
    """RMS of each column (length n); zero columns give 0."""
    M = as_matrix(M)
    return np.sqrt(_sumsq_cols(M) / M.shape[0])


def _check_scaling(s, length, what):
    s = np.asarray(s, dtype=np.float64).ravel()
    if len(s) != length:
        raise DimensionError(f"{what} scaling vector has length {len(s)}, expected {length}")
    if not np.all(np.isfinite(s)) or np.any(s == 0.0):
        raise DomainError(f"{what} scaling factors must be finite and nonzero")
    return s


def scale_rows(M, s) -> Matrix:
    """Return ``D_s M``: row i multiplied by ``s[i]``."""
    M = as_matrix(M)
    s = _check_scaling(s, M.shape[0], "row")
    if M.is_sparse:
        return M._map_values(lambda v, r, c: v * s[r])
    return Matrix(M._dense * s[:, None])


def scale_cols(M, s) -> Matrix:
    """Return ``M D_s``: column j multiplied by ``s[j]``."""
    M = as_matrix(M)
    s = _check_scaling(s, M.shape[1], "column")
    if M.is_sparse:
        return M._map_values(lambda v, r, c: v * s[c])
    return Matrix(M._dense * s[None, :])


def hadamard_power(M, p) -> Matrix:
    """Elementwise power ``a_ij ** p`` for ``p > 0``.

    Integer powers keep the usual sign rules (even powers are nonnegative).
    Non-integer powers require every entry to be nonnegative.
    """
    M = as_matrix(M)
    p = float(p)
    if not p > 0:
        raise DomainError(f"Hadamard power requires p > 0, got {p}")
    integral = p.is_integer()
    if not integral:
        vals = M._vals if M.is_sparse else M._dense
        if np.any(vals < 0):
            raise DomainError(f"negative entry with non-integer power p={p}")
    if integral:
        ip = int(p)
        return M._map_values(lambda v, r, c: np.power(v, ip))
    return M._map_values(lambda v, r, c: np.power(v, p))


def transpose(M) -> Matrix:
    M = as_matrix(M)
    m, n = M.shape
    if M.is_sparse:
        return Matrix.from_coo((n, m), M._cols, M._rows, M._vals)
    return Matrix(M._dense.T)
