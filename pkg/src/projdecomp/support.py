"""Total-support diagnosis for square sparsity patterns.

A square nonnegative pattern has *support* when some permutation picks a
nonzero from every row and column (a perfect matching in the bipartite
row/column graph), and *total support* when every nonzero lies on at least
one such permutation. Sinkhorn-type balancing converges exactly on
patterns with total support.

Given one perfect matching ``row -> match[row]``, entry ``(i, j)`` lies on
some perfect matching iff ``i`` and the row matched to column ``j`` fall in
the same strongly connected component of the digraph with an edge
``i -> k`` whenever ``a[i, match[k]] != 0`` (Dulmage-Mendelsohn).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import connected_components, maximum_bipartite_matching

from .errors import ShapeError
from .matrix import as_matrix

__all__ = ["SupportClass", "SupportDiagnosis", "check_support"]


class SupportClass(str, enum.Enum):
    TOTAL_SUPPORT = "total_support"
    SUPPORT_ONLY = "support_only"
    NO_SUPPORT = "no_support"


@dataclass(frozen=True)
class SupportDiagnosis:
    classification: SupportClass
    # 0-based (row, col) of a nonzero lying on no nonzero permuted diagonal
    witness: tuple[int, int] | None = None


def check_support(pattern) -> SupportDiagnosis:
    """Classify the nonzero pattern of a square matrix.

    The witness for ``support_only`` is the first offending entry in
    row-major order.
    """
    M = as_matrix(pattern)
    m, n = M.shape
    if m != n:
        raise ShapeError(f"support is only defined for square matrices, got {m}x{n}")
    rows, cols, _ = M.to_coo()
    if len(rows) == 0:
        return SupportDiagnosis(SupportClass.NO_SUPPORT)

    graph = csr_array((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    row_to_col = maximum_bipartite_matching(graph, perm_type="column")
    if np.any(row_to_col < 0):
        return SupportDiagnosis(SupportClass.NO_SUPPORT)

    col_to_row = np.empty(n, dtype=np.int64)
    col_to_row[row_to_col] = np.arange(n)
    # edge i -> k for each nonzero (i, j) with k the row matched to column j
    targets = col_to_row[cols]
    digraph = csr_array((np.ones(len(rows), dtype=np.int8), (rows, targets)), shape=(n, n))
    _, labels = connected_components(digraph, directed=True, connection="strong")
    bad = labels[rows] != labels[targets]
    if not bad.any():
        return SupportDiagnosis(SupportClass.TOTAL_SUPPORT)
    k = int(np.argmax(bad))
    return SupportDiagnosis(SupportClass.SUPPORT_ONLY, (int(rows[k]), int(cols[k])))
