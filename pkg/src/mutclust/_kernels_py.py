"""Numpy fallback implementations of the hot kernels.

Same signatures as the compiled ``_kernels`` extension; used when the
extension is not built or when ``MUTCLUST_PURE_PYTHON`` is set.  All
inputs are contiguous arrays with int64 index types and float64 data.
"""

from __future__ import annotations

import numpy as np


def csr_row_ids(indptr: np.ndarray) -> np.ndarray:
    """Expand a CSR index pointer into one row id per stored entry."""
    counts = np.diff(indptr)
    return np.repeat(np.arange(len(counts), dtype=np.int64), counts)


def mutual_adjacency(
    out_indptr: np.ndarray,
    out_indices: np.ndarray,
    in_indptr: np.ndarray,
    in_indices: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Extract the symmetric adjacency of mutual dyads in CSR form.

    j is a mutual partner of i iff the edges (i, j) and (j, i) are both
    present, i.e. j appears in both the out- and in-neighbor list of i.
    """
    n = len(out_indptr) - 1
    rows = csr_row_ids(out_indptr)
    keys = rows * n + out_indices
    in_rows = csr_row_ids(in_indptr)
    reverse_keys = in_rows * n + in_indices
    # Edge (i, j) is mutual iff (j, i) exists, i.e. key i*n+j appears among
    # the in-edge keys i*n+j built from (j -> i).
    mask = np.isin(keys, reverse_keys, assume_unique=True)
    m_indices = out_indices[mask]
    m_counts = np.bincount(rows[mask], minlength=n)
    m_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(m_counts, out=m_indptr[1:])
    return m_indptr, np.ascontiguousarray(m_indices)


def csr_matvec(indptr: np.ndarray, indices: np.ndarray, x: np.ndarray) -> np.ndarray:
    """y = A x for a 0/1 CSR pattern (no stored values)."""
    n = len(indptr) - 1
    if len(indices) == 0:
        return np.zeros(n)
    return np.bincount(csr_row_ids(indptr), weights=x[indices], minlength=n)


def lt_matvec(
    indptr: np.ndarray,
    indices: np.ndarray,
    dt_diag: np.ndarray,
    d: np.ndarray,
    scale: float,
    x: np.ndarray,
) -> np.ndarray:
    """Apply the tendency Laplacian without materializing it.

    y = D_T x - M x + scale * (d (d.x) - d^2 * x), where M is the mutual
    adjacency given as a CSR pattern and d the out-degree vector.
    """
    ddx = float(d @ x)
    y = dt_diag * x + scale * (d * ddx - d * d * x)
    y -= csr_matvec(indptr, indices, x)
    return y


def lloyd_step(
    points: np.ndarray, centers: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """One k-means sweep: assign to nearest center, accumulate sums.

    Returns (labels, per-cluster coordinate sums, per-cluster counts,
    total inertia).
    """
    diffs = points[:, None, :] - centers[None, :, :]
    dists = np.einsum("nkd,nkd->nk", diffs, diffs)
    labels = np.argmin(dists, axis=1).astype(np.int64)
    k, dim = centers.shape
    counts = np.bincount(labels, minlength=k).astype(np.int64)
    sums = np.zeros((k, dim))
    for j in range(dim):
        sums[:, j] = np.bincount(labels, weights=points[:, j], minlength=k)
    inertia = float(dists[np.arange(len(points)), labels].sum())
    return labels, sums, counts, inertia
