"""Implicit tendency Laplacian.

The tendency matrix T has entries theta(i, j) off the diagonal: the
mutual adjacency M minus the rank-one chance term d d^T / (n-1)^2 (with
a zero diagonal).  The Laplacian L = D_T - T, with D_T the diagonal of
T's row sums, is symmetric but in general indefinite.

Nothing dense is ever built on the main path: the chance term acts as a
rank-one update, so applying L costs O(nnz(M) + n).  A dense
materialization exists under a size cap for tests and small graphs.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import SizeCapExceededError
from .graph import Digraph


class TendencyOperator:
    """Matvec-ready representation of the tendency Laplacian.

    Attributes
    ----------
    n : node count
    mutual_indptr, mutual_indices : CSR pattern of the mutual adjacency
    d : float out-degree vector
    d_sum : total out-degree
    dt_diag : row sums of T (the Laplacian diagonal)
    scale : 1 / (n-1)^2
    """

    def __init__(self, g: Digraph):
        if g.n < 2:
            raise ValueError("tendency operator needs at least two nodes")
        self.n = g.n
        self.mutual_indptr, self.mutual_indices = g.mutual_csr
        self.d = g.out_degree.astype(np.float64)
        self.d_sum = float(self.d.sum())
        self.scale = 1.0 / (g.n - 1) ** 2

        # T is identically zero exactly when every out-degree is 0 or
        # n-1: then each chance term d_i d_j / (n-1)^2 is 0 or 1 and
        # coincides with the mutual indicator.  Detect this in integer
        # arithmetic so saturated graphs do not leave rounding residue.
        self.is_zero = bool(np.all((g.out_degree == 0) | (g.out_degree == g.n - 1)))

        mutual_deg = g.mutual_degree.astype(np.float64)
        if self.is_zero:
            self.dt_diag = np.zeros(self.n)
            self._abs_row_sum = np.zeros(self.n)
        else:
            self.dt_diag = mutual_deg - self.d * (self.d_sum - self.d) * self.scale
            # Gershgorin data: sum_j |T_ij| per row.  Mutual entries are
            # 1 - d_i d_j s (nonnegative since d <= n-1), the rest d_i d_j s.
            rows = kernels.csr_row_ids(self.mutual_indptr)
            mutual_dsum = np.bincount(
                rows, weights=self.d[self.mutual_indices], minlength=self.n
            )
            self._abs_row_sum = (
                mutual_deg
                + self.scale * self.d * (self.d_sum - self.d - 2.0 * mutual_dsum)
            )
        for arr in (self.d, self.dt_diag, self._abs_row_sum):
            arr.setflags(write=False)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Apply the Laplacian: L x."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"expected a vector of length {self.n}, got shape {x.shape}")
        if self.is_zero:
            return np.zeros(self.n)
        return kernels.lt_matvec(
            self.mutual_indptr, self.mutual_indices, self.dt_diag, self.d, self.scale,
            np.ascontiguousarray(x),
        )

    def bilinear(self, x: np.ndarray) -> float:
        """x^T L x; equals sum over dyads of T_ij (x_i - x_j)^2."""
        x = np.asarray(x, dtype=np.float64)
        return float(x @ self.matvec(x))

    def norm_bound(self) -> float:
        """Infinity-norm bound on L; zero iff the operator is zero."""
        return float(np.max(np.abs(self.dt_diag) + self._abs_row_sum, initial=0.0))

    def shift_upper(self) -> float:
        """Gershgorin upper bound on the largest eigenvalue."""
        return float(np.max(self.dt_diag + self._abs_row_sum, initial=0.0))


def build_tendency_operator(g: Digraph) -> TendencyOperator:
    return TendencyOperator(g)


def dense_tendency_matrix(g: Digraph, max_n: int = 2000) -> np.ndarray:
    """Dense T for small graphs: M - d d^T s with a zero diagonal."""
    if g.n > max_n:
        raise SizeCapExceededError(f"dense tendency matrix capped at n={max_n}, got {g.n}")
    d = g.out_degree.astype(np.float64)
    t = -np.outer(d, d) / (g.n - 1) ** 2
    np.fill_diagonal(t, 0.0)
    m_indptr, m_indices = g.mutual_csr
    rows = kernels.csr_row_ids(m_indptr)
    t[rows, m_indices] += 1.0
    return t


def dense_tendency_laplacian(g: Digraph, max_n: int = 2000) -> np.ndarray:
    """Dense L = D_T - T, for oracles and small-n paths."""
    t = dense_tendency_matrix(g, max_n=max_n)
    lap = -t
    np.fill_diagonal(lap, t.sum(axis=1))
    return lap


def bilinear_form(op: TendencyOperator, x: np.ndarray) -> float:
    return op.bilinear(x)
