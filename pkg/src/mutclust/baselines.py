"""Classical spectral clustering of digraphs via symmetrization.

Implements the standard conversions of a directed adjacency into a
symmetric affinity: the symmetrized adjacency (A + A^T)/2, the
bibliographic coupling A A^T, the co-citation strength A^T A, the
random-walk circulation construction, and the symmetrized directed
modularity.  These serve as head-to-head baselines for the tendency
pipeline and share its eigensolver and rounding code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .cluster import ClusterOptions, ClusteringResult, _resolve_k, kmeans
from .eigen import MatrixOperator, smallest_eigenpairs
from .errors import (
    AsymmetricInputError,
    ConvergenceError,
    EmptyClusterError,
    SizeCapExceededError,
    StrongConnectivityRequiredError,
)
from .graph import Digraph, strongly_connected_components
from .tendency import _check_partition, average_tendency_report

KINDS = ("average", "bibliographic", "cocitation", "circulation", "modularity")


@dataclass(frozen=True)
class SymmetricAffinity:
    """A symmetric similarity matrix derived from a digraph.

    ``matrix`` is scipy-sparse for the sparse constructions and dense
    for modularity.  All kinds except modularity are entrywise
    nonnegative; for ``circulation`` the matrix is the smoothed
    random-walk affinity whose Laplacian is I - W rather than D - W.
    """

    kind: str
    matrix: object

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def dense(self) -> np.ndarray:
        m = self.matrix
        return m.toarray() if sp.issparse(m) else np.asarray(m)


def stationary_distribution(p: sp.csr_matrix, tol: float = 1e-12, max_iter: int = 200000) -> np.ndarray:
    """Stationary row vector of a row-stochastic matrix by power iteration.

    Iterates the lazy chain (P + I)/2, which has the same stationary
    distribution but is aperiodic, so the iteration converges even on
    periodic graphs such as directed cycles.
    """
    n = p.shape[0]
    pi = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        nxt = 0.5 * (pi @ p + pi)
        nxt = np.asarray(nxt).ravel()
        nxt /= nxt.sum()
        if np.abs(nxt - pi).sum() <= tol:
            return nxt
        pi = nxt
    raise ConvergenceError(f"stationary distribution did not converge within {max_iter} steps")


def symmetrize(
    g: Digraph,
    kind: str,
    *,
    sparse_cap: int = 20000,
    dense_cap: int = 2000,
) -> SymmetricAffinity:
    """Build the named symmetric affinity for a digraph."""
    if kind not in KINDS:
        raise ValueError(f"unknown symmetrization kind {kind!r}; pick one of {KINDS}")
    a = g.to_scipy()

    if kind == "average":
        w = (a + a.T) * 0.5
    elif kind in ("bibliographic", "cocitation"):
        if g.n > sparse_cap:
            raise SizeCapExceededError(
                f"{kind} product capped at n={sparse_cap}, got {g.n}"
            )
        w = a @ a.T if kind == "bibliographic" else a.T @ a
        w = (w + w.T) * 0.5  # exactly symmetric despite rounding
    elif kind == "modularity":
        if g.n > dense_cap:
            raise SizeCapExceededError(f"modularity matrix capped at n={dense_cap}, got {g.n}")
        dout = g.out_degree.astype(np.float64)
        din = g.in_degree.astype(np.float64)
        q = a.toarray() - np.outer(dout, din) / g.n_edges
        w = (q + q.T) * 0.5
    else:  # circulation
        labels = strongly_connected_components(g)
        if labels.max() != 0:
            raise StrongConnectivityRequiredError(
                "circulation symmetrization needs a strongly connected graph"
            )
        dout = g.out_degree.astype(np.float64)
        p = sp.diags(1.0 / dout) @ a
        pi = stationary_distribution(p.tocsr())
        sqrt_pi = np.sqrt(pi)
        half = sp.diags(sqrt_pi) @ p @ sp.diags(1.0 / sqrt_pi)
        w = (half + half.T) * 0.5

    return SymmetricAffinity(kind=kind, matrix=w.tocsr() if sp.issparse(w) else w)


def standard_laplacian(w: SymmetricAffinity):
    """Laplacian of an affinity: D - W, or I - W for the circulation kind."""
    mat = w.matrix
    if sp.issparse(mat):
        defect = abs(mat - mat.T)
        asym = defect.max() if defect.nnz else 0.0
    else:
        asym = float(np.max(np.abs(mat - mat.T), initial=0.0))
    if asym > 1e-12:
        raise AsymmetricInputError(f"affinity asymmetry {asym:.2e} exceeds 1e-12")

    if w.kind == "circulation":
        eye = sp.eye(w.n, format="csr") if sp.issparse(mat) else np.eye(w.n)
        return eye - mat
    if sp.issparse(mat):
        degrees = np.asarray(mat.sum(axis=1)).ravel()
        return sp.diags(degrees) - mat
    degrees = np.asarray(mat).sum(axis=1)
    return np.diag(degrees) - mat


def cut_objectives(w: SymmetricAffinity, labels, k: int | None = None) -> dict:
    """Cut, ratio cut, and normalized cut of a partition under W.

    ``cut`` counts each unordered cross pair once; the ratio and
    normalized variants divide each cluster's boundary weight by its
    size and volume respectively.  ``ncut`` is ``None`` when some
    cluster has zero volume, which leaves it undefined.
    """
    mat = w.matrix
    n = w.n
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (n,):
        raise ValueError("labels must assign one cluster per node")
    if k is None:
        k = int(labels.max()) + 1
    sizes = np.bincount(labels, minlength=k)
    if k < 2:
        raise ValueError("cut objectives need at least two clusters")
    if np.any(sizes == 0):
        raise EmptyClusterError("cut objectives need nonempty clusters")

    if sp.issparse(mat):
        coo = mat.tocoo()
        rows, cols, vals = coo.row, coo.col, coo.data
    else:
        rows, cols = np.nonzero(mat)
        vals = np.asarray(mat)[rows, cols]
    li, lj = labels[rows], labels[cols]
    cross = li != lj
    cut_k = np.bincount(li[cross], weights=vals[cross], minlength=k)

    if sp.issparse(mat):
        degrees = np.asarray(mat.sum(axis=1)).ravel()
    else:
        degrees = np.asarray(mat).sum(axis=1)
    volumes = np.bincount(labels, weights=degrees, minlength=k)
    ncut = None if np.any(volumes <= 0) else float((cut_k / volumes).sum())

    return {
        "cut": float(cut_k.sum()) / 2.0,
        "rcut": float((cut_k / sizes).sum()),
        "ncut": ncut,
    }


def baseline_spectral_clustering(
    g: Digraph,
    kind: str = "average",
    k: int | str | None = 2,
    opts: ClusterOptions | None = None,
) -> ClusteringResult:
    """Symmetrize, take the K smallest deflated Laplacian eigenpairs,
    and round with K-means.  The recorded objective is the ratio cut of
    the partition under the chosen affinity."""
    opts = opts or ClusterOptions()
    affinity = symmetrize(g, kind)
    lap = standard_laplacian(affinity)
    op = MatrixOperator(lap)

    auto = k == "auto" or k is None
    k_max = opts.k_max or min(20, g.n - 1)
    if auto:
        n_pairs = min(k_max, g.n - 1)
        if n_pairs < 3:
            raise ValueError("automatic k needs at least 3 deflated eigenvalues")
    else:
        k = int(k)
        if not 2 <= k <= g.n - 1:
            raise ValueError(f"k must lie in [2, {g.n - 1}], got {k}")
        n_pairs = k

    spectrum = smallest_eigenpairs(
        op, n_pairs, deflate_constant=True, tol=opts.tol,
        max_iter=opts.max_iter, seed=opts.seed,
    )
    k_used = _resolve_k(spectrum.eigenvalues, k, n_pairs) if auto else int(k)

    labels, _ = kmeans(spectrum.eigenvectors[:, :k_used], k_used, seed=opts.seed,
                       restarts=opts.restarts, max_iter=opts.kmeans_max_iter)
    labels, k_used = _check_partition(g, labels, k_used)
    objective = cut_objectives(affinity, labels, k_used)["rcut"]
    report = average_tendency_report(g, labels, k_used)
    return ClusteringResult(
        labels=labels,
        k=k_used,
        objective=objective,
        method=f"baseline:{kind}",
        seed=opts.seed,
        eigenvalues=spectrum.eigenvalues,
        residuals=spectrum.residuals,
        embedding=spectrum.eigenvectors[:, :k_used],
        tendency_report=report,
        node_labels=g.node_labels,
    )
