"""Rounding spectral embeddings into clusters.

The two-cluster case follows the sign rule on the eigenvector for the
smallest deflated eigenvalue; the general case runs K-means on the
n x K eigenvector embedding (rows unnormalized, matching the ratio-cut
formulation).  A small deterministic K-means lives here too so results
are reproducible for a fixed seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .eigen import eigengap_select, smallest_eigenpairs
from .errors import EmptyClusterError, NoTendencyStructureError, OneSidedEmbeddingError
from .graph import Digraph
from .laplacian import build_tendency_operator
from .tendency import average_tendency_report, report_as_dict, trcut


def sign_bipartition(v: np.ndarray) -> np.ndarray:
    """Split by sign: label 0 where v >= 0, label 1 elsewhere.

    Raises :class:`OneSidedEmbeddingError` when every entry falls on one
    side, since that would leave an empty cluster.
    """
    v = np.asarray(v, dtype=np.float64)
    labels = np.where(v >= 0.0, 0, 1).astype(np.int64)
    if labels.min() == labels.max():
        raise OneSidedEmbeddingError(
            "embedding vector is one-signed; no nonempty bipartition", embedding=v
        )
    return labels


def _kmeans_pp_seed(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Distance-squared weighted seeding."""
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    idx = int(rng.integers(n))
    centers[0] = points[idx]
    dists = ((points - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = dists.sum()
        if total <= 0.0:
            # Every point coincides with a chosen center already.
            idx = int(rng.integers(n))
        else:
            r = rng.random() * total
            idx = min(int(np.searchsorted(np.cumsum(dists), r)), n - 1)
        centers[c] = points[idx]
        dists = np.minimum(dists, ((points - centers[c]) ** 2).sum(axis=1))
    return centers


def _repair_empty(points, centers, labels, counts):
    """Give each empty cluster the point farthest from its own center."""
    moved: list[int] = []
    for c in np.where(counts == 0)[0]:
        residual = ((points - centers[labels]) ** 2).sum(axis=1)
        if moved:
            residual[moved] = -np.inf
        donor = int(np.argmax(residual))
        labels[donor] = c
        moved.append(donor)
        counts = np.bincount(labels, minlength=len(counts))
    return labels, counts


def _kmeans_single(points, k, rng, max_iter, rel_tol):
    centers = _kmeans_pp_seed(points, k, rng)
    prev_inertia = np.inf
    labels = np.zeros(len(points), dtype=np.int64)
    for _ in range(max_iter):
        labels, sums, counts, inertia = kernels.lloyd_step(points, centers)
        if np.any(counts == 0):
            labels, counts = _repair_empty(points, centers, labels, counts)
            sums = np.zeros_like(sums)
            for j in range(points.shape[1]):
                sums[:, j] = np.bincount(labels, weights=points[:, j], minlength=k)
            inertia = float(((points - centers[labels]) ** 2).sum())
        centers = sums / np.maximum(counts, 1)[:, None]
        if prev_inertia - inertia <= rel_tol * max(abs(prev_inertia), 1e-30):
            break
        prev_inertia = inertia
    labels, _, counts, inertia = kernels.lloyd_step(points, centers)
    if np.any(counts == 0):
        labels, counts = _repair_empty(points, centers, labels, counts)
        inertia = float(((points - centers[labels]) ** 2).sum())
    return labels, inertia


def kmeans(
    points: np.ndarray,
    k: int,
    *,
    seed: int = 0,
    restarts: int = 20,
    max_iter: int = 300,
    rel_tol: float = 1e-8,
) -> tuple[np.ndarray, float]:
    """Best-of-restarts Lloyd iteration with distance-weighted seeding.

    Deterministic for fixed ``(points, k, seed, restarts)``: each
    restart draws from its own generator spawned from the master seed.
    Empty clusters are repaired by reassigning the farthest point.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")

    streams = np.random.SeedSequence(seed).spawn(restarts)
    best_labels, best_inertia = None, np.inf
    for ss in streams:
        labels, inertia = _kmeans_single(points, k, np.random.default_rng(ss), max_iter, rel_tol)
        if inertia < best_inertia:
            best_labels, best_inertia = labels, inertia
    return best_labels, float(best_inertia)


def adjusted_rand_index(a, b) -> float:
    """Chance-adjusted agreement between two labelings, in [-1, 1]."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("labelings must be 1-d and of equal length")
    n = a.size
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)

    def comb2(x):
        return x * (x - 1) / 2.0

    sum_cells = comb2(table).sum()
    sum_rows = comb2(table.sum(axis=1)).sum()
    sum_cols = comb2(table.sum(axis=0)).sum()
    total = comb2(n)
    expected = sum_rows * sum_cols / total if total > 0 else 0.0
    max_index = (sum_rows + sum_cols) / 2.0
    if max_index == expected:
        return 1.0
    return float((sum_cells - expected) / (max_index - expected))


@dataclass
class ClusterOptions:
    """Knobs for the spectral pipelines."""

    seed: int = 0
    k_max: int | None = None
    tol: float = 1e-8
    max_iter: int = 600
    restarts: int = 20
    kmeans_max_iter: int = 300
    two_cluster_rounding: str = "sign"  # or "kmeans"


@dataclass
class ClusteringResult:
    """Labels plus everything needed to audit how they were produced."""

    labels: np.ndarray
    k: int
    objective: float
    method: str
    seed: int
    eigenvalues: np.ndarray
    residuals: np.ndarray
    embedding: np.ndarray
    tendency_report: dict
    node_labels: np.ndarray = field(repr=False)

    def cluster_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "k": self.k,
            "seed": self.seed,
            "objective": self.objective,
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "residuals": [float(r) for r in self.residuals],
            "cluster_sizes": [int(s) for s in self.cluster_sizes()],
            "labels": {str(nl): int(c) for nl, c in zip(self.node_labels, self.labels)},
            "tendency_report": report_as_dict(self.tendency_report),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def labels_csv(self) -> str:
        lines = ["node,cluster"]
        lines += [f"{nl},{c}" for nl, c in zip(self.node_labels, self.labels)]
        return "\n".join(lines) + "\n"


def _resolve_k(spectrum_vals: np.ndarray, k, k_max: int) -> int:
    if k == "auto" or k is None:
        return eigengap_select(spectrum_vals, k_max)
    k = int(k)
    if k < 2:
        raise ValueError("explicit k must be at least 2")
    return k


def _round_embedding(embedding, k, opts) -> np.ndarray:
    if k == 2 and opts.two_cluster_rounding == "sign":
        return sign_bipartition(embedding[:, 0])
    labels, _ = kmeans(embedding[:, :k], k, seed=opts.seed,
                       restarts=opts.restarts, max_iter=opts.kmeans_max_iter)
    sizes = np.bincount(labels, minlength=k)
    if np.any(sizes == 0):
        raise EmptyClusterError("rounding produced an empty cluster")
    return labels


def tendency_spectral_clustering(
    g: Digraph, k: int | str | None = 2, opts: ClusterOptions | None = None
) -> ClusteringResult:
    """Cluster a digraph by minimizing the tendency ratio cut.

    Builds the implicit tendency Laplacian, solves for the smallest
    deflated eigenpairs, and rounds: sign rule for two clusters,
    K-means on the n x K embedding otherwise.  ``k='auto'`` picks the
    cluster count at the largest eigengap (capped by ``opts.k_max``,
    default min(20, n-1)).

    A graph whose tendency Laplacian is exactly zero (for example a
    complete mutual digraph) has no tendency structure to cut; this is
    reported as :class:`NoTendencyStructureError` instead of an
    arbitrary split.
    """
    opts = opts or ClusterOptions()
    op = build_tendency_operator(g)
    if op.norm_bound() == 0.0:
        raise NoTendencyStructureError(
            "tendency Laplacian is zero; every partition scores the same"
        )

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

    labels = _round_embedding(spectrum.eigenvectors, k_used, opts)
    objective = trcut(g, labels, k_used)
    report = average_tendency_report(g, labels, k_used)
    return ClusteringResult(
        labels=labels,
        k=k_used,
        objective=objective,
        method="tendency",
        seed=opts.seed,
        eigenvalues=spectrum.eigenvalues,
        residuals=spectrum.residuals,
        embedding=spectrum.eigenvectors[:, :k_used],
        tendency_report=report,
        node_labels=g.node_labels,
    )
