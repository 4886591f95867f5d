"""Dyadic mutuality statistics.

A dyad is an unordered node pair together with the directed edges
between its endpoints; it is mutual, one-way, or null.  The mutuality
tendency of a dyad compares the observed mutual indicator with its
probability under a random digraph model that preserves out-degrees:

    theta(i, j) = M[i, j] - d_i * d_j / (n - 1)^2

Cluster-level sums use closed forms instead of pair loops, so all
operations stay O(edges + nodes) and remain feasible on graphs with
tens of thousands of nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateScopeError, EmptyClusterError, UndefinedWolfeRhoError
from .graph import Digraph


@dataclass(frozen=True)
class DyadCensus:
    """Counts of mutual, one-way, and null dyads."""

    m: int
    b: int
    u: int
    n_dyads: int

    def as_dict(self) -> dict:
        return {"m": self.m, "b": self.b, "u": self.u, "n_dyads": self.n_dyads}


@dataclass(frozen=True)
class TendencyStats:
    """Raw tendency sum over a scope, plus its per-dyad average.

    ``theta_avg`` is ``None`` when the scope holds no dyads (for
    example a singleton cluster).
    """

    theta_total: float
    n_pairs: int
    theta_avg: float | None

    @classmethod
    def from_total(cls, theta_total: float, n_pairs: int) -> "TendencyStats":
        avg = theta_total / n_pairs if n_pairs > 0 else None
        return cls(theta_total=float(theta_total), n_pairs=int(n_pairs), theta_avg=avg)

    def as_dict(self) -> dict:
        return {
            "theta_total": self.theta_total,
            "n_pairs": self.n_pairs,
            "theta_avg": self.theta_avg,
        }


def dyad_census(g: Digraph) -> DyadCensus:
    """Exact mutual/one-way/null dyad counts in O(edges).

    Equivalent to the adjacency-trace formulas m = tr(A A) / 2,
    b = |E| - 2 m, u = n(n-1)/2 - m - b, but computed from sorted
    neighbor intersections.
    """
    n_dyads = g.n * (g.n - 1) // 2
    m = int(g.mutual_degree.sum()) // 2
    b = g.n_edges - 2 * m
    return DyadCensus(m=m, b=b, u=n_dyads - m - b, n_dyads=n_dyads)


def wolfe_rho(p_joint: float, p_ij: float, p_ji: float) -> float:
    """Wolfe's reciprocity index from a joint and two marginals.

    rho = (P(X_ij, X_ji) - P(X_ij) P(X_ji)) / (P(X_ij) P(not X_ji)).
    Zero means chance-level reciprocation, one means certain
    reciprocation.  The index is asymmetric in its arguments.
    """
    for name, p in (("p_joint", p_joint), ("p_ij", p_ij), ("p_ji", p_ji)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {p}")
    denom = p_ij * (1.0 - p_ji)
    if denom == 0.0:
        raise UndefinedWolfeRhoError(
            f"rho undefined: P(X_ij) * P(not X_ji) = {p_ij} * {1.0 - p_ji} = 0"
        )
    return (p_joint - p_ij * p_ji) / denom


def wolfe_rho_graph(g: Digraph, i: int, j: int) -> float:
    """Plug-in evaluation of Wolfe's rho on an observed graph.

    Uses the observed mutual indicator as the joint and the
    degree-based model marginals d/(n-1).  Because the joint is observed
    rather than model-consistent, the result can exceed 1.
    """
    if i == j:
        raise ValueError("rho is defined for distinct nodes")
    joint = 1.0 if (g.has_edge(i, j) and g.has_edge(j, i)) else 0.0
    scale = g.n - 1
    return wolfe_rho(joint, g.out_degree[i] / scale, g.out_degree[j] / scale)


def dyad_tendency(g: Digraph, i: int, j: int) -> float:
    """Symmetric mutuality tendency of the dyad {i, j}, in [-1, 1]."""
    if i == j:
        raise ValueError("a dyad needs two distinct nodes")
    observed = 1.0 if (g.has_edge(i, j) and g.has_edge(j, i)) else 0.0
    expected = g.out_degree[i] * g.out_degree[j] / (g.n - 1) ** 2
    return observed - expected


def _as_mask(g: Digraph, s) -> np.ndarray:
    s = np.asarray(list(s) if not isinstance(s, np.ndarray) else s)
    if s.dtype == bool:
        if s.shape != (g.n,):
            raise ValueError("boolean mask must have length n")
        return s
    mask = np.zeros(g.n, dtype=bool)
    if s.size and (s.min() < 0 or s.max() >= g.n):
        raise ValueError("node set contains ids outside the graph")
    mask[s.astype(np.int64)] = True
    return mask


def _mutual_within(g: Digraph, mask: np.ndarray) -> int:
    """Observed mutual dyads with both endpoints in the mask."""
    _, m_indices = g.mutual_csr
    return int((mask[g.mutual_rows] & mask[m_indices]).sum()) // 2


def cluster_tendency(g: Digraph, s) -> TendencyStats:
    """Total mutuality tendency of the dyads inside a node set.

    The expected-mutual term uses the closed form
    (d_S^2 - sum_{i in S} d_i^2) / (2 (n-1)^2), never a pair loop.
    """
    mask = _as_mask(g, s)
    size = int(mask.sum())
    if size == 0:
        raise DegenerateScopeError("cluster is empty")
    d = g.out_degree.astype(np.float64)
    d_s = float(d[mask].sum())
    sq = float((d[mask] ** 2).sum())
    expected = (d_s ** 2 - sq) / (2.0 * (g.n - 1) ** 2)
    observed = _mutual_within(g, mask)
    return TendencyStats.from_total(observed - expected, size * (size - 1) // 2)


def cross_tendency(g: Digraph, s) -> TendencyStats:
    """Total mutuality tendency across a bipartition (S, complement).

    Expected-mutual term is d_S * d_Sbar / (n-1)^2.
    """
    mask = _as_mask(g, s)
    size = int(mask.sum())
    if size == 0 or size == g.n:
        raise DegenerateScopeError("cross tendency needs a proper bipartition")
    d = g.out_degree.astype(np.float64)
    d_s = float(d[mask].sum())
    d_rest = float(d.sum()) - d_s
    expected = d_s * d_rest / (g.n - 1) ** 2

    _, m_indices = g.mutual_csr
    observed = int((mask[g.mutual_rows] != mask[m_indices]).sum()) // 2
    return TendencyStats.from_total(observed - expected, size * (g.n - size))


def graph_tendency(g: Digraph) -> TendencyStats:
    """Mutuality tendency summed over every dyad in the graph."""
    if g.n < 2:
        raise DegenerateScopeError("graph tendency needs at least two nodes")
    return cluster_tendency(g, np.ones(g.n, dtype=bool))


def _check_partition(g: Digraph, labels, k: int | None = None) -> tuple[np.ndarray, int]:
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (g.n,):
        raise ValueError("labels must assign one cluster per node")
    if k is None:
        k = int(labels.max()) + 1 if labels.size else 0
    if labels.min() < 0 or labels.max() >= k:
        raise ValueError(f"labels must lie in 0..{k - 1}")
    sizes = np.bincount(labels, minlength=k)
    if np.any(sizes == 0):
        raise EmptyClusterError(f"clusters {np.where(sizes == 0)[0].tolist()} are empty")
    return labels, k


def trcut(g: Digraph, labels, k: int | None = None) -> float:
    """Tendency ratio cut: sum over clusters of Theta_cross / |S_k|.

    For k = 2 this equals Theta_cross * (1/|S| + 1/|Sbar|).
    """
    labels, k = _check_partition(g, labels, k)
    if k < 2:
        raise ValueError("a cut needs at least two clusters")
    sizes = np.bincount(labels, minlength=k).astype(np.float64)
    d = g.out_degree.astype(np.float64)
    d_sum = float(d.sum())
    d_k = np.bincount(labels, weights=d, minlength=k)
    expected_cross = d_k * (d_sum - d_k) / (g.n - 1) ** 2

    _, m_indices = g.mutual_csr
    li, lj = labels[g.mutual_rows], labels[m_indices]
    cross = li != lj
    # Each cross mutual dyad appears twice in the symmetric pattern and
    # contributes once to each endpoint's cluster; the double count and
    # the dyad/entry factor cancel.
    observed_cross = np.bincount(li[cross], minlength=k).astype(np.float64)
    theta_cross = observed_cross - expected_cross
    return float((theta_cross / sizes).sum())


def average_tendency_report(g: Digraph, labels, k: int | None = None) -> dict:
    """Per-scope tendency table for a partition.

    Keys: ``graph``, ``clusters`` (one entry per cluster id), and
    ``cross`` (all cross-cluster dyads pooled, which for two clusters
    is the bipartition boundary).
    """
    labels, k = _check_partition(g, labels, k)
    whole = graph_tendency(g)
    clusters = [cluster_tendency(g, labels == c) for c in range(k)]
    cross_total = whole.theta_total - sum(c.theta_total for c in clusters)
    cross_pairs = whole.n_pairs - sum(c.n_pairs for c in clusters)
    cross = TendencyStats.from_total(cross_total, cross_pairs)
    return {"graph": whole, "clusters": clusters, "cross": cross}


def report_as_dict(report: dict) -> dict:
    """JSON-ready projection of an average_tendency_report result."""
    return {
        "graph": report["graph"].as_dict(),
        "clusters": [c.as_dict() for c in report["clusters"]],
        "cross": report["cross"].as_dict(),
    }
