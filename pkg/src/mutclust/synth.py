"""Planted-partition generator for digraphs with controlled reciprocity.

Budgets are exact: the requested number of mutual dyads and one-way
edges is placed without collisions, with a fixed fraction of the mutual
dyads inside the planted clusters and a fixed fraction of the one-way
edges across them.  The dyad census of a generated graph therefore
reproduces the requested counts exactly, run after run.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace

import numpy as np

from .errors import InfeasibleSpecError, MutclustError
from .graph import Digraph

ALLOCATIONS = ("pair", "size", "cluster")


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of the planted generator.

    ``n_mutual_dyads`` counts bidirectional dyads (each contributes two
    directed edges); ``n_oneway_edges`` counts single directed edges.
    ``allocation`` controls how the within-cluster budget is divided
    among clusters: ``"pair"`` is uniform over all within-cluster node
    pairs (pair-count proportional), ``"size"`` is proportional to
    cluster sizes, ``"cluster"`` gives every cluster an equal share.
    """

    cluster_sizes: tuple[int, ...]
    n_mutual_dyads: int
    n_oneway_edges: int
    frac_mutual_within: float
    frac_oneway_across: float
    seed: int = 0
    allocation: str = "size"

    def __post_init__(self):
        object.__setattr__(self, "cluster_sizes", tuple(int(s) for s in self.cluster_sizes))
        if not self.cluster_sizes or any(s <= 0 for s in self.cluster_sizes):
            raise ValueError("cluster sizes must be positive")
        for name in ("frac_mutual_within", "frac_oneway_across"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.n_mutual_dyads < 0 or self.n_oneway_edges < 0:
            raise ValueError("edge budgets must be nonnegative")
        if self.allocation not in ALLOCATIONS:
            raise ValueError(f"allocation must be one of {ALLOCATIONS}")

    @property
    def n(self) -> int:
        return sum(self.cluster_sizes)

    def to_json(self, **kwargs) -> str:
        return json.dumps(asdict(self), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "SyntheticSpec":
        data = json.loads(text)
        data["cluster_sizes"] = tuple(data["cluster_sizes"])
        return cls(**data)


def paper_two_cluster_spec(seed: int = 0) -> SyntheticSpec:
    """The 1000-node two-cluster benchmark configuration.

    Sizes 600/400; 6333 mutual dyads (12666 bidirectional directed
    edges) with 93.5% placed within clusters; 25334 one-way edges with
    80.8% placed across clusters.  38000 directed edges in total.
    """
    return SyntheticSpec(
        cluster_sizes=(600, 400),
        n_mutual_dyads=6333,
        n_oneway_edges=25334,
        frac_mutual_within=0.935,
        frac_oneway_across=0.808,
        seed=seed,
    )


def paper_three_cluster_spec(seed: int = 0) -> SyntheticSpec:
    """The 1200-node three-cluster benchmark configuration.

    Sizes 500/400/300; 13668 mutual dyads (27336 bidirectional directed
    edges) with 90.02% within; 27339 one-way edges with 89.6% across.
    54675 directed edges in total.
    """
    return SyntheticSpec(
        cluster_sizes=(500, 400, 300),
        n_mutual_dyads=13668,
        n_oneway_edges=27339,
        frac_mutual_within=0.9002,
        frac_oneway_across=0.896,
        seed=seed,
    )


def _decode_triangular(p: np.ndarray, s: int) -> tuple[np.ndarray, np.ndarray]:
    """Map pair ranks in [0, s(s-1)/2) to (i, j) with i < j."""
    p = p.astype(np.float64)
    i = np.floor((2 * s - 1 - np.sqrt((2 * s - 1) ** 2 - 8 * p)) / 2).astype(np.int64)
    base = i * (2 * s - i - 1) // 2
    # Guard against float rounding at row boundaries.
    over = base > p
    i[over] -= 1
    base = i * (2 * s - i - 1) // 2
    under = p >= base + (s - 1 - i)
    i[under] += 1
    base = i * (2 * s - i - 1) // 2
    j = (p - base).astype(np.int64) + i + 1
    return i, j


def _largest_remainder(total: int, weights: np.ndarray, caps: np.ndarray) -> np.ndarray:
    """Deterministic near-proportional integer allocation under caps."""
    caps = caps.astype(np.int64)
    if total > caps.sum():
        raise InfeasibleSpecError(
            f"requested {total} items but only {int(caps.sum())} slots available"
        )
    ideal = total * weights / weights.sum()
    counts = np.minimum(np.floor(ideal).astype(np.int64), caps)
    while counts.sum() < total:
        room = counts < caps
        deficit = np.where(room, ideal - counts, -np.inf)
        counts[int(np.argmax(deficit))] += 1
    return counts


def _hypergeometric_allocation(
    total: int, caps: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Uniform-over-slots allocation: sample pool memberships exactly."""
    caps = caps.astype(np.int64)
    if total > caps.sum():
        raise InfeasibleSpecError(
            f"requested {total} items but only {int(caps.sum())} slots available"
        )
    return rng.multivariate_hypergeometric(caps, total).astype(np.int64)


def generate_planted(spec: SyntheticSpec) -> tuple[Digraph, np.ndarray]:
    """Generate a digraph with the planted reciprocity structure.

    Returns the graph and the planted cluster label per node.  The dyad
    census of the result equals the spec budgets exactly, mutual and
    one-way placements never collide, and a fixed seed reproduces the
    same edge set.
    """
    sizes = np.array(spec.cluster_sizes, dtype=np.int64)
    starts = np.concatenate([[0], np.cumsum(sizes)])
    n = int(sizes.sum())
    k = sizes.size
    rng = np.random.default_rng(spec.seed)

    within_pools = sizes * (sizes - 1) // 2
    pair_a, pair_b = np.triu_indices(k, 1)
    across_pools = sizes[pair_a] * sizes[pair_b]

    mutual_within = int(round(spec.frac_mutual_within * spec.n_mutual_dyads))
    mutual_across = spec.n_mutual_dyads - mutual_within
    oneway_across = int(round(spec.frac_oneway_across * spec.n_oneway_edges))
    oneway_within = spec.n_oneway_edges - oneway_across

    if mutual_within + oneway_within > within_pools.sum():
        raise InfeasibleSpecError(
            f"{mutual_within + oneway_within} within-cluster placements requested "
            f"but only {int(within_pools.sum())} within-cluster pairs exist"
        )
    if mutual_across + oneway_across > across_pools.sum():
        raise InfeasibleSpecError(
            f"{mutual_across + oneway_across} across-cluster placements requested "
            f"but only {int(across_pools.sum())} across-cluster pairs exist"
        )

    if spec.allocation == "pair":
        mutual_per_cluster = _hypergeometric_allocation(mutual_within, within_pools, rng)
        oneway_per_cluster = _hypergeometric_allocation(
            oneway_within, within_pools - mutual_per_cluster, rng
        )
    else:
        weights = sizes.astype(np.float64) if spec.allocation == "size" else np.ones(k)
        mutual_per_cluster = _largest_remainder(mutual_within, weights, within_pools)
        oneway_per_cluster = _largest_remainder(
            oneway_within, weights, within_pools - mutual_per_cluster
        )

    mutual_pairs: list[np.ndarray] = []
    oneway_pairs: list[np.ndarray] = []

    for c in range(k):
        take = int(mutual_per_cluster[c] + oneway_per_cluster[c])
        if take == 0:
            continue
        ranks = rng.choice(int(within_pools[c]), size=take, replace=False)
        i, j = _decode_triangular(ranks, int(sizes[c]))
        pairs = np.column_stack([i, j]) + starts[c]
        mutual_pairs.append(pairs[: mutual_per_cluster[c]])
        oneway_pairs.append(pairs[mutual_per_cluster[c]:])

    mutual_across_pool = _hypergeometric_allocation(mutual_across, across_pools, rng)
    oneway_across_pool = _hypergeometric_allocation(
        oneway_across, across_pools - mutual_across_pool, rng
    )
    for idx in range(pair_a.size):
        take = int(mutual_across_pool[idx] + oneway_across_pool[idx])
        if take == 0:
            continue
        sa, sb = int(sizes[pair_a[idx]]), int(sizes[pair_b[idx]])
        ranks = rng.choice(sa * sb, size=take, replace=False)
        u = starts[pair_a[idx]] + ranks // sb
        v = starts[pair_b[idx]] + ranks % sb
        pairs = np.column_stack([u, v])
        mutual_pairs.append(pairs[: mutual_across_pool[idx]])
        oneway_pairs.append(pairs[mutual_across_pool[idx]:])

    mutual = np.concatenate(mutual_pairs) if mutual_pairs else np.empty((0, 2), dtype=np.int64)
    oneway = np.concatenate(oneway_pairs) if oneway_pairs else np.empty((0, 2), dtype=np.int64)

    flip = rng.random(len(oneway)) < 0.5
    oneway_src = np.where(flip, oneway[:, 1], oneway[:, 0])
    oneway_dst = np.where(flip, oneway[:, 0], oneway[:, 1])

    src = np.concatenate([mutual[:, 0], mutual[:, 1], oneway_src])
    dst = np.concatenate([mutual[:, 1], mutual[:, 0], oneway_dst])
    labels = np.repeat(np.arange(k, dtype=np.int64), sizes)
    return Digraph(n, src, dst), labels


def planted_ari_experiment(
    spec: SyntheticSpec,
    methods: list[str],
    repeats: int = 10,
    master_seed: int = 0,
    k: int | str | None = None,
) -> dict:
    """Score clustering methods against the planted labels.

    ``methods`` entries are ``"tendency"`` or ``"baseline:<kind>"``.
    ``k`` defaults to the planted cluster count; ``"auto"`` exercises
    eigengap selection.  Each repeat regenerates the graph with a seed
    derived from ``master_seed`` and runs every method on it.
    """
    from .baselines import baseline_spectral_clustering
    from .cluster import ClusterOptions, adjusted_rand_index, tendency_spectral_clustering

    if k is None:
        k = len(spec.cluster_sizes)
    planted_k = len(spec.cluster_sizes)
    results: dict = {
        "spec": json.loads(spec.to_json()),
        "k": k,
        "repeats": repeats,
        "master_seed": master_seed,
        "methods": {},
    }
    for method in methods:
        results["methods"][method] = {"runs": []}

    for r in range(repeats):
        seed = master_seed + r
        g, planted = generate_planted(replace(spec, seed=seed))
        for method in methods:
            opts = ClusterOptions(seed=seed)
            entry: dict = {"seed": seed}
            try:
                if method == "tendency":
                    res = tendency_spectral_clustering(g, k, opts)
                elif method.startswith("baseline:"):
                    res = baseline_spectral_clustering(g, method.split(":", 1)[1], k, opts)
                else:
                    raise ValueError(f"unknown method {method!r}")
                entry["k"] = res.k
                entry["sizes"] = sorted(int(s) for s in res.cluster_sizes())
                entry["objective"] = res.objective
                rep = res.tendency_report
                entry["theta_avgs"] = {
                    "graph": rep["graph"].theta_avg,
                    "clusters": [c.theta_avg for c in rep["clusters"]],
                    "cross": rep["cross"].theta_avg,
                }
                entry["theta_cross_avg"] = rep["cross"].theta_avg
                entry["ari"] = (
                    adjusted_rand_index(planted, res.labels) if planted_k >= 2 else None
                )
            except MutclustError as exc:
                entry["error"] = {"code": exc.code, "message": str(exc)}
            results["methods"][method]["runs"].append(entry)

    for method, block in results["methods"].items():
        runs = block["runs"]
        aris = [run["ari"] for run in runs if run.get("ari") is not None]
        block["ari_mean"] = float(np.mean(aris)) if aris else None
        block["ari_min"] = float(np.min(aris)) if aris else None
        planted_sizes = sorted(spec.cluster_sizes)
        block["exact_size_runs"] = sum(
            1 for run in runs if run.get("sizes") == planted_sizes
        )
        # Average-tendency table in the style of the per-method summary
        # (graph / per-cluster / cross averages over the repeats).
        tabled = [run["theta_avgs"] for run in runs if "theta_avgs" in run]
        if tabled and len({len(t["clusters"]) for t in tabled}) == 1:
            block["theta_table"] = {
                "theta_G": float(np.mean([t["graph"] for t in tabled])),
                "theta_clusters": [
                    (float(np.mean(vals)) if all(v is not None for v in vals) else None)
                    for vals in zip(*(t["clusters"] for t in tabled))
                ],
                "theta_cross": float(np.mean([t["cross"] for t in tabled])),
            }
    return results
