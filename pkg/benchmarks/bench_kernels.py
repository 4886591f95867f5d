#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallbacks.

Times the three hot kernels (mutual-dyad extraction, tendency-Laplacian
matvec, k-means Lloyd sweep) on synthetic graphs of increasing size,
plus the end-to-end clustering pipeline under each backend.

Usage:
    python benchmarks/bench_kernels.py [--scales 1 2 4] [--repeats 5]
"""

import argparse
import time

import numpy as np

import mutclust as mc
from mutclust import kernels
from mutclust.laplacian import build_tendency_operator
from mutclust.synth import SyntheticSpec, generate_planted


def timeit(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def scaled_spec(scale: int) -> SyntheticSpec:
    return SyntheticSpec(
        cluster_sizes=(600 * scale, 400 * scale),
        n_mutual_dyads=6333 * scale * scale,
        n_oneway_edges=25334 * scale * scale,
        frac_mutual_within=0.935,
        frac_oneway_across=0.808,
        seed=0,
    )


def bench_graph(scale: int, repeats: int, backends: dict) -> None:
    g, _ = generate_planted(scaled_spec(scale))
    op = build_tendency_operator(g)
    x = np.random.default_rng(0).standard_normal(g.n)
    points = np.random.default_rng(1).standard_normal((g.n, 4))
    centers = points[:8].copy()

    print(f"\nn={g.n}, edges={g.n_edges}, mutual nnz={len(op.mutual_indices)}")
    header = f"{'kernel':<18}" + "".join(f"{name:>14}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)

    cases = {
        "mutual_adjacency": lambda impl: impl.mutual_adjacency(
            g.out_indptr, g.out_indices, g.in_indptr, g.in_indices
        ),
        "lt_matvec": lambda impl: impl.lt_matvec(
            op.mutual_indptr, op.mutual_indices, op.dt_diag, op.d, op.scale, x
        ),
        "lloyd_step": lambda impl: impl.lloyd_step(points, centers),
    }
    for name, call in cases.items():
        times = {bname: timeit(lambda: call(impl), repeats) for bname, impl in backends.items()}
        row = f"{name:<18}" + "".join(f"{t * 1e3:>12.2f}ms" for t in times.values())
        if "compiled" in times and "python" in times:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


def bench_pipeline(scale: int) -> None:
    """Wall time of the whole pipeline under each backend (fresh
    interpreter per backend, since selection happens at import)."""
    import os
    import subprocess
    import sys

    spec = scaled_spec(scale)
    print(f"\nend-to-end tendency clustering (n={spec.n}):", flush=True)
    for pure in ("", "1"):
        env = dict(os.environ)
        env.pop("MUTCLUST_PURE_PYTHON", None)
        if pure:
            env["MUTCLUST_PURE_PYTHON"] = pure
        code = (
            "import time, mutclust as mc\n"
            "from mutclust import kernels\n"
            f"g, _ = mc.generate_planted(mc.SyntheticSpec.from_json('{spec.to_json()}'))\n"
            "t0 = time.perf_counter()\n"
            "mc.tendency_spectral_clustering(g, 2, mc.ClusterOptions(seed=0))\n"
            "print(f'  {kernels.BACKEND:>8}: {time.perf_counter() - t0:.3f}s')\n"
        )
        subprocess.run([sys.executable, "-c", code], env=env, check=True)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scales", type=int, nargs="+", default=[1, 2, 4])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = kernels.available_backends()
    print("available backends:", ", ".join(backends))
    if "compiled" not in backends:
        print("compiled extension not built; timing the fallback only")

    for scale in args.scales:
        bench_graph(scale, args.repeats, backends)
    bench_pipeline(max(args.scales))


if __name__ == "__main__":
    main()
