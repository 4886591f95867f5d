"""Acceptance suite.

One test per criterion; each prints a [PASS]/[FAIL] line with the
measured numbers before asserting, so a plain ``pytest -s
tests/test_acceptance.py`` doubles as the reproduction report.
"""

import os
import time
from dataclasses import replace

import numpy as np
import pytest

import mutclust as mc

from conftest import make_random_graph
from oracles import (
    bilinear_pairwise,
    census_by_trace,
    dense_adjacency,
    dense_tendency_laplacian,
    theta_matrix,
)

SEEDS = list(range(10))


def _report(criterion: str, ok: bool, detail: str) -> bool:
    print(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    return ok


@pytest.fixture(scope="module")
def two_cluster_runs():
    spec = mc.paper_two_cluster_spec()
    runs = []
    for seed in SEEDS:
        g, planted = mc.generate_planted(replace(spec, seed=seed))
        t0 = time.perf_counter()
        tend = mc.tendency_spectral_clustering(g, 2, mc.ClusterOptions(seed=seed))
        tend_time = time.perf_counter() - t0
        base = mc.baseline_spectral_clustering(g, "average", 2, mc.ClusterOptions(seed=seed))
        runs.append({
            "planted": planted,
            "tendency": tend,
            "baseline": base,
            "tendency_seconds": tend_time,
        })
    return runs


@pytest.fixture(scope="module")
def three_cluster_runs():
    spec = mc.paper_three_cluster_spec()
    runs = []
    for seed in SEEDS:
        g, planted = mc.generate_planted(replace(spec, seed=seed))
        tend = mc.tendency_spectral_clustering(g, "auto", mc.ClusterOptions(seed=seed))
        base = mc.baseline_spectral_clustering(g, "average", 3, mc.ClusterOptions(seed=seed))
        runs.append({"planted": planted, "tendency": tend, "baseline": base})
    return runs


def test_criterion_1_two_cluster_recovery(two_cluster_runs):
    aris = [
        mc.adjusted_rand_index(r["planted"], r["tendency"].labels)
        for r in two_cluster_runs
    ]
    good_ari = sum(1 for a in aris if a >= 0.95)
    exact = sum(
        1 for r in two_cluster_runs
        if sorted(r["tendency"].cluster_sizes().tolist()) == [400, 600]
    )
    slowest = max(r["tendency_seconds"] for r in two_cluster_runs)
    ok = good_ari >= 9 and exact > len(SEEDS) // 2 and slowest <= 60.0
    _report(
        "criterion 1 (two-cluster recovery)",
        ok,
        f"ARI>=0.95 in {good_ari}/10 (min {min(aris):.4f}), exact sizes in "
        f"{exact}/10, slowest run {slowest:.2f}s",
    )
    assert ok


def test_criterion_2_baseline_failure_mode(two_cluster_runs):
    failures = 0
    aris = []
    for r in two_cluster_runs:
        ari = mc.adjusted_rand_index(r["planted"], r["baseline"].labels)
        aris.append(ari)
        sizes = sorted(r["baseline"].cluster_sizes().tolist())
        if ari <= 0.5 and sizes[1] >= 2 * sizes[0]:
            failures += 1
    ok = failures > len(SEEDS) // 2
    _report(
        "criterion 2 (baseline failure mode)",
        ok,
        f"ARI<=0.5 with >=2:1 imbalance in {failures}/10 runs "
        f"(max baseline ARI {max(aris):.4f})",
    )
    assert ok


def test_criterion_3_table_reproduction(two_cluster_runs):
    theta_g, theta_big, theta_small, cross_t, cross_b = [], [], [], [], []
    for r in two_cluster_runs:
        rep = r["tendency"].tendency_report
        sizes = r["tendency"].cluster_sizes()
        big = int(np.argmax(sizes))
        theta_g.append(rep["graph"].theta_avg)
        theta_big.append(rep["clusters"][big].theta_avg)
        theta_small.append(rep["clusters"][1 - big].theta_avg)
        cross_t.append(rep["cross"].theta_avg)
        cross_b.append(r["baseline"].tendency_report["cross"].theta_avg)

    means = {
        "theta_G": (np.mean(theta_g), 0.0112),
        "theta_S": (np.mean(theta_big), 0.0172),
        "theta_Sbar": (np.mean(theta_small), 0.0314),
    }
    in_band = {
        name: abs(got - want) <= 0.15 * want for name, (got, want) in means.items()
    }
    cross_ok = abs(np.mean(cross_t)) <= 1e-3
    baseline_cross_ok = np.mean(cross_b) >= 5e-3
    ok = all(in_band.values()) and cross_ok and baseline_cross_ok
    detail = ", ".join(
        f"{name}={got:.5f} (target {want} +-15%)" for name, (got, want) in means.items()
    )
    _report(
        "criterion 3 (Table I averages)",
        ok,
        detail + f", tendency cross={np.mean(cross_t):.2e} (<=1e-3), "
        f"baseline cross={np.mean(cross_b):.4f} (>=5e-3)",
    )
    assert ok


def test_criterion_4_three_cluster_recovery(three_cluster_runs):
    recovered = 0
    degenerate = 0
    ks = []
    for r in three_cluster_runs:
        res = r["tendency"]
        ks.append(res.k)
        ari = mc.adjusted_rand_index(r["planted"], res.labels)
        if res.k == 3 and ari >= 0.95:
            recovered += 1
        if sorted(r["baseline"].cluster_sizes().tolist())[0] <= 5:
            degenerate += 1
    ok = recovered >= 8 and degenerate > len(SEEDS) // 2
    _report(
        "criterion 4 (three-cluster recovery)",
        ok,
        f"eigengap K choices {sorted(set(ks))}, K=3 with ARI>=0.95 in "
        f"{recovered}/10, baseline degenerate in {degenerate}/10",
    )
    assert ok


def test_criterion_5_property_suite():
    t0 = time.perf_counter()
    rng = np.random.default_rng(777)

    # Census identities and trace equivalence up to n = 200.
    for n in (10, 50, 200):
        g = make_random_graph(rng, n, 12.0 / n)
        census = mc.dyad_census(g)
        assert census.m + census.b + census.u == census.n_dyads
        assert 2 * census.m + census.b == g.n_edges
        assert (census.m, census.b, census.u) == census_by_trace(dense_adjacency(g))

    # Dyad tendency symmetry and range.
    g = make_random_graph(rng, 40, 0.2)
    for i in range(g.n):
        for j in range(i + 1, g.n):
            t = mc.dyad_tendency(g, i, j)
            assert t == mc.dyad_tendency(g, j, i)
            assert -1.0 <= t <= 1.0

    # Decomposition identity on 200 random bipartitions.
    graphs = [make_random_graph(rng, int(rng.integers(8, 60)), 0.15) for _ in range(8)]
    checked = 0
    while checked < 200:
        g = graphs[checked % len(graphs)]
        members = rng.random(g.n) < rng.uniform(0.2, 0.8)
        if members.sum() in (0, g.n):
            continue
        whole = mc.graph_tendency(g).theta_total
        parts = (
            mc.cluster_tendency(g, members).theta_total
            + mc.cluster_tendency(g, ~members).theta_total
            + mc.cross_tendency(g, members).theta_total
        )
        assert abs(parts - whole) <= 1e-12 * max(1.0, abs(whole))
        checked += 1

    # Laplacian identities at n <= 200: annihilation, symmetry, bilinear,
    # Rayleigh-quotient, and implicit-vs-dense matvec agreement.
    for n in (30, 120, 200):
        g = make_random_graph(rng, n, 10.0 / n)
        op = mc.build_tendency_operator(g)
        lap = dense_tendency_laplacian(dense_adjacency(g))
        theta = theta_matrix(dense_adjacency(g))
        assert np.max(np.abs(op.matvec(np.ones(n)))) <= 1e-10
        x, y = rng.standard_normal((2, n))
        assert abs(x @ op.matvec(y) - y @ op.matvec(x)) <= 1e-10 * max(1, abs(x @ op.matvec(y)))
        np.testing.assert_allclose(op.matvec(x), lap @ x, rtol=1e-10, atol=1e-10)
        assert op.bilinear(x) == pytest.approx(bilinear_pairwise(theta, x), rel=1e-10, abs=1e-10)
        members = rng.random(n) < 0.5
        if 0 < members.sum() < n:
            s = members.sum()
            f = np.where(members, np.sqrt((n - s) / s), -np.sqrt(s / (n - s)))
            expected = n * mc.cross_tendency(g, members).theta_total * (1 / s + 1 / (n - s))
            assert op.bilinear(f) == pytest.approx(expected, rel=1e-10, abs=1e-10)

    # Iterative vs dense eigenvalues at n <= 300.
    for n in (60, 300):
        g = make_random_graph(rng, n, 8.0 / n)
        op = mc.build_tendency_operator(g)
        spec = mc.smallest_eigenpairs(op, 4, seed=1)
        oracle = mc.deflated_dense_eig(dense_tendency_laplacian(dense_adjacency(g)))
        np.testing.assert_allclose(spec.eigenvalues, oracle.eigenvalues[:4], atol=1e-6)

    elapsed = time.perf_counter() - t0
    ok = elapsed <= 300.0
    _report(
        "criterion 5 (property suite)",
        ok,
        f"census/tendency/Laplacian/eigen identities all hold, {elapsed:.1f}s (<=300s)",
    )
    assert ok


SLASHDOT = os.environ.get("MUTCLUST_SLASHDOT", "")


@pytest.mark.skipif(not SLASHDOT, reason="set MUTCLUST_SLASHDOT to the edge-list path")
def test_criterion_6_slashdot_integration():
    t0 = time.perf_counter()
    g = mc.load_edge_list(SLASHDOT)
    census = mc.dyad_census(g)
    stats_ok = (
        g.n == 77360
        and g.n_edges == 828161
        and census.b == 110199
        and 2 * census.m == 717962
    )
    scc, _ = mc.largest_scc(g)
    scc_ok = scc.n == 70355 and scc.n_edges == 818310

    core = mc.extract_core(g, threshold=2, mode="either_low")
    core_census = mc.dyad_census(core)
    print(
        f"  core (either_low, t=2): {core.n} nodes, {core.n_edges} edges "
        f"(published: 10131 / 197378; equality not required)"
    )

    t_solve = time.perf_counter()
    tend = mc.tendency_spectral_clustering(core, 2, mc.ClusterOptions(seed=0))
    solve_seconds = time.perf_counter() - t_solve
    sizes = sorted(tend.cluster_sizes().tolist())
    frac_small = sizes[0] / core.n
    split_ok = 0.05 <= frac_small <= 0.25 and solve_seconds <= 600.0

    labels = tend.labels
    rows, cols = core.edge_array()
    cross = labels[rows] != labels[cols]
    m_indptr, m_indices = core.mutual_csr
    m_rows = np.repeat(np.arange(core.n), np.diff(m_indptr))
    mutual_edges = set(zip(m_rows.tolist(), m_indices.tolist()))
    oneway_cross = sum(
        1 for i, j, c in zip(rows.tolist(), cols.tolist(), cross.tolist())
        if c and (i, j) not in mutual_edges
    )
    boundary_share = oneway_cross / max(int(cross.sum()), 1)
    graph_share = core_census.b / core.n_edges
    boundary_ok = boundary_share > graph_share

    base = mc.baseline_spectral_clustering(core, "average", 2, mc.ClusterOptions(seed=0))
    table_ok = (
        tend.tendency_report["cross"].theta_avg
        < base.tendency_report["cross"].theta_avg
    )

    ok = stats_ok and scc_ok and split_ok and boundary_ok and table_ok
    _report(
        "criterion 6 (Slashdot integration)",
        ok,
        f"census={'ok' if stats_ok else 'MISMATCH'}, scc={'ok' if scc_ok else 'MISMATCH'}, "
        f"split {sizes} ({frac_small:.1%} small, {solve_seconds:.0f}s), "
        f"boundary one-way {boundary_share:.1%} vs graph {graph_share:.1%}, "
        f"theta_cross tendency<baseline: {table_ok}; total {time.perf_counter() - t0:.0f}s",
    )
    assert ok
