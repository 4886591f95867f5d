"""Brute-force reference implementations used only by tests.

Everything here is written with explicit loops or direct dense-matrix
formulas so it stays independent of the library's optimized paths.
"""

from __future__ import annotations

import itertools

import numpy as np


def dense_adjacency(g) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i in range(g.n):
        for j in g.out_neighbors(i):
            a[i, j] = 1.0
    return a


def census_by_trace(a: np.ndarray) -> tuple[int, int, int]:
    n = a.shape[0]
    n_dyads = n * (n - 1) // 2
    m = int(round(np.trace(a @ a) / 2))
    b = int(round(np.trace(a @ a.T) - np.trace(a @ a)))
    u = n_dyads - m - b
    return m, b, u


def theta_matrix(a: np.ndarray) -> np.ndarray:
    """Pairwise tendency values by the direct formula, zero diagonal."""
    n = a.shape[0]
    d = a.sum(axis=1)
    t = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            mutual = 1.0 if (a[i, j] == 1 and a[j, i] == 1) else 0.0
            t[i, j] = mutual - d[i] * d[j] / (n - 1) ** 2
    return t


def theta_sum_within(theta: np.ndarray, members: np.ndarray) -> float:
    total = 0.0
    idx = np.where(members)[0]
    for a_i, b_i in itertools.combinations(idx, 2):
        total += theta[a_i, b_i]
    return total


def theta_sum_across(theta: np.ndarray, members: np.ndarray) -> float:
    total = 0.0
    inside = np.where(members)[0]
    outside = np.where(~members)[0]
    for i in inside:
        for j in outside:
            total += theta[i, j]
    return total / 1.0


def dense_tendency_laplacian(a: np.ndarray) -> np.ndarray:
    t = theta_matrix(a)
    lap = -t
    np.fill_diagonal(lap, t.sum(axis=1))
    return lap


def bilinear_pairwise(theta: np.ndarray, x: np.ndarray) -> float:
    n = len(x)
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            total += theta[i, j] * (x[i] - x[j]) ** 2
    return total


def scc_by_reachability(a: np.ndarray) -> np.ndarray:
    """Component labels from the boolean transitive closure."""
    n = a.shape[0]
    reach = a.astype(bool) | np.eye(n, dtype=bool)
    for _ in range(n):
        nxt = reach | (reach @ reach)
        if np.array_equal(nxt, reach):
            break
        reach = nxt
    same = reach & reach.T
    labels = np.full(n, -1)
    comp = 0
    for i in range(n):
        if labels[i] == -1:
            labels[same[i]] = comp
            comp += 1
    return labels


def same_partition(x: np.ndarray, y: np.ndarray) -> bool:
    """True when two labelings induce identical partitions."""
    pairs_x = {(i, j): x[i] == x[j] for i in range(len(x)) for j in range(i + 1, len(x))}
    pairs_y = {(i, j): y[i] == y[j] for i in range(len(y)) for j in range(i + 1, len(y))}
    return pairs_x == pairs_y


def rcut_pairwise(w: np.ndarray, labels: np.ndarray) -> float:
    k = labels.max() + 1
    total = 0.0
    for c in range(k):
        cut = 0.0
        for i in range(len(labels)):
            for j in range(len(labels)):
                if labels[i] == c and labels[j] != c:
                    cut += w[i, j]
        total += cut / np.sum(labels == c)
    return total


def trcut_pairwise(theta: np.ndarray, labels: np.ndarray) -> float:
    k = labels.max() + 1
    total = 0.0
    for c in range(k):
        members = labels == c
        total += theta_sum_across(theta, members) / members.sum()
    return total


def best_inertia_exhaustive(points: np.ndarray, k: int) -> float:
    """Globally optimal k-means inertia by assignment enumeration."""
    n = len(points)
    best = np.inf
    for assignment in itertools.product(range(k), repeat=n):
        labels = np.array(assignment)
        inertia = 0.0
        for c in range(k):
            members = points[labels == c]
            if len(members) == 0:
                continue
            center = members.mean(axis=0)
            inertia += ((members - center) ** 2).sum()
        best = min(best, inertia)
    return best


def ari_pair_counting(x: np.ndarray, y: np.ndarray) -> float:
    """ARI via the pair-confusion route (independent of contingency sums)."""
    n = len(x)
    both = neither = only_x = only_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            sx = x[i] == x[j]
            sy = y[i] == y[j]
            if sx and sy:
                both += 1
            elif sx:
                only_x += 1
            elif sy:
                only_y += 1
            else:
                neither += 1
    total = both + neither + only_x + only_y
    index = both
    expected = (both + only_x) * (both + only_y) / total
    max_index = ((both + only_x) + (both + only_y)) / 2
    if max_index == expected:
        return 1.0
    return (index - expected) / (max_index - expected)


def random_digraph(rng: np.random.Generator, n: int, p: float) -> list[tuple[int, int]]:
    """Edge list of a directed G(n, p) without self-loops."""
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                edges.append((i, j))
    return edges
