"""Directed graph representation and ingestion.

Graphs are simple digraphs (no self-loops, no duplicate edges) stored as
compressed, sorted out- and in-neighbor lists.  Node ids are compacted
to ``0..n-1`` on construction; the original ids are kept in
``node_labels`` so results can be reported against the source data.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .errors import EmptyCoreError, EmptyGraphError, MalformedEdgeLineError


@dataclass(frozen=True)
class IngestStats:
    """What the edge-list loader dropped or merged."""

    lines_read: int
    self_loops_dropped: int
    duplicates_merged: int


@dataclass(frozen=True)
class DegreeProfile:
    out_degree: np.ndarray
    in_degree: np.ndarray
    total_edges: int


class Digraph:
    """Immutable simple directed graph.

    Parameters
    ----------
    n : int
        Node count; edge endpoints must lie in ``range(n)``.
    src, dst : array-like of int
        Directed edges ``src[k] -> dst[k]``.  Self-loops and duplicates
        are rejected here; use :func:`from_edges` or
        :func:`load_edge_list` to clean raw input.
    node_labels : array-like, optional
        Original external id of each node (defaults to ``0..n-1``).
    """

    def __init__(self, n: int, src, dst, node_labels=None, ingest: IngestStats | None = None):
        if n <= 0:
            raise EmptyGraphError("graph has no nodes")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if src.shape != dst.shape or src.ndim != 1:
            raise ValueError("src and dst must be 1-d arrays of equal length")
        if src.size and (src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n):
            raise ValueError("edge endpoint out of range")
        if np.any(src == dst):
            raise ValueError("self-loops are not allowed")

        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        if src.size > 1:
            dup = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
            if np.any(dup):
                raise ValueError("duplicate edges are not allowed")

        self.n = int(n)
        self.out_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=self.out_indptr[1:])
        self.out_indices = np.ascontiguousarray(dst)

        order_in = np.lexsort((src, dst))
        self.in_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(dst, minlength=n), out=self.in_indptr[1:])
        self.in_indices = np.ascontiguousarray(src[order_in])

        if node_labels is None:
            node_labels = np.arange(n, dtype=np.int64)
        self.node_labels = np.asarray(node_labels)
        if self.node_labels.shape != (n,):
            raise ValueError("node_labels must have one entry per node")
        self.ingest = ingest

        for arr in (self.out_indptr, self.out_indices, self.in_indptr,
                    self.in_indices, self.node_labels):
            arr.setflags(write=False)

    @property
    def n_edges(self) -> int:
        return int(self.out_indices.size)

    def out_neighbors(self, i: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[i]:self.out_indptr[i + 1]]

    def in_neighbors(self, i: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[i]:self.in_indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        nb = self.out_neighbors(i)
        k = np.searchsorted(nb, j)
        return k < nb.size and nb[k] == j

    def edge_array(self) -> tuple[np.ndarray, np.ndarray]:
        """All edges as (src, dst) arrays, sorted by (src, dst)."""
        return kernels.csr_row_ids(self.out_indptr), self.out_indices

    @cached_property
    def out_degree(self) -> np.ndarray:
        d = np.diff(self.out_indptr)
        d.setflags(write=False)
        return d

    @cached_property
    def in_degree(self) -> np.ndarray:
        d = np.diff(self.in_indptr)
        d.setflags(write=False)
        return d

    @cached_property
    def mutual_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR pattern of the symmetric mutual-dyad adjacency."""
        m_indptr, m_indices = kernels.mutual_adjacency(
            self.out_indptr, self.out_indices, self.in_indptr, self.in_indices
        )
        m_indptr.setflags(write=False)
        m_indices.setflags(write=False)
        return m_indptr, m_indices

    @cached_property
    def mutual_degree(self) -> np.ndarray:
        d = np.diff(self.mutual_csr[0])
        d.setflags(write=False)
        return d

    @cached_property
    def mutual_rows(self) -> np.ndarray:
        """Row id of each stored mutual-adjacency entry."""
        rows = kernels.csr_row_ids(self.mutual_csr[0])
        rows.setflags(write=False)
        return rows

    def to_scipy(self) -> csr_matrix:
        """0/1 adjacency as a scipy CSR matrix."""
        data = np.ones(self.n_edges, dtype=np.float64)
        return csr_matrix(
            (data, self.out_indices.astype(np.int32), self.out_indptr.astype(np.int32)),
            shape=(self.n, self.n),
        )

    def __repr__(self) -> str:  # pragma: no cover
        return f"Digraph(n={self.n}, edges={self.n_edges})"


def from_edges(
    pairs: Iterable[tuple[int, int]] | np.ndarray,
    *,
    drop_self_loops: bool = True,
    dedupe: bool = True,
    node_labels=None,
    n: int | None = None,
) -> Digraph:
    """Build a Digraph from raw (src, dst) pairs already in 0..n-1."""
    arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs,
                     dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    src, dst = arr[:, 0], arr[:, 1]

    loops = src == dst
    n_loops = int(loops.sum())
    if n_loops:
        if not drop_self_loops:
            raise ValueError(f"{n_loops} self-loops present and drop_self_loops=False")
        src, dst = src[~loops], dst[~loops]

    n_dups = 0
    if src.size:
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        keep = np.ones(src.size, dtype=bool)
        keep[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
        n_dups = int((~keep).sum())
        if n_dups:
            if not dedupe:
                raise ValueError(f"{n_dups} duplicate edges present and dedupe=False")
            src, dst = src[keep], dst[keep]

    if n is None:
        n = int(max(src.max(), dst.max())) + 1 if src.size else 0
    stats = IngestStats(lines_read=len(arr), self_loops_dropped=n_loops,
                        duplicates_merged=n_dups)
    return Digraph(n, src, dst, node_labels=node_labels, ingest=stats)


def load_edge_list(
    source: str | os.PathLike | TextIO | Iterable[str],
    *,
    drop_self_loops: bool = True,
    dedupe: bool = True,
) -> Digraph:
    """Parse a whitespace-separated edge list (SNAP style).

    ``source`` is a file path or any iterable of lines.  Lines starting
    with ``#`` are comments; every other non-blank line must hold
    exactly two integers ``src dst``.  Node ids may be arbitrary
    integers; they are compacted to ``0..n-1`` and retained in
    ``node_labels``.  Self-loops are dropped and duplicate edges merged
    (counted in ``Digraph.ingest``) unless the corresponding flag makes
    them a hard error.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source) as fh:
            return load_edge_list(fh, drop_self_loops=drop_self_loops, dedupe=dedupe)

    srcs: list[int] = []
    dsts: list[int] = []
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedEdgeLineError(line_no, line)
        try:
            srcs.append(int(parts[0]))
            dsts.append(int(parts[1]))
        except ValueError:
            raise MalformedEdgeLineError(line_no, line) from None

    if not srcs:
        raise EmptyGraphError("edge list holds no edges")

    raw_src = np.array(srcs, dtype=np.int64)
    raw_dst = np.array(dsts, dtype=np.int64)
    labels, inverse = np.unique(np.concatenate([raw_src, raw_dst]), return_inverse=True)
    src = inverse[: raw_src.size]
    dst = inverse[raw_src.size:]

    return from_edges(np.column_stack([src, dst]), drop_self_loops=drop_self_loops,
                      dedupe=dedupe, node_labels=labels, n=labels.size)


def write_edge_list(g: Digraph, stream: TextIO, *, original_ids: bool = True) -> None:
    """Serialize back to the same ``src dst`` text format."""
    rows, cols = g.edge_array()
    if original_ids:
        rows = g.node_labels[rows]
        cols = g.node_labels[cols]
    for s, t in zip(rows.tolist(), cols.tolist()):
        stream.write(f"{s} {t}\n")


def degree_profile(g: Digraph) -> DegreeProfile:
    return DegreeProfile(out_degree=g.out_degree.copy(),
                         in_degree=g.in_degree.copy(),
                         total_edges=g.n_edges)


def strongly_connected_components(g: Digraph) -> np.ndarray:
    """Per-node component labels, numbered by decreasing component size.

    Ties are broken by the smallest node index contained in the
    component, which makes the numbering deterministic.
    """
    n_comp, raw = connected_components(g.to_scipy(), directed=True, connection="strong")
    sizes = np.bincount(raw, minlength=n_comp)
    first_node = np.full(n_comp, g.n, dtype=np.int64)
    np.minimum.at(first_node, raw, np.arange(g.n))
    order = np.lexsort((first_node, -sizes))
    rank = np.empty(n_comp, dtype=np.int64)
    rank[order] = np.arange(n_comp)
    return rank[raw]


def induced_subgraph(g: Digraph, keep) -> tuple[Digraph, np.ndarray]:
    """Subgraph on ``keep``, plus the old->new id map (-1 for dropped).

    Edges survive iff both endpoints are kept; ``node_labels`` are
    composed so the subgraph still reports original ids.
    """
    keep_idx = np.unique(np.asarray(list(keep) if not isinstance(keep, np.ndarray) else keep,
                                    dtype=np.int64))
    if keep_idx.size == 0:
        raise EmptyGraphError("keep set is empty")
    if keep_idx[0] < 0 or keep_idx[-1] >= g.n:
        raise ValueError("keep set contains node ids outside the graph")

    mapping = np.full(g.n, -1, dtype=np.int64)
    mapping[keep_idx] = np.arange(keep_idx.size)
    rows, cols = g.edge_array()
    mask = (mapping[rows] >= 0) & (mapping[cols] >= 0)
    sub = Digraph(keep_idx.size, mapping[rows[mask]], mapping[cols[mask]],
                  node_labels=g.node_labels[keep_idx])
    return sub, mapping


def largest_scc(g: Digraph) -> tuple[Digraph, np.ndarray]:
    """Subgraph induced by the largest strongly connected component."""
    labels = strongly_connected_components(g)
    return induced_subgraph(g, np.where(labels == 0)[0])


def extract_core(g: Digraph, threshold: int = 2, mode: str = "either_low") -> Digraph:
    """Drop low-degree nodes in one pass, then take the largest SCC.

    ``mode='either_low'`` removes a node when in-degree <= threshold OR
    out-degree <= threshold; ``'both_low'`` requires both to be low.
    The filter is applied once (no iterative peeling).
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    if mode == "either_low":
        low = (g.in_degree <= threshold) | (g.out_degree <= threshold)
    elif mode == "both_low":
        low = (g.in_degree <= threshold) & (g.out_degree <= threshold)
    else:
        raise ValueError(f"unknown core mode {mode!r}")

    keep = np.where(~low)[0]
    if keep.size == 0:
        raise EmptyCoreError("degree filter removed every node")
    remainder, _ = induced_subgraph(g, keep)
    if remainder.n_edges == 0:
        raise EmptyCoreError("degree filter left no edges")
    core, _ = largest_scc(remainder)
    return core
