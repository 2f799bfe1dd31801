"""Overlapping community extraction by k-clique percolation.

A community is the union of all k-cliques reachable from one another
through adjacency, where two k-cliques are adjacent iff they share k-1
vertices.  Edge weights play no role; an edge either exists or not.

Enumeration runs on the compiled kernel backend (see gevi._kernels);
percolation unions cliques through a (k-1)-subset index, which avoids
the quadratic clique-pair scan.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gevi import _kernels
from gevi.ingest import SlotGraph


@dataclass(frozen=True)
class Group:
    """One community of one slot.  Same-slot groups may overlap."""

    slot_index: int
    ordinal: int
    members: frozenset[str]

    @property
    def label(self) -> str:
        return f"{self.slot_index}_{self.ordinal}"

    @property
    def size(self) -> int:
        return len(self.members)


def _csr_arrays(graph: SlotGraph) -> tuple[np.ndarray, np.ndarray, list[str]]:
    names = sorted(graph.vertices)
    index = {v: i for i, v in enumerate(names)}
    n = len(names)
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for a, b in graph.edges:
        ia, ib = index[a], index[b]
        neighbors[ia].append(ib)
        neighbors[ib].append(ia)
    indptr = np.zeros(n + 1, dtype=np.int64)
    flat: list[int] = []
    for i, nbrs in enumerate(neighbors):
        nbrs.sort()
        flat.extend(nbrs)
        indptr[i + 1] = len(flat)
    return indptr, np.array(flat, dtype=np.int64), names


def enumerate_k_cliques(graph: SlotGraph, k: int) -> set[frozenset[str]]:
    """Every complete subgraph on exactly k vertices."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    if len(graph.vertices) < k:
        return set()
    indptr, indices, names = _csr_arrays(graph)
    rows = _kernels.enumerate_k_cliques_ids(indptr, indices, len(names), k)
    return {frozenset(names[i] for i in row) for row in rows}


def percolate(cliques: set[frozenset[str]], k: int) -> list[frozenset[str]]:
    """Union cliques over connected components of the share-(k-1) relation.

    Returned member sets are sorted by descending size, ties broken by
    the lexicographically smallest sorted member tuple, so ordinals are
    reproducible.
    """
    rows = [tuple(sorted(c)) for c in cliques]
    for row in rows:
        if len(row) != k:
            raise ValueError(f"clique {row} has size {len(row)}, expected {k}")
    rows.sort()

    parent = list(range(len(rows)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    first_seen: dict[tuple[str, ...], int] = {}
    for ci, row in enumerate(rows):
        for drop in range(k):
            key = row[:drop] + row[drop + 1 :]
            prev = first_seen.setdefault(key, ci)
            if prev != ci:
                union(ci, prev)

    components: dict[int, set[str]] = {}
    for ci, row in enumerate(rows):
        components.setdefault(find(ci), set()).update(row)
    communities = [frozenset(members) for members in components.values()]
    communities.sort(key=lambda c: (-len(c), tuple(sorted(c))))
    return communities


def extract_groups(slot_graphs: list[SlotGraph], k: int) -> list[Group]:
    """Communities of every slot, ordinals assigned in percolate order."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    groups = []
    for graph in slot_graphs:
        cliques = enumerate_k_cliques(graph, k)
        for ordinal, members in enumerate(percolate(cliques, k)):
            groups.append(Group(graph.slot.index, ordinal, members))
    return groups
