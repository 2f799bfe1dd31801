"""Layered drawing of one evolution hierarchy.

Layers are preassigned: a group's layer is its slot index, so the usual
cycle-removal stage does not exist here (the dynamics graph is acyclic
and every edge points one slot forward).  Edges that would span several
layers are routed through dummy vertices so that every drawn segment
crosses exactly one layer gap; crossing reduction then runs alternating
median sweeps and keeps the best ordering it has seen; coordinates come
from a priority pass that straightens dummy chains while preserving
within-layer order with a minimum gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from gevi import _kernels
from gevi.cpm import Group
from gevi.evolution import Transition


@dataclass
class LayoutMetrics:
    """Abstract drawing units; pixel mapping is the renderer's concern."""

    layer_gap: float = 160.0
    node_gap: float = 60.0


@dataclass
class LayeredNode:
    id: str
    layer: int
    order: int = 0
    is_dummy: bool = False
    x: float = 0.0
    y: float = 0.0


@dataclass
class Segment:
    """One drawn edge; always spans exactly one layer gap."""

    src: str
    dst: str
    style: str
    transition: Transition | None = None


@dataclass
class LayeredGraph:
    hierarchy_id: int
    nodes: dict[str, LayeredNode] = field(default_factory=dict)
    layer_order: dict[int, list[str]] = field(default_factory=dict)
    segments: list[Segment] = field(default_factory=list)

    def layers(self) -> list[int]:
        return sorted(self.layer_order)


@dataclass
class PositionedGraph:
    hierarchy_id: int
    nodes: list[LayeredNode]
    edges: list[Segment]
    crossings: int


class LayerStructureError(ValueError):
    """Raised when an edge stays within a single layer."""


def _edge_style(transition: Transition | None) -> str:
    return "dashed" if transition is not None and transition.dashed else "solid"


def assign_layers(
    hierarchy_id: int,
    groups: list[Group],
    transitions: list[Transition],
) -> LayeredGraph:
    """Build the layered graph for one weakly connected component.

    Real nodes keep group labels; an edge spanning g > 1 layers becomes a
    chain through g-1 dummy nodes, one per intermediate layer.
    """
    layered = LayeredGraph(hierarchy_id)
    for g in sorted(groups, key=lambda g: (g.slot_index, g.ordinal)):
        layered.nodes[g.label] = LayeredNode(id=g.label, layer=g.slot_index)
        layered.layer_order.setdefault(g.slot_index, []).append(g.label)

    for t in transitions:
        src, dst = t.src.label, t.dst.label
        span = t.dst.slot_index - t.src.slot_index
        if span == 0:
            raise LayerStructureError(f"edge {src} -> {dst} stays in one layer")
        if span < 0:
            src, dst = dst, src
            span = -span
        style = _edge_style(t)
        prev = src
        base_layer = layered.nodes[src].layer
        for step in range(1, span):
            layer = base_layer + step
            dummy_id = f"dummy:{src}:{dst}:{layer}"
            layered.nodes[dummy_id] = LayeredNode(id=dummy_id, layer=layer, is_dummy=True)
            layered.layer_order.setdefault(layer, []).append(dummy_id)
            layered.segments.append(Segment(prev, dummy_id, style, t))
            prev = dummy_id
        layered.segments.append(Segment(prev, dst, style, t))

    for layer, ids in layered.layer_order.items():
        for pos, node_id in enumerate(ids):
            layered.nodes[node_id].order = pos
    return layered


def count_crossings(layered: LayeredGraph) -> int:
    """Pairs of segments between adjacent layers whose endpoints interleave."""
    by_gap: dict[int, list[tuple[int, int]]] = {}
    for seg in layered.segments:
        lo = layered.nodes[seg.src]
        hi = layered.nodes[seg.dst]
        if lo.layer > hi.layer:
            lo, hi = hi, lo
        by_gap.setdefault(lo.layer, []).append((lo.order, hi.order))
    total = 0
    for pairs in by_gap.values():
        if len(pairs) < 2:
            continue
        up = np.array([p[0] for p in pairs], dtype=np.int64)
        down = np.array([p[1] for p in pairs], dtype=np.int64)
        # sorted by (up, down), crossings = strict inversions in down
        order = np.lexsort((down, up))
        total += _kernels.count_inversions(down[order])
    return total


def _median_key(positions: list[int]) -> float:
    ordered = sorted(positions)
    mid = len(ordered) // 2
    if len(ordered) % 2 == 1:
        return float(ordered[mid])
    return (ordered[mid - 1] + ordered[mid]) / 2.0


def _sweep(layered: LayeredGraph, downward: bool) -> None:
    neighbors: dict[str, list[str]] = {}
    for seg in layered.segments:
        lo, hi = seg.src, seg.dst
        if layered.nodes[lo].layer > layered.nodes[hi].layer:
            lo, hi = hi, lo
        if downward:
            neighbors.setdefault(hi, []).append(lo)
        else:
            neighbors.setdefault(lo, []).append(hi)

    layers = layered.layers()
    scan = layers[1:] if downward else layers[-2::-1]
    for layer in scan:
        ids = layered.layer_order[layer]
        keys = {}
        for node_id in ids:
            nbrs = neighbors.get(node_id, [])
            if nbrs:
                keys[node_id] = _median_key([layered.nodes[n].order for n in nbrs])
            else:
                keys[node_id] = float(layered.nodes[node_id].order)
        ids.sort(key=keys.__getitem__)  # stable: ties keep prior order
        for pos, node_id in enumerate(ids):
            layered.nodes[node_id].order = pos


def _snapshot(layered: LayeredGraph) -> dict[int, list[str]]:
    return {layer: list(ids) for layer, ids in layered.layer_order.items()}


def _restore(layered: LayeredGraph, snapshot: dict[int, list[str]]) -> None:
    for layer, ids in snapshot.items():
        layered.layer_order[layer] = list(ids)
        for pos, node_id in enumerate(ids):
            layered.nodes[node_id].order = pos


def reduce_crossings(layered: LayeredGraph, sweeps: int = 4) -> dict[int, list[str]]:
    """Alternating down/up median sweeps, early exit when a full pass
    brings no improvement; the best ordering seen wins."""
    best = _snapshot(layered)
    best_crossings = count_crossings(layered)
    for _ in range(sweeps):
        improved = False
        for downward in (True, False):
            _sweep(layered, downward)
            crossings = count_crossings(layered)
            if crossings < best_crossings:
                best_crossings = crossings
                best = _snapshot(layered)
                improved = True
        if not improved or best_crossings == 0:
            break
    _restore(layered, best)
    return best


def _priority_pass(
    layered: LayeredGraph,
    metrics: LayoutMetrics,
    mode: str,
) -> None:
    down_nbrs: dict[str, list[str]] = {}
    up_nbrs: dict[str, list[str]] = {}
    for seg in layered.segments:
        lo, hi = seg.src, seg.dst
        if layered.nodes[lo].layer > layered.nodes[hi].layer:
            lo, hi = hi, lo
        down_nbrs.setdefault(hi, []).append(lo)
        up_nbrs.setdefault(lo, []).append(hi)

    layers = layered.layers()
    scan = layers[1:] if mode != "up" else layers[-2::-1]
    for layer in scan:
        ids = layered.layer_order[layer]
        ys = [layered.nodes[n].y for n in ids]

        def fixed_side(node_id: str) -> list[str]:
            if mode == "down":
                return down_nbrs.get(node_id, [])
            if mode == "up":
                return up_nbrs.get(node_id, [])
            return down_nbrs.get(node_id, []) + up_nbrs.get(node_id, [])

        priorities = []
        for node_id in ids:
            node = layered.nodes[node_id]
            degree = len(down_nbrs.get(node_id, [])) + len(up_nbrs.get(node_id, []))
            priorities.append(10**9 if node.is_dummy else degree)

        for i in sorted(range(len(ids)), key=lambda i: -priorities[i]):
            nbrs = fixed_side(ids[i])
            if not nbrs:
                continue
            desired = _median_key_float([layered.nodes[n].y for n in nbrs])
            gap = metrics.node_gap
            if desired > ys[i]:
                limit = float("inf")
                for j in range(i + 1, len(ids)):
                    if priorities[j] >= priorities[i]:
                        limit = ys[j] - gap * (j - i)
                        break
                ys[i] = max(ys[i], min(desired, limit))
                for j in range(i + 1, len(ids)):
                    if ys[j] - ys[j - 1] < gap:
                        ys[j] = ys[j - 1] + gap
                    else:
                        break
            elif desired < ys[i]:
                limit = float("-inf")
                for j in range(i - 1, -1, -1):
                    if priorities[j] >= priorities[i]:
                        limit = ys[j] + gap * (i - j)
                        break
                ys[i] = min(ys[i], max(desired, limit))
                for j in range(i - 1, -1, -1):
                    if ys[j + 1] - ys[j] < gap:
                        ys[j] = ys[j + 1] - gap
                    else:
                        break
        for node_id, y in zip(ids, ys):
            layered.nodes[node_id].y = y


def _median_key_float(values: list[float]) -> float:
    ordered = sorted(values)
    mid = len(ordered) // 2
    if len(ordered) % 2 == 1:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2.0


def assign_coordinates(
    layered: LayeredGraph, metrics: LayoutMetrics | None = None
) -> PositionedGraph:
    """x follows the layer (time flows left to right); y starts at the
    final ordering and is straightened by priority passes that never
    reorder a layer or close a gap below node_gap."""
    metrics = metrics or LayoutMetrics()
    for node in layered.nodes.values():
        node.x = node.layer * metrics.layer_gap
        node.y = node.order * metrics.node_gap
    for mode in ("down", "up", "both"):
        _priority_pass(layered, metrics, mode)
    nodes = sorted(layered.nodes.values(), key=lambda n: (n.layer, n.order))
    return PositionedGraph(
        hierarchy_id=layered.hierarchy_id,
        nodes=nodes,
        edges=list(layered.segments),
        crossings=count_crossings(layered),
    )


def layout_hierarchy(
    hierarchy_id: int,
    groups: list[Group],
    transitions: list[Transition],
    metrics: LayoutMetrics | None = None,
    sweeps: int = 4,
) -> PositionedGraph:
    layered = assign_layers(hierarchy_id, groups, transitions)
    reduce_crossings(layered, sweeps=sweeps)
    return assign_coordinates(layered, metrics)
