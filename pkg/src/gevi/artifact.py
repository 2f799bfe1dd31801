"""Artifact documents and their file formats.

Three on-disk formats, all deterministic for identical inputs:

* slots document (``gevi.slots/1``): JSON with the segmented slots,
  per-slot message counts, and per-slot graphs; output of ``ingest``.
* groups file: plain text, one line per group:
  ``slot_index,ordinal,member;member;...``; output of ``detect``.
* evolution artifact (``gevi.artifact/1``): the single self-contained
  JSON document the viewer consumes; grown by ``evolve`` -> ``layout``.

Writes go through a temp file + rename so a partial document can never
appear under the target path.
"""

from __future__ import annotations

import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable

from gevi.analytics import OverlapStats, SizeDistribution, SlotStats
from gevi.cpm import Group
from gevi.evolution import EvolutionGraph, FlowAnnotation, Transition
from gevi.ingest import SlotGraph, TimeSlot, parse_timestamp
from gevi.layout import PositionedGraph

SLOTS_SCHEMA = "gevi.slots/1"
ARTIFACT_SCHEMA = "gevi.artifact/1"


def write_json_atomic(doc: dict, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_json(path: str | Path, schema: str) -> dict:
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict) or doc.get("schema") != schema:
        raise ValueError(f"{path} is not a {schema} document")
    return doc


# --- slots document ---------------------------------------------------------


def slots_document(
    config_echo: dict,
    slots: list[TimeSlot],
    graphs: list[SlotGraph],
    message_counts: list[int],
    ingest_info: dict,
) -> dict:
    return {
        "schema": SLOTS_SCHEMA,
        "config": config_echo,
        "ingest": ingest_info,
        "slots": [
            {
                "index": slot.index,
                "start": slot.start.isoformat(),
                "end": slot.end.isoformat(),
                "message_count": message_counts[i],
            }
            for i, slot in enumerate(slots)
        ],
        "graphs": [
            {
                "slot": g.slot.index,
                "vertices": sorted(g.vertices),
                "edges": [[a, b, w] for (a, b), w in sorted(g.edges.items())],
            }
            for g in graphs
        ],
    }


def load_slots_document(path: str | Path) -> tuple[dict, list[TimeSlot], list[SlotGraph]]:
    doc = _load_json(path, SLOTS_SCHEMA)
    slots = [
        TimeSlot(s["index"], parse_timestamp(s["start"]), parse_timestamp(s["end"]))
        for s in doc["slots"]
    ]
    by_index = {slot.index: slot for slot in slots}
    graphs = []
    for g in doc["graphs"]:
        graph = SlotGraph(by_index[g["slot"]])
        graph.vertices = set(g["vertices"])
        graph.edges = {(a, b): w for a, b, w in g["edges"]}
        graphs.append(graph)
    return doc, slots, graphs


# --- groups file ------------------------------------------------------------


def dump_groups(groups: Iterable[Group]) -> str:
    lines = [
        f"{g.slot_index},{g.ordinal},{';'.join(sorted(g.members))}"
        for g in sorted(groups, key=lambda g: (g.slot_index, g.ordinal))
    ]
    return "\n".join(lines) + ("\n" if lines else "")

def load_groups(path: str | Path) -> list[Group]:
    groups = []
    for line_no, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            slot, ordinal, members = line.split(",", 2)
            groups.append(
                Group(int(slot), int(ordinal), frozenset(members.split(";")))
            )
        except ValueError as exc:
            raise ValueError(f"{path}:{line_no}: bad group line {line!r}") from exc
    return groups


# --- evolution artifact -----------------------------------------------------


def build_artifact(
    config_echo: dict,
    ingest_info: dict,
    slots: list[TimeSlot],
    series: list[SlotStats],
    evolution: EvolutionGraph,
    stable: set[str],
    hierarchy_groups: list[list[Group]],
    flows: dict[str, FlowAnnotation],
    sizes: SizeDistribution,
    overlaps: OverlapStats,
) -> dict:
    hierarchy_of = {}
    for hid, member_groups in enumerate(hierarchy_groups):
        for g in member_groups:
            hierarchy_of[g.label] = hid

    slot_meta = {s.index: s for s in slots}
    groups_out = []
    for g in sorted(evolution.groups, key=lambda g: (g.slot_index, g.ordinal)):
        f = flows[g.label]
        groups_out.append(
            {
                "label": g.label,
                "slot": g.slot_index,
                "ordinal": g.ordinal,
                "size": g.size,
                "members": sorted(g.members),
                "flows": {
                    "inflow": f.inflow,
                    "external_in": f.external_in,
                    "outflow": f.outflow,
                    "external_out": f.external_out,
                },
                "stable": g.label in stable,
                "hierarchy": hierarchy_of[g.label],
                "events": [e.value for e in evolution.node_events.get(g.label, [])],
            }
        )

    transitions_out = [
        {
            "src": t.src.label,
            "dst": t.dst.label,
            "mj": t.mj,
            "stability": t.stability,
            "flow": t.flow,
            "kind": t.kind.value if t.kind else None,
            "style": "dashed" if t.dashed else "solid",
        }
        for t in evolution.transitions
    ]

    hierarchies_out = []
    for hid, member_groups in enumerate(hierarchy_groups):
        labels = [g.label for g in member_groups]
        hierarchies_out.append(
            {
                "id": hid,
                "groups": labels,
                "slot_min": min(g.slot_index for g in member_groups),
                "slot_max": max(g.slot_index for g in member_groups),
                "stable_count": sum(1 for l in labels if l in stable),
            }
        )

    series_out = []
    for entry in series:
        slot = slot_meta[entry.slot]
        series_out.append(
            {
                "slot": entry.slot,
                "start": slot.start.isoformat(),
                "end": slot.end.isoformat(),
                "group_count": entry.group_count,
                "message_count": entry.message_count,
                "stability_mean": entry.stability_mean,
                "stability_std": entry.stability_std,
            }
        )

    return {
        "schema": ARTIFACT_SCHEMA,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "config": config_echo,
        "ingest": ingest_info,
        "slots": series_out,
        "groups": groups_out,
        "transitions": transitions_out,
        "hierarchies": hierarchies_out,
        "summary": {
            "group_count": len(groups_out),
            "transition_count": len(transitions_out),
            "hierarchy_count": len(hierarchies_out),
            "stable_group_count": len(stable),
            "size_histogram": {str(k): v for k, v in sorted(sizes.histogram.items())},
            "fraction_size_le_10": sizes.fraction_le_10,
            "size_quantiles": sizes.quantiles,
            "overlap": {
                "max_common": overlaps.max_common,
                "pair_share_fraction": overlaps.pair_share_fraction,
                "nonoverlapping_fraction": overlaps.nonoverlapping_fraction,
            },
            "event_counts": _event_counts(evolution.transitions),
        },
    }


def _event_counts(transitions: list[Transition]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for t in transitions:
        if t.kind:
            counts[t.kind.value] = counts.get(t.kind.value, 0) + 1
    return dict(sorted(counts.items()))


def attach_layouts(doc: dict, positioned: list[PositionedGraph]) -> dict:
    """Augment an artifact with per-hierarchy node coordinates and edge
    styles.  Edges reference transitions by index into doc['transitions']."""
    by_pair = {(t["src"], t["dst"]): i for i, t in enumerate(doc["transitions"])}
    layouts = []
    for pg in sorted(positioned, key=lambda p: p.hierarchy_id):
        layouts.append(
            {
                "hierarchy": pg.hierarchy_id,
                "crossings": pg.crossings,
                "nodes": [
                    {
                        "id": n.id,
                        "layer": n.layer,
                        "order": n.order,
                        "x": n.x,
                        "y": n.y,
                        "dummy": n.is_dummy,
                    }
                    for n in pg.nodes
                ],
                "edges": [
                    {
                        "src": seg.src,
                        "dst": seg.dst,
                        "style": seg.style,
                        "transition": (
                            by_pair.get((seg.transition.src.label, seg.transition.dst.label))
                            if seg.transition
                            else None
                        ),
                    }
                    for seg in pg.edges
                ],
            }
        )
    doc["layouts"] = layouts
    return doc


def load_artifact(path: str | Path, require_layouts: bool = False) -> dict:
    doc = _load_json(path, ARTIFACT_SCHEMA)
    for key in ("config", "slots", "groups", "transitions", "hierarchies", "summary"):
        if key not in doc:
            raise ValueError(f"artifact {path} is missing {key!r}")
    if require_layouts and "layouts" not in doc:
        raise ValueError(
            f"artifact {path} has no layouts; run the layout stage first"
        )
    return doc
