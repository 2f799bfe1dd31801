"""End-to-end pipeline: ingest -> detect -> evolve -> layout -> stats.

Every stage is also reachable separately through the CLI and the
intermediate documents in gevi.artifact; run_pipeline chains them in
memory and persists one self-contained artifact atomically.  The run is
deterministic: identical inputs and config produce byte-identical
artifacts apart from the generated_at stamp.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import timedelta
from pathlib import Path

from gevi import analytics, artifact, cpm, evolution as evo, ingest, layout
from gevi.config import PipelineConfig

log = logging.getLogger("gevi")


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class IngestOutput:
    messages: list[ingest.Message]
    slots: list[ingest.TimeSlot]
    graphs: list[ingest.SlotGraph]
    message_counts: list[int]
    info: dict


def run_ingest(config: PipelineConfig) -> IngestOutput:
    with open(config.messages_path, newline="") as fh:
        parsed = ingest.parse_messages(fh)
    messages = parsed.messages
    total = len(messages)
    for err in parsed.errors[:20]:
        log.warning("skipped row %d: %s", err.line, err.reason)
    if len(parsed.errors) > 20:
        log.warning("... and %d more malformed rows", len(parsed.errors) - 20)

    if config.actors_path is not None:
        with open(config.actors_path) as fh:
            allowed = ingest.read_actors(fh)
        messages = ingest.filter_actors(messages, allowed)
        actor_count = len(allowed)
    else:
        actor_count = None

    if not messages:
        raise ValueError("no messages left after parsing and filtering")
    start = config.range_start or min(m.timestamp for m in messages)
    end = config.range_end or max(m.timestamp for m in messages)
    slots = ingest.segment_slots(
        start, end, timedelta(days=config.window_days), timedelta(days=config.step_days)
    )
    graphs = ingest.build_slot_graphs(messages, slots)
    counts = ingest.count_messages_per_slot(messages, slots)
    info = {
        "parsed_messages": total,
        "parse_errors": len(parsed.errors),
        "filtered_messages": len(messages),
        "actor_filter_size": actor_count,
        "slot_count": len(slots),
    }
    return IngestOutput(messages, slots, graphs, counts, info)


@dataclass
class EvolveOutput:
    graph: evo.EvolutionGraph
    stable: set[str]
    hierarchy_groups: list[list[cpm.Group]]
    flows: dict[str, evo.FlowAnnotation]


def run_evolve(groups: list[cpm.Group], params: evo.EvolutionParams) -> EvolveOutput:
    graph = evo.build_evolution_graph(groups, params)
    stable = evo.stable_groups(graph, params)
    hierarchy_groups = evo.hierarchies(graph)
    flows = {g.label: evo.member_flows(g, graph) for g in graph.groups}
    return EvolveOutput(graph, stable, hierarchy_groups, flows)


def assemble_artifact(
    config: PipelineConfig,
    ingest_info: dict,
    slots: list[ingest.TimeSlot],
    message_counts: list[int],
    groups: list[cpm.Group],
    evolved: EvolveOutput,
) -> dict:
    series = analytics.slot_series_from_counts(
        groups, message_counts, slots, evolved.graph.transitions
    )
    return artifact.build_artifact(
        config_echo=config.echo(),
        ingest_info=ingest_info,
        slots=slots,
        series=series,
        evolution=evolved.graph,
        stable=evolved.stable,
        hierarchy_groups=evolved.hierarchy_groups,
        flows=evolved.flows,
        sizes=analytics.size_distribution(groups),
        overlaps=analytics.overlap_stats(groups),
    )


def run_pipeline(config: PipelineConfig) -> dict:
    """Execute all stages and persist the artifact; returns the document."""
    config.validate_for_run()
    params = config.evolution_params()

    try:
        ingested = run_ingest(config)
    except Exception as exc:  # noqa: BLE001 - stage boundary
        raise StageError("ingest", exc) from exc
    log.info(
        "ingest: %d messages over %d slots",
        ingested.info["filtered_messages"],
        len(ingested.slots),
    )

    try:
        groups = cpm.extract_groups(ingested.graphs, config.k)
    except Exception as exc:  # noqa: BLE001
        raise StageError("detect", exc) from exc
    log.info("detect: %d groups", len(groups))

    try:
        evolved = run_evolve(groups, params)
    except Exception as exc:  # noqa: BLE001
        raise StageError("evolve", exc) from exc
    log.info(
        "evolve: %d transitions, %d hierarchies, %d stable groups",
        len(evolved.graph.transitions),
        len(evolved.hierarchy_groups),
        len(evolved.stable),
    )

    try:
        positioned = layout_hierarchies(evolved.graph, evolved.hierarchy_groups, config)
    except Exception as exc:  # noqa: BLE001
        raise StageError("layout", exc) from exc

    try:
        doc = assemble_artifact(
            config, ingested.info, ingested.slots, ingested.message_counts,
            groups, evolved,
        )
    except Exception as exc:  # noqa: BLE001
        raise StageError("stats", exc) from exc

    artifact.attach_layouts(doc, positioned)
    artifact.write_json_atomic(doc, config.output_path)
    log.info("artifact written to %s", config.output_path)
    return doc


def layout_hierarchies(
    graph: evo.EvolutionGraph,
    hierarchy_groups: list[list[cpm.Group]],
    config: PipelineConfig,
) -> list[layout.PositionedGraph]:
    metrics = layout.LayoutMetrics(layer_gap=config.layer_gap, node_gap=config.node_gap)
    label_to_hid = {}
    for hid, member_groups in enumerate(hierarchy_groups):
        for g in member_groups:
            label_to_hid[g.label] = hid
    transitions_by_hid: dict[int, list[evo.Transition]] = {}
    for t in graph.transitions:
        transitions_by_hid.setdefault(label_to_hid[t.src.label], []).append(t)
    positioned = []
    for hid, member_groups in enumerate(hierarchy_groups):
        positioned.append(
            layout.layout_hierarchy(
                hid,
                member_groups,
                transitions_by_hid.get(hid, []),
                metrics,
                sweeps=config.sweeps,
            )
        )
    return positioned


def ensure_parent(path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path
