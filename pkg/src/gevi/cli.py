"""Command line entry points.

Stages can run one at a time (ingest -> detect -> evolve -> layout -> stats),
chained through files next to the configured artifact path, or all at once
with `run`.  `serve` exposes a finished artifact over HTTP.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from gevi import artifact, cpm, evolution as evo, pipeline, render
from gevi.config import PipelineConfig, apply_overrides, load_config


def _fail(message: str) -> None:
    raise click.ClickException(message)


def _sibling(config: PipelineConfig, name: str) -> Path:
    return Path(config.output_path).parent / name


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="JSON config file; keys mirror PipelineConfig fields.",
)
@click.pass_context
def main(ctx: click.Context, config_path: str | None) -> None:
    """Detect overlapping groups in message streams, track their evolution
    and serve the layered result."""
    import logging

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        ctx.obj = load_config(config_path) if config_path else PipelineConfig()
    except (ValueError, OSError) as exc:
        _fail(str(exc))


@main.command()
@click.option("--messages", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--actors", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Slots document path (default: slots.json beside the artifact).")
@click.pass_obj
def ingest(config: PipelineConfig, messages: str | None, actors: str | None, out: str | None) -> None:
    """Parse messages, segment time slots, build per-slot graphs."""
    config = apply_overrides(config, messages_path=messages, actors_path=actors)
    if config.messages_path is None:
        _fail("no messages file; pass --messages or set messages_path in the config")
    try:
        result = pipeline.run_ingest(config)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    doc = artifact.slots_document(
        config.echo(), result.slots, result.graphs, result.message_counts, result.info
    )
    out_path = Path(out) if out else _sibling(config, "slots.json")
    artifact.write_json_atomic(doc, out_path)
    info = result.info
    click.echo(
        f"parsed {info['parsed_messages']} messages "
        f"({info['parse_errors']} malformed rows skipped)"
    )
    if info["actor_filter_size"] is not None:
        click.echo(
            f"kept {info['filtered_messages']} messages between "
            f"{info['actor_filter_size']} listed actors"
        )
    click.echo(f"{len(result.slots)} slots -> {out_path}")


@main.command()
@click.option("--k", type=int, default=None, help="Clique size (default from config).")
@click.option("--slots", "slots_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Groups file path (default: groups.txt beside the artifact).")
@click.pass_obj
def detect(config: PipelineConfig, k: int | None, slots_path: str | None, out: str | None) -> None:
    """Extract overlapping k-clique groups from the slot graphs."""
    config = apply_overrides(config, k=k)
    src = Path(slots_path) if slots_path else _sibling(config, "slots.json")
    try:
        _, _, graphs = artifact.load_slots_document(src)
        groups = cpm.extract_groups(graphs, config.k)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    out_path = pipeline.ensure_parent(Path(out) if out else _sibling(config, "groups.txt"))
    out_path.write_text(artifact.dump_groups(groups))
    occupied = len({g.slot_index for g in groups})
    click.echo(f"{len(groups)} groups (k={config.k}) across {occupied} slots -> {out_path}")


@main.command()
@click.option("--th", type=float, default=None, help="Modified-Jaccard link threshold.")
@click.option("--sh", type=float, default=None, help="Size-ratio threshold for addition/deletion.")
@click.option("--min-lifespan", type=int, default=None, help="Slots a stable group must span.")
@click.option("--slots", "slots_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--groups", "groups_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Artifact path (default: output_path from the config).")
@click.pass_obj
def evolve(
    config: PipelineConfig,
    th: float | None,
    sh: float | None,
    min_lifespan: int | None,
    slots_path: str | None,
    groups_path: str | None,
    out: str | None,
) -> None:
    """Link groups across slots, classify events, build the artifact."""
    config = apply_overrides(config, th=th, sh=sh, min_lifespan=min_lifespan, output_path=out)
    slots_src = Path(slots_path) if slots_path else _sibling(config, "slots.json")
    groups_src = Path(groups_path) if groups_path else _sibling(config, "groups.txt")
    try:
        slots_doc, slots, _ = artifact.load_slots_document(slots_src)
        groups = artifact.load_groups(groups_src)
        evolved = pipeline.run_evolve(groups, config.evolution_params())
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    counts = [s["message_count"] for s in slots_doc["slots"]]
    doc = pipeline.assemble_artifact(
        config, slots_doc["ingest"], slots, counts, groups, evolved
    )
    artifact.write_json_atomic(doc, config.output_path)
    s = doc["summary"]
    click.echo(
        f"{s['transition_count']} transitions, {s['hierarchy_count']} hierarchies, "
        f"{s['stable_group_count']} stable groups -> {config.output_path}"
    )


def _rebuild_evolution(doc: dict) -> tuple[evo.EvolutionGraph, list[list[cpm.Group]]]:
    by_label = {
        g["label"]: cpm.Group(g["slot"], g["ordinal"], frozenset(g["members"]))
        for g in doc["groups"]
    }
    transitions = [
        evo.Transition(
            src=by_label[t["src"]],
            dst=by_label[t["dst"]],
            mj=t["mj"],
            stability=t["stability"],
            flow=t["flow"],
            kind=evo.EventKind(t["kind"]) if t["kind"] else None,
        )
        for t in doc["transitions"]
    ]
    graph = evo.EvolutionGraph(list(by_label.values()), transitions)
    hierarchy_groups = [
        [by_label[label] for label in h["groups"]] for h in doc["hierarchies"]
    ]
    return graph, hierarchy_groups


@main.command("layout")
@click.option("--artifact", "artifact_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Artifact to augment (default: output_path).")
@click.option("--svg", "svg_dir", type=click.Path(file_okay=False), default=None,
              help="Also write one static SVG per hierarchy into this directory.")
@click.pass_obj
def layout_cmd(config: PipelineConfig, artifact_path: str | None, svg_dir: str | None) -> None:
    """Compute layered coordinates for every hierarchy; store them in the artifact."""
    path = Path(artifact_path) if artifact_path else Path(config.output_path)
    try:
        doc = artifact.load_artifact(path)
        graph, hierarchy_groups = _rebuild_evolution(doc)
        positioned = pipeline.layout_hierarchies(graph, hierarchy_groups, config)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    artifact.attach_layouts(doc, positioned)
    artifact.write_json_atomic(doc, path)
    crossings = sum(p.crossings for p in positioned)
    click.echo(f"{len(positioned)} hierarchies laid out, {crossings} edge crossings -> {path}")
    if svg_dir:
        written = render.write_hierarchy_svgs(doc, svg_dir)
        click.echo(f"{len(written)} SVG files -> {svg_dir}")


@main.command()
@click.option("--artifact", "artifact_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Artifact to summarize (default: output_path).")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Write the per-slot series CSV here (default: print after the summary).")
@click.option("--charts", "charts_dir", type=click.Path(file_okay=False), default=None,
              help="Write PNG charts of the per-slot series into this directory.")
@click.pass_obj
def stats(config: PipelineConfig, artifact_path: str | None, csv_path: str | None,
          charts_dir: str | None) -> None:
    """Per-slot series CSV plus a corpus-level summary."""
    path = Path(artifact_path) if artifact_path else Path(config.output_path)
    try:
        doc = artifact.load_artifact(path)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    click.echo(render.summary_text(doc), nl=False)
    series = render.series_csv(doc)
    if csv_path:
        out = pipeline.ensure_parent(csv_path)
        out.write_text(series)
        click.echo(f"series -> {out}")
    else:
        click.echo(series, nl=False)
    if charts_dir:
        written = render.write_charts(doc, charts_dir)
        click.echo(f"{len(written)} charts -> {charts_dir}")


@main.command()
@click.option("--messages", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--actors", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--svg", "svg_dir", type=click.Path(file_okay=False), default=None)
@click.pass_obj
def run(config: PipelineConfig, messages: str | None, actors: str | None,
        out: str | None, svg_dir: str | None) -> None:
    """All stages in one process: ingest through layout, artifact written atomically."""
    config = apply_overrides(
        config, messages_path=messages, actors_path=actors, output_path=out
    )
    try:
        doc = pipeline.run_pipeline(config)
    except pipeline.StageError as exc:
        _fail(str(exc))
    s = doc["summary"]
    click.echo(
        f"{s['group_count']} groups, {s['transition_count']} transitions, "
        f"{s['hierarchy_count']} hierarchies -> {config.output_path}"
    )
    if svg_dir:
        written = render.write_hierarchy_svgs(doc, svg_dir)
        click.echo(f"{len(written)} SVG files -> {svg_dir}")


@main.command()
@click.option("--artifact", "artifact_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Artifact to serve (default: output_path).")
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False, exists=True), default=None,
              help="Static viewer assets to mount under /ui.")
@click.pass_obj
def serve(config: PipelineConfig, artifact_path: str | None, host: str | None,
          port: int | None, ui_dir: str | None) -> None:
    """Read-only HTTP API over a finished artifact."""
    from gevi import service

    config = apply_overrides(config, host=host, port=port)
    path = Path(artifact_path) if artifact_path else Path(config.output_path)
    try:
        doc = artifact.load_artifact(path, require_layouts=True)
    except (ValueError, OSError) as exc:
        _fail(str(exc))
    click.echo(f"serving {path} on http://{config.host}:{config.port}")
    service.serve(doc, config.host, config.port, static_dir=ui_dir)


if __name__ == "__main__":
    sys.exit(main())
