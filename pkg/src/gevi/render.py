"""Headless rendering: static SVG per hierarchy, stats CSV/text/charts."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from xml.sax.saxutils import escape

_NODE_W = 92
_NODE_H = 30


def hierarchy_svg(layout: dict, groups: dict[str, dict], transitions: list[dict]) -> str:
    """One hierarchy as a standalone SVG string.

    Nodes show ``label [size]``; dashed edges mark addition/deletion;
    edge labels carry the member flow.
    """
    nodes = layout["nodes"]
    if not nodes:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>'
    xs = [n["x"] for n in nodes]
    ys = [n["y"] for n in nodes]
    pad = 70
    min_x, max_x = min(xs) - pad, max(xs) + pad + _NODE_W
    min_y, max_y = min(ys) - pad, max(ys) + pad + _NODE_H
    width, height = max_x - min_x, max_y - min_y

    def tx(x: float) -> float:
        return x - min_x

    def ty(y: float) -> float:
        return y - min_y

    pos = {n["id"]: (tx(n["x"]), ty(n["y"])) for n in nodes}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" font-family="sans-serif" font-size="11">'
    ]
    for edge in layout["edges"]:
        x1, y1 = pos[edge["src"]]
        x2, y2 = pos[edge["dst"]]
        x1 += _NODE_W
        y1 += _NODE_H / 2
        y2 += _NODE_H / 2
        dash = ' stroke-dasharray="6,4"' if edge["style"] == "dashed" else ""
        parts.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f'stroke="#555"{dash}/>'
        )
        if edge["transition"] is not None:
            t = transitions[edge["transition"]]
            parts.append(
                f'<text x="{(x1 + x2) / 2:.1f}" y="{(y1 + y2) / 2 - 4:.1f}" '
                f'fill="#333" text-anchor="middle">{t["flow"]}</text>'
            )
    for n in nodes:
        x, y = pos[n["id"]]
        if n["dummy"]:
            parts.append(f'<circle cx="{x + _NODE_W:.1f}" cy="{y + _NODE_H / 2:.1f}" r="2" fill="#bbb"/>')
            continue
        g = groups[n["id"]]
        flows = g["flows"]
        parts.append(
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{_NODE_W}" height="{_NODE_H}" '
            f'rx="5" fill="#e8f0fe" stroke="#4a6da7"/>'
        )
        parts.append(
            f'<text x="{x + _NODE_W / 2:.1f}" y="{y + _NODE_H / 2 + 4:.1f}" '
            f'text-anchor="middle">{escape(n["id"])} [{g["size"]}]</text>'
        )
        if flows["external_out"]:
            parts.append(
                f'<text x="{x + _NODE_W + 3:.1f}" y="{y + 6:.1f}" fill="#2d7d2d">'
                f'↗{flows["external_out"]}</text>'
            )
        if flows["external_in"]:
            parts.append(
                f'<text x="{x + _NODE_W + 3:.1f}" y="{y + _NODE_H + 2:.1f}" fill="#2d7d2d">'
                f'↘{flows["external_in"]}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def write_hierarchy_svgs(doc: dict, out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    groups = {g["label"]: g for g in doc["groups"]}
    written = []
    for layout in doc.get("layouts", []):
        path = out_dir / f'hierarchy_{layout["hierarchy"]}.svg'
        path.write_text(hierarchy_svg(layout, groups, doc["transitions"]))
        written.append(path)
    return written


def series_csv(doc: dict) -> str:
    """Per-slot series: slot,group_count,message_count,stability_mean,stability_std."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["slot", "group_count", "message_count", "stability_mean", "stability_std"])
    for entry in doc["slots"]:
        writer.writerow(
            [
                entry["slot"],
                entry["group_count"],
                entry["message_count"],
                "" if entry["stability_mean"] is None else f'{entry["stability_mean"]:.6f}',
                "" if entry["stability_std"] is None else f'{entry["stability_std"]:.6f}',
            ]
        )
    return buf.getvalue()


def summary_text(doc: dict) -> str:
    s = doc["summary"]
    o = s["overlap"]
    active = [e for e in doc["slots"] if e["group_count"] > 0]
    lines = [
        f'groups: {s["group_count"]} in {len(active)} of {len(doc["slots"])} slots',
        f'transitions: {s["transition_count"]}',
        f'hierarchies: {s["hierarchy_count"]}',
        f'stable groups: {s["stable_group_count"]}',
        f'groups with size <= 10: {s["fraction_size_le_10"]:.1%}',
        f'max common members within a slot: {o["max_common"]}',
        f'same-slot pairs sharing a member: {o["pair_share_fraction"]:.1%}',
        f'groups overlapping no same-slot group: {o["nonoverlapping_fraction"]:.1%}',
    ]
    if active:
        lines.insert(1, f'first/last slot with groups: {active[0]["slot"]}/{active[-1]["slot"]}')
    if s["event_counts"]:
        counted = ", ".join(f"{k}={v}" for k, v in s["event_counts"].items())
        lines.append(f"edge events: {counted}")
    return "\n".join(lines) + "\n"


def write_charts(doc: dict, out_dir: str | Path) -> list[Path]:
    """Two PNG charts: groups+messages per slot, stability mean/std per slot."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    slots = [e["slot"] for e in doc["slots"]]
    groups = [e["group_count"] for e in doc["slots"]]
    messages = [e["message_count"] for e in doc["slots"]]

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(10, 6), sharex=True)
    ax1.plot(slots, groups, color="tab:blue")
    ax1.set_ylabel("groups")
    ax2.plot(slots, messages, color="tab:orange")
    ax2.set_ylabel("messages")
    ax2.set_xlabel("slot")
    fig.tight_layout()
    counts_path = out_dir / "counts_per_slot.png"
    fig.savefig(counts_path, dpi=120)
    plt.close(fig)

    stab = [(e["slot"], e["stability_mean"], e["stability_std"]) for e in doc["slots"]
            if e["stability_mean"] is not None]
    stability_path = out_dir / "stability_per_slot.png"
    fig, ax = plt.subplots(figsize=(10, 4))
    if stab:
        xs, means, stds = zip(*stab)
        ax.errorbar(xs, means, yerr=stds, fmt="o-", capsize=2, markersize=3)
    ax.set_xlabel("slot")
    ax.set_ylabel("stability")
    fig.tight_layout()
    fig.savefig(stability_path, dpi=120)
    plt.close(fig)
    return [counts_path, stability_path]
