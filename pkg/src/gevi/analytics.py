"""Aggregate statistics over the extracted groups and their transitions.

All functions are pure views over immutable inputs; nothing here feeds
back into detection or linking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gevi.cpm import Group
from gevi.evolution import Transition
from gevi.ingest import Message, TimeSlot, count_messages_per_slot


@dataclass
class SlotStats:
    """Per-slot series entry.  stability at slot i aggregates the
    transitions leaving slot i toward slot i+1; None when there are
    no outgoing transitions."""

    slot: int
    group_count: int
    message_count: int
    stability_mean: float | None = None
    stability_std: float | None = None


@dataclass
class SizeDistribution:
    histogram: dict[int, int]
    fraction_le_10: float
    quantiles: dict[str, float]


@dataclass
class OverlapStats:
    max_common: int
    pair_share_fraction: float
    nonoverlapping_fraction: float


def size_distribution(groups: list[Group]) -> SizeDistribution:
    histogram: dict[int, int] = {}
    for g in groups:
        histogram[g.size] = histogram.get(g.size, 0) + 1
    if not groups:
        return SizeDistribution({}, 0.0, {})
    sizes = sorted(g.size for g in groups)
    fraction = sum(1 for s in sizes if s <= 10) / len(sizes)

    def quantile(q: float) -> float:
        pos = q * (len(sizes) - 1)
        lo = int(math.floor(pos))
        hi = int(math.ceil(pos))
        return sizes[lo] + (sizes[hi] - sizes[lo]) * (pos - lo)

    quantiles = {
        "min": float(sizes[0]),
        "p25": quantile(0.25),
        "p50": quantile(0.50),
        "p75": quantile(0.75),
        "p90": quantile(0.90),
        "max": float(sizes[-1]),
    }
    return SizeDistribution(histogram, fraction, quantiles)


def counts_per_slot(
    groups: list[Group],
    messages: list[Message],
    slots: list[TimeSlot],
) -> list[SlotStats]:
    """Group and message counts per slot.  A message lands in every slot
    containing it, so overlapping slots count it more than once;
    self-messages are excluded, matching the slot graphs."""
    counts = count_messages_per_slot(messages, slots)
    return slot_series_from_counts(groups, counts, slots, [])


def slot_stability(transitions: list[Transition]) -> dict[int, tuple[float, float]]:
    """Per source slot: mean and population std of outgoing-transition
    stabilities."""
    values: dict[int, list[float]] = {}
    for t in transitions:
        values.setdefault(t.src.slot_index, []).append(t.stability)
    out = {}
    for slot, vals in values.items():
        mean = sum(vals) / len(vals)
        var = sum((v - mean) ** 2 for v in vals) / len(vals)
        out[slot] = (mean, math.sqrt(var))
    return out


def slot_series(
    groups: list[Group],
    messages: list[Message],
    slots: list[TimeSlot],
    transitions: list[Transition],
) -> list[SlotStats]:
    """counts_per_slot with the stability columns filled in."""
    counts = count_messages_per_slot(messages, slots)
    return slot_series_from_counts(groups, counts, slots, transitions)


def slot_series_from_counts(
    groups: list[Group],
    message_counts: list[int],
    slots: list[TimeSlot],
    transitions: list[Transition],
) -> list[SlotStats]:
    """slot_series when per-slot message counts are already known."""
    group_counts: dict[int, int] = {}
    for g in groups:
        group_counts[g.slot_index] = group_counts.get(g.slot_index, 0) + 1
    stability = slot_stability(transitions)
    series = []
    for i, slot in enumerate(slots):
        entry = SlotStats(
            slot=slot.index,
            group_count=group_counts.get(slot.index, 0),
            message_count=message_counts[i],
        )
        if entry.slot in stability:
            entry.stability_mean, entry.stability_std = stability[entry.slot]
        series.append(entry)
    return series


def common_members(g1: Group, g2: Group) -> frozenset[str]:
    return g1.members & g2.members


def overlap_stats(groups: list[Group]) -> OverlapStats:
    """Intersection statistics over all same-slot group pairs."""
    by_slot: dict[int, list[Group]] = {}
    for g in groups:
        by_slot.setdefault(g.slot_index, []).append(g)

    max_common = 0
    total_pairs = 0
    sharing_pairs = 0
    overlapping_labels: set[str] = set()
    for slot_groups in by_slot.values():
        for i in range(len(slot_groups)):
            for j in range(i + 1, len(slot_groups)):
                a, b = slot_groups[i], slot_groups[j]
                common = len(a.members & b.members)
                total_pairs += 1
                if common > max_common:
                    max_common = common
                if common >= 1:
                    sharing_pairs += 1
                    overlapping_labels.add(a.label)
                    overlapping_labels.add(b.label)

    pair_share = sharing_pairs / total_pairs if total_pairs else 0.0
    nonoverlap = (
        (len(groups) - len(overlapping_labels)) / len(groups) if groups else 0.0
    )
    return OverlapStats(max_common, pair_share, nonoverlap)
