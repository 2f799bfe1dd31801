"""Interaction-log ingestion: parsing, actor filtering, slot graphs.

Input is a normalized CSV export with header ``sender,recipient,timestamp``
(actor ids are opaque strings, timestamps ISO-8601 UTC).  Time is cut
into fixed-length windows advanced by a fixed step; consecutive windows
overlap by ``window - step``.  Each slot gets one undirected graph whose
edge weights count the messages exchanged in either direction inside the
slot's half-open interval ``[start, end)``.
"""

from __future__ import annotations

import csv
from bisect import bisect_left
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import Iterable, TextIO


@dataclass(frozen=True)
class Message:
    """One directed interaction.  Self-messages survive parsing and are
    dropped at graph build."""

    sender: str
    recipient: str
    timestamp: datetime


@dataclass(frozen=True)
class TimeSlot:
    index: int
    start: datetime
    end: datetime


@dataclass
class SlotGraph:
    """Undirected weighted interaction graph for one slot.

    Edges are keyed by canonical (min, max) actor pair; weight is the
    message count over both directions.  No self-loops.
    """

    slot: TimeSlot
    vertices: set[str] = field(default_factory=set)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)


@dataclass(frozen=True)
class RowError:
    line: int
    reason: str


@dataclass
class ParseResult:
    messages: list[Message]
    errors: list[RowError]


def parse_timestamp(raw: str) -> datetime:
    """ISO-8601 → aware UTC datetime.  Trailing 'Z' and naive stamps
    (assumed UTC) are both accepted."""
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def parse_messages(source: TextIO) -> ParseResult:
    """Read the message CSV, preserving row order.

    Malformed rows are skipped and recorded with their 1-based line
    number; an unreadable stream propagates as the underlying OSError.
    """
    reader = csv.reader(source)
    messages: list[Message] = []
    errors: list[RowError] = []
    header_seen = False
    for line_no, row in enumerate(reader, start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if not header_seen:
            header_seen = True
            if [c.strip().lower() for c in row[:3]] == ["sender", "recipient", "timestamp"]:
                continue
            # headerless files are accepted; fall through and parse the row
        if len(row) < 3:
            errors.append(RowError(line_no, f"expected 3 fields, got {len(row)}"))
            continue
        sender = row[0].strip()
        recipient = row[1].strip()
        if not sender or not recipient:
            errors.append(RowError(line_no, "empty sender or recipient"))
            continue
        try:
            ts = parse_timestamp(row[2])
        except ValueError:
            errors.append(RowError(line_no, f"bad timestamp {row[2]!r}"))
            continue
        messages.append(Message(sender, recipient, ts))
    return ParseResult(messages, errors)


def read_actors(source: TextIO) -> set[str]:
    """Actor filter file: one identifier per line, blanks ignored."""
    return {line.strip() for line in source if line.strip()}


def filter_actors(messages: Iterable[Message], allowed: set[str]) -> list[Message]:
    """Keep messages whose sender AND recipient are both in ``allowed``."""
    if not allowed:
        raise ValueError("allowed actor set must be non-empty")
    return [m for m in messages if m.sender in allowed and m.recipient in allowed]


def segment_slots(
    range_start: datetime,
    range_end: datetime,
    window: timedelta,
    step: timedelta,
) -> list[TimeSlot]:
    """Overlapping slots: start at range_start + i*step, one per start
    <= range_end.  The final window may extend past range_end."""
    if window <= timedelta(0):
        raise ValueError("window must be positive")
    if step <= timedelta(0):
        raise ValueError("step must be positive")
    if step > window:
        raise ValueError("step must not exceed window")
    if range_start > range_end:
        raise ValueError("range_start must not exceed range_end")
    slots = []
    i = 0
    while True:
        start = range_start + i * step
        if start > range_end:
            break
        slots.append(TimeSlot(i, start, start + window))
        i += 1
    return slots


def build_slot_graph(messages: Iterable[Message], slot: TimeSlot) -> SlotGraph:
    """Graph of all non-self messages with start <= t < end."""
    graph = SlotGraph(slot)
    for m in messages:
        if not (slot.start <= m.timestamp < slot.end):
            continue
        _add_message(graph, m)
    return graph


def build_slot_graphs(messages: list[Message], slots: list[TimeSlot]) -> list[SlotGraph]:
    """One graph per slot.  Messages are bucketed through a single sorted
    pass instead of rescanning the full list per slot."""
    ordered = sorted(messages, key=lambda m: m.timestamp)
    stamps = [m.timestamp for m in ordered]
    graphs = []
    for slot in slots:
        graph = SlotGraph(slot)
        lo = bisect_left(stamps, slot.start)
        for i in range(lo, len(ordered)):
            m = ordered[i]
            if m.timestamp >= slot.end:
                break
            _add_message(graph, m)
        graphs.append(graph)
    return graphs


def count_messages_per_slot(messages: list[Message], slots: list[TimeSlot]) -> list[int]:
    """In-slot non-self message counts (a message lands in every slot
    containing it, so overlapping slots double-count)."""
    ordered = sorted(m.timestamp for m in messages if m.sender != m.recipient)
    counts = []
    for slot in slots:
        lo = bisect_left(ordered, slot.start)
        hi = bisect_left(ordered, slot.end)
        counts.append(hi - lo)
    return counts


def _add_message(graph: SlotGraph, m: Message) -> None:
    if m.sender == m.recipient:
        return
    edge = (m.sender, m.recipient) if m.sender < m.recipient else (m.recipient, m.sender)
    graph.vertices.add(m.sender)
    graph.vertices.add(m.recipient)
    graph.edges[edge] = graph.edges.get(edge, 0) + 1
