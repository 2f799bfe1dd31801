import csv
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

from gevi.config import PipelineConfig
from gevi.cpm import Group
from gevi.ingest import Message, SlotGraph, TimeSlot
from gevi.pipeline import run_pipeline

UTC = timezone.utc
T0 = datetime(2021, 1, 1, tzinfo=UTC)


def ts(day: float) -> datetime:
    return T0 + timedelta(days=day)


def msg(sender: str, recipient: str, day: float) -> Message:
    return Message(sender, recipient, ts(day))


def slot(index: int, start_day: float, end_day: float) -> TimeSlot:
    return TimeSlot(index, ts(start_day), ts(end_day))


def graph(slot_index: int, edges, end_day: float | None = None) -> SlotGraph:
    """SlotGraph from an edge iterable; vertices inferred."""
    s = slot(slot_index, slot_index * 15, end_day if end_day is not None else slot_index * 15 + 30)
    g = SlotGraph(s)
    for edge in edges:
        a, b = edge[:2]
        w = edge[2] if len(edge) > 2 else 1
        key = (a, b) if a < b else (b, a)
        g.vertices.add(a)
        g.vertices.add(b)
        g.edges[key] = g.edges.get(key, 0) + w
    return g


def group(slot_index: int, ordinal: int, members) -> Group:
    return Group(slot_index, ordinal, frozenset(members))


def random_edges(rng: random.Random, n: int, p: float) -> list[tuple[str, str]]:
    names = [f"v{i:02d}" for i in range(n)]
    return [
        (names[i], names[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]


def write_toy_corpus(path: Path, seed: int = 7) -> Path:
    """Two stable communities, one drifting appendage, sporadic noise.
    120 days so the default 30/15 slotting yields 8 slots."""
    rng = random.Random(seed)
    core_a = [f"a{i}" for i in range(6)]
    core_b = [f"b{i}" for i in range(5)]
    drift = [f"c{i}" for i in range(4)]
    rows = []
    for day in range(120):
        stamp = ts(day + 0.25)
        for _ in range(6):
            s, r = rng.sample(core_a, 2)
            rows.append((s, r, stamp.isoformat()))
        for _ in range(5):
            s, r = rng.sample(core_b, 2)
            rows.append((s, r, stamp.isoformat()))
        if day > 60:
            for _ in range(4):
                s, r = rng.sample(core_b + drift, 2)
                rows.append((s, r, stamp.isoformat()))
        if day % 9 == 0:
            rows.append(("a0", "outsider", stamp.isoformat()))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sender", "recipient", "timestamp"])
        writer.writerows(rows)
    return path


@pytest.fixture(scope="session")
def toy_messages(tmp_path_factory) -> Path:
    return write_toy_corpus(tmp_path_factory.mktemp("corpus") / "messages.csv")


@pytest.fixture(scope="session")
def toy_config(toy_messages, tmp_path_factory) -> PipelineConfig:
    out = tmp_path_factory.mktemp("artifacts") / "artifact.json"
    return PipelineConfig(messages_path=toy_messages, output_path=out)


@pytest.fixture(scope="session")
def toy_artifact(toy_config) -> dict:
    """Finished artifact document for the toy corpus (layouts included)."""
    return run_pipeline(toy_config)
