"""Regenerate tests/fixtures/ from a real gevi server.

Builds a small corpus with a known overlap pattern, runs the gevi CLI
on it, serves the artifact, and snapshots every API response the
viewer tests compare against. Needs the gevi package installed.

Corpus layout, three 30-day slots (step = window, no slot overlap):

* community A = {x, a1, a2, a3, y} and B = {x, b1, b2, b3, y} share
  {x, y}; C = {a1, z1, z2, z3} shares {a1} with A only; D is disjoint.
  Selecting A therefore highlights B with 2 and C with 1 common
  members, D not at all.
* A, B, C repeat in slots 0..2 (stable chains).
* slot 1 replaces D with a 40-member community containing all of D,
  giving one dashed addition edge (size ratio 10, stability 0.10).
* slot 3 holds M = A union B, so both chains end in merge edges and
  A, B, M share one hierarchy; the overlap highlights then show up in
  a single drawing.
"""

from __future__ import annotations

import argparse
import csv
import json
import subprocess
import sys
import tempfile
import time
import urllib.error
import urllib.request
from datetime import datetime, timedelta, timezone
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
T0 = datetime(2021, 1, 1, 6, 0, tzinfo=timezone.utc)

TRI_A = [("x", "a1", "a2"), ("a1", "a2", "a3"), ("a2", "a3", "y")]
TRI_B = [("x", "b1", "b2"), ("b1", "b2", "b3"), ("b2", "b3", "y")]
TRI_C = [("a1", "z1", "z2"), ("z1", "z2", "z3")]
TRI_D = [("d1", "d2", "d3"), ("d2", "d3", "d4")]
# one clique chain walking from the a side to the b side, members A | B
TRI_M = [
    ("x", "a1", "a2"),
    ("a1", "a2", "a3"),
    ("a2", "a3", "y"),
    ("a3", "y", "b3"),
    ("y", "b3", "b2"),
    ("b3", "b2", "b1"),
    ("b2", "b1", "x"),
]
# 40-member chain whose first four vertices are exactly D's members
CHAIN_E = ["d1", "d2", "d3", "d4"] + [f"h{i}" for i in range(4, 40)]


def triangle_edges(tri: tuple[str, str, str]) -> list[tuple[str, str]]:
    u, v, w = tri
    return [(u, v), (v, w), (u, w)]


def slot_messages(slot: int, triangles: list[tuple[str, str, str]]) -> list[tuple[str, str, str]]:
    rows = []
    for offset, day in enumerate((1, 4)):
        stamp = (T0 + timedelta(days=30 * slot + day, hours=offset)).isoformat()
        for tri in triangles:
            for s, r in triangle_edges(tri):
                rows.append((s, r, stamp))
    return rows


def chain_messages(slot: int) -> list[tuple[str, str, str]]:
    stamp = (T0 + timedelta(days=30 * slot + 2)).isoformat()
    rows = []
    for i in range(len(CHAIN_E) - 2):
        tri = (CHAIN_E[i], CHAIN_E[i + 1], CHAIN_E[i + 2])
        for s, r in triangle_edges(tri):
            rows.append((s, r, stamp))
    return rows


def write_corpus(path: Path) -> None:
    rows = []
    rows += slot_messages(0, TRI_A + TRI_B + TRI_C + TRI_D)
    rows += slot_messages(1, TRI_A + TRI_B + TRI_C)
    rows += chain_messages(1)
    rows += slot_messages(2, TRI_A + TRI_B + TRI_C)
    rows += slot_messages(3, TRI_M)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sender", "recipient", "timestamp"])
        writer.writerows(rows)


def get(base: str, path: str) -> tuple[int, dict | list | None]:
    try:
        with urllib.request.urlopen(base + path, timeout=10) as res:
            return res.status, json.loads(res.read())
    except urllib.error.HTTPError as err:
        return err.code, None


def wait_up(base: str, tries: int = 50) -> None:
    for _ in range(tries):
        try:
            status, _ = get(base, "/api/hierarchies")
            if status == 200:
                return
        except Exception:
            time.sleep(0.2)
    raise RuntimeError("server did not come up")


def dump(name: str, data) -> None:
    out = FIXTURES / name
    out.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {out.relative_to(Path.cwd())}" if out.is_relative_to(Path.cwd()) else f"wrote {out}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--port", type=int, default=8917)
    args = parser.parse_args()
    base = f"http://127.0.0.1:{args.port}"

    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        work = Path(tmp)
        write_corpus(work / "messages.csv")
        config = {
            "messages_path": str(work / "messages.csv"),
            "output_path": str(work / "artifact.json"),
            "window_days": 30,
            "step_days": 30,
        }
        (work / "config.json").write_text(json.dumps(config))
        subprocess.run(
            ["gevi", "--config", str(work / "config.json"), "run"], check=True
        )

        server = subprocess.Popen(
            [
                "gevi", "--config", str(work / "config.json"),
                "serve", "--port", str(args.port),
            ],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            wait_up(base)

            _, hierarchies = get(base, "/api/hierarchies")
            dump("hierarchies.json", hierarchies)

            graphs = {}
            for h in hierarchies:
                _, graphs[h["id"]] = get(base, f"/api/hierarchies/{h['id']}/graph")
            dump("graphs.json", graphs)

            labels = sorted(
                n["id"]
                for g in graphs.values()
                for n in g["nodes"]
                if not n["dummy"]
            )
            groups = {}
            overlaps = {}
            for label in labels:
                _, groups[label] = get(base, f"/api/groups/{label}")
                _, overlaps[label] = get(base, f"/api/groups/{label}/overlaps")
            dump("groups.json", groups)
            dump("overlaps.json", overlaps)

            slots = {}
            slot = 0
            while True:
                status, body = get(base, f"/api/slots/{slot}/stats")
                if status != 200:
                    break
                slots[str(slot)] = body
                slot += 1
            dump("slots.json", slots)

            searches = {}
            for label in labels:
                _, searches[label] = get(base, f"/api/search?q={label}")
            dump("searches.json", searches)

            space_status, space_body = get(
                base, f"/api/search?q={labels[0]}%20"
            )
            miss_status, _ = get(base, "/api/search?q=999_0")
            bad_group_status, _ = get(base, "/api/groups/999_0")
            dump(
                "meta.json",
                {
                    "trailing_space_status": space_status,
                    "trailing_space_label": space_body["label"] if space_body else None,
                    "search_miss_status": miss_status,
                    "missing_group_status": bad_group_status,
                },
            )
        finally:
            server.terminate()
            server.wait(timeout=10)
    return 0


if __name__ == "__main__":
    sys.exit(main())
