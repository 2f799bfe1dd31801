"""Read-only HTTP API over one evolution artifact.

The artifact is loaded once and held immutable in memory; every response
is derived from it and nothing else, so identical requests always return
identical bodies.  No mutation endpoints exist.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import RedirectResponse
from fastapi.staticfiles import StaticFiles


class ArtifactIndex:
    """Lookup structures for one loaded artifact document."""

    def __init__(self, doc: dict):
        self.doc = doc
        self.groups = {g["label"]: g for g in doc["groups"]}
        self.by_slot: dict[int, list[dict]] = {}
        for g in doc["groups"]:
            self.by_slot.setdefault(g["slot"], []).append(g)
        self.slots = {s["slot"]: s for s in doc["slots"]}
        self.hierarchies = {h["id"]: h for h in doc["hierarchies"]}
        self.layouts = {l["hierarchy"]: l for l in doc.get("layouts", [])}
        self.transitions = doc["transitions"]
        self.incoming: dict[str, list[dict]] = {}
        self.outgoing: dict[str, list[dict]] = {}
        for t in self.transitions:
            self.outgoing.setdefault(t["src"], []).append(t)
            self.incoming.setdefault(t["dst"], []).append(t)

    def node_position(self, label: str) -> tuple[float, float] | None:
        hid = self.groups[label]["hierarchy"]
        layout = self.layouts.get(hid)
        if not layout:
            return None
        for node in layout["nodes"]:
            if node["id"] == label:
                return node["x"], node["y"]
        return None

    def overlaps_of(self, label: str) -> list[dict]:
        group = self.groups[label]
        members = set(group["members"])
        out = []
        for other in self.by_slot[group["slot"]]:
            if other["label"] == label:
                continue
            common = sorted(members & set(other["members"]))
            if common:
                out.append(
                    {
                        "label": other["label"],
                        "count": len(common),
                        "common_members": common,
                    }
                )
        out.sort(key=lambda o: (-o["count"], o["label"]))
        return out


def create_app(doc: dict, static_dir: str | Path | None = None) -> FastAPI:
    index = ArtifactIndex(doc)
    app = FastAPI(title="gevi", version=doc.get("schema", ""), docs_url="/api/docs")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )

    @app.get("/api/hierarchies")
    def list_hierarchies() -> list[dict]:
        return [
            {
                "id": h["id"],
                "group_count": len(h["groups"]),
                "stable_count": h["stable_count"],
                "slot_min": h["slot_min"],
                "slot_max": h["slot_max"],
            }
            for h in doc["hierarchies"]
        ]

    @app.get("/api/hierarchies/{hid}/graph")
    def hierarchy_graph(hid: int) -> dict:
        if hid not in index.hierarchies:
            raise HTTPException(404, f"no hierarchy {hid}")
        layout = index.layouts.get(hid)
        if layout is None:
            raise HTTPException(404, f"hierarchy {hid} has no layout")
        nodes = []
        for node in layout["nodes"]:
            payload = dict(node)
            if not node["dummy"]:
                g = index.groups[node["id"]]
                payload.update(
                    size=g["size"],
                    flows=g["flows"],
                    stable=g["stable"],
                    events=g["events"],
                )
            nodes.append(payload)
        edges = []
        for edge in layout["edges"]:
            payload = dict(edge)
            if edge["transition"] is not None:
                t = index.transitions[edge["transition"]]
                payload.update(
                    kind=t["kind"], mj=t["mj"], stability=t["stability"], flow=t["flow"]
                )
            edges.append(payload)
        return {"hierarchy": hid, "nodes": nodes, "edges": edges}

    @app.get("/api/groups/{label}")
    def group_detail(label: str) -> dict:
        g = index.groups.get(label.strip())
        if g is None:
            raise HTTPException(404, f"no group {label!r}")
        return {
            **g,
            "incoming": index.incoming.get(g["label"], []),
            "outgoing": index.outgoing.get(g["label"], []),
        }

    @app.get("/api/groups/{label}/overlaps")
    def group_overlaps(label: str) -> dict:
        g = index.groups.get(label.strip())
        if g is None:
            raise HTTPException(404, f"no group {label!r}")
        return {
            "label": g["label"],
            "slot": g["slot"],
            "overlaps": index.overlaps_of(g["label"]),
        }

    @app.get("/api/slots/{slot}/stats")
    def slot_stats(slot: int) -> dict:
        entry = index.slots.get(slot)
        if entry is None:
            raise HTTPException(404, f"no slot {slot}")
        return entry

    @app.get("/api/search")
    def search(q: str = Query(min_length=1)) -> dict:
        label = q.strip()
        g = index.groups.get(label)
        if g is None:
            raise HTTPException(404, f"no group named {label!r}")
        position = index.node_position(g["label"])
        return {
            "label": g["label"],
            "slot": g["slot"],
            "ordinal": g["ordinal"],
            "size": g["size"],
            "hierarchy": g["hierarchy"],
            "x": position[0] if position else None,
            "y": position[1] if position else None,
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

        @app.get("/", include_in_schema=False)
        def root() -> RedirectResponse:
            return RedirectResponse("/ui/")

    return app


def serve(doc: dict, host: str, port: int, static_dir: str | Path | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(doc, static_dir), host=host, port=port, log_level="info")
