import pytest
from fastapi.testclient import TestClient

from gevi import service


@pytest.fixture(scope="module")
def client(toy_artifact):
    return TestClient(service.create_app(toy_artifact))


def test_hierarchies_listing(client, toy_artifact):
    body = client.get("/api/hierarchies").json()
    assert [h["id"] for h in body] == [h["id"] for h in toy_artifact["hierarchies"]]
    for entry, source in zip(body, toy_artifact["hierarchies"]):
        assert entry["group_count"] == len(source["groups"])
        assert entry["slot_min"] == source["slot_min"]


def test_hierarchy_graph_enriches_nodes_and_edges(client, toy_artifact):
    hid = toy_artifact["hierarchies"][0]["id"]
    body = client.get(f"/api/hierarchies/{hid}/graph").json()
    groups = {g["label"]: g for g in toy_artifact["groups"]}
    real = [n for n in body["nodes"] if not n["dummy"]]
    assert real, "hierarchy graph lost its real nodes"
    for node in real:
        g = groups[node["id"]]
        assert node["size"] == g["size"]
        assert node["flows"] == g["flows"]
        assert node["stable"] == g["stable"]
    for edge in body["edges"]:
        if edge["transition"] is not None:
            ref = toy_artifact["transitions"][edge["transition"]]
            assert edge["kind"] == ref["kind"]
            assert edge["style"] == ref["style"]
            assert edge["flow"] == ref["flow"]


def test_hierarchy_graph_unknown_id_404(client):
    assert client.get("/api/hierarchies/999/graph").status_code == 404


def test_group_detail_includes_incident_transitions(client, toy_artifact):
    linked = {t["src"] for t in toy_artifact["transitions"]}
    label = sorted(linked)[0]
    body = client.get(f"/api/groups/{label}").json()
    assert body["label"] == label
    assert body["members"]
    expected_out = [t for t in toy_artifact["transitions"] if t["src"] == label]
    assert len(body["outgoing"]) == len(expected_out)
    for got, ref in zip(body["outgoing"], expected_out):
        assert got["dst"] == ref["dst"]
        assert got["stability"] == ref["stability"]


def test_group_detail_unknown_label_404(client):
    response = client.get("/api/groups/999_9")
    assert response.status_code == 404


def test_group_overlaps_lists_common_members(client, toy_artifact):
    by_slot = {}
    for g in toy_artifact["groups"]:
        by_slot.setdefault(g["slot"], []).append(g)
    label = None
    expected = None
    for slot_groups in by_slot.values():
        for g in slot_groups:
            others = [
                (o["label"], sorted(set(o["members"]) & set(g["members"])))
                for o in slot_groups
                if o["label"] != g["label"] and set(o["members"]) & set(g["members"])
            ]
            if label is None:  # any group works; overlapping one preferred
                label, expected = g["label"], others
            if others:
                label, expected = g["label"], others
    body = client.get(f"/api/groups/{label}/overlaps").json()
    got = [(o["label"], o["common"]) for o in body["overlaps"]]
    assert sorted(got) == sorted(expected)


def test_slot_stats_matches_artifact_series(client, toy_artifact):
    entry = toy_artifact["slots"][2]
    body = client.get(f"/api/slots/{entry['slot']}/stats").json()
    assert body == entry
    assert client.get("/api/slots/9999/stats").status_code == 404


def test_search_returns_position(client, toy_artifact):
    label = toy_artifact["groups"][0]["label"]
    body = client.get("/api/search", params={"q": f"  {label} "}).json()
    assert body["label"] == label
    assert body["x"] is not None and body["y"] is not None
    layout_nodes = {
        n["id"]: n for l in toy_artifact["layouts"] for n in l["nodes"]
    }
    assert body["x"] == layout_nodes[label]["x"]


def test_search_misses(client):
    assert client.get("/api/search", params={"q": "42_42"}).status_code == 404
    assert client.get("/api/search", params={"q": ""}).status_code == 422
    assert client.get("/api/search").status_code == 422


def test_api_is_read_only(client):
    assert client.post("/api/hierarchies").status_code == 405
    assert client.delete("/api/groups/0_0").status_code == 405
