import json
from pathlib import Path

import pytest

from gevi import artifact
from gevi.ingest import SlotGraph
from tests.conftest import graph, group, slot


def test_write_json_atomic_leaves_no_temp_files(tmp_path):
    target = tmp_path / "deep" / "doc.json"
    artifact.write_json_atomic({"schema": "x/1", "v": 1}, target)
    assert json.loads(target.read_text()) == {"schema": "x/1", "v": 1}
    assert [p.name for p in target.parent.iterdir()] == ["doc.json"]


def test_write_json_atomic_rejects_unserializable_and_keeps_old_file(tmp_path):
    target = tmp_path / "doc.json"
    artifact.write_json_atomic({"v": 1}, target)
    with pytest.raises(TypeError):
        artifact.write_json_atomic({"v": object()}, target)
    assert json.loads(target.read_text()) == {"v": 1}
    assert [p.name for p in target.parent.iterdir()] == ["doc.json"]


def test_slots_document_round_trip(tmp_path):
    slots = [slot(0, 0, 30), slot(1, 15, 45)]
    graphs = [
        graph(0, [("a", "b", 2), ("b", "c", 1)]),
        graph(1, [("a", "b", 1)]),
    ]
    doc = artifact.slots_document({"k": 3}, slots, graphs, [3, 1], {"parsed": 4})
    path = tmp_path / "slots.json"
    artifact.write_json_atomic(doc, path)
    loaded_doc, loaded_slots, loaded_graphs = artifact.load_slots_document(path)
    assert loaded_doc["config"] == {"k": 3}
    assert loaded_slots == slots
    for orig, back in zip(graphs, loaded_graphs):
        assert back.vertices == orig.vertices
        assert back.edges == orig.edges
        assert isinstance(back, SlotGraph)


def test_load_slots_document_rejects_wrong_schema(tmp_path):
    path = tmp_path / "other.json"
    path.write_text(json.dumps({"schema": "gevi.artifact/1"}))
    with pytest.raises(ValueError):
        artifact.load_slots_document(path)


def test_groups_file_round_trip(tmp_path):
    groups = [group(3, 0, {"bob", "alice"}), group(3, 1, "xyz"), group(10, 0, "pq")]
    text = artifact.dump_groups(groups)
    assert text.splitlines()[0] == "3,0,alice;bob"
    path = tmp_path / "groups.txt"
    path.write_text(text)
    assert artifact.load_groups(path) == groups


def test_load_groups_rejects_malformed_line(tmp_path):
    path = tmp_path / "groups.txt"
    path.write_text("3,0,a;b\nnot a group line\n")
    with pytest.raises(ValueError, match=":2"):
        artifact.load_groups(path)


def test_load_artifact_validates_presence_of_layouts(tmp_path, toy_artifact):
    path = tmp_path / "a.json"
    stripped = {k: v for k, v in toy_artifact.items() if k != "layouts"}
    artifact.write_json_atomic(stripped, path)
    assert artifact.load_artifact(path)["schema"] == artifact.ARTIFACT_SCHEMA
    with pytest.raises(ValueError, match="layout"):
        artifact.load_artifact(path, require_layouts=True)


def test_artifact_groups_reference_valid_transitions(toy_artifact):
    labels = {g["label"] for g in toy_artifact["groups"]}
    for t in toy_artifact["transitions"]:
        assert t["src"] in labels and t["dst"] in labels
        assert (t["style"] == "dashed") == (t["kind"] in ("addition", "deletion"))
    for layout_doc in toy_artifact["layouts"]:
        for edge in layout_doc["edges"]:
            if edge["transition"] is not None:
                ref = toy_artifact["transitions"][edge["transition"]]
                assert edge["style"] == ref["style"]


def test_artifact_hierarchy_ids_consistent(toy_artifact):
    by_id = {h["id"]: set(h["groups"]) for h in toy_artifact["hierarchies"]}
    for g in toy_artifact["groups"]:
        assert g["label"] in by_id[g["hierarchy"]]
