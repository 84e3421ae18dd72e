import json
from fractions import Fraction

from quatcohom import load_corpus
from quatcohom.fileio import document_from_spec, spec_from_document
from quatcohom.report import build_report, to_json, to_table


def test_document_is_json_native_and_deterministic():
    doc1 = build_report(load_corpus("example1"))
    doc2 = build_report(load_corpus("example1"))
    assert to_json(doc1) == to_json(doc2)
    assert json.loads(to_json(doc1)) == doc1


def test_algebra_echo_round_trips():
    spec = load_corpus("example2")
    doc = build_report(spec, {"t": Fraction(1, 3)})
    assert doc["bindings"] == {"t": "1/3"}
    again = spec_from_document(doc["algebra"])
    assert document_from_spec(again) == doc["algebra"]


def test_rows_ordered_by_degree():
    doc = build_report(load_corpus("example3"))
    degrees = [row["p"] for row in doc["cohomology"]["rows"]]
    assert degrees == list(range(7))


def test_verdict_presence_by_dimension():
    doc8 = build_report(load_corpus("torus8"))
    assert doc8["verdicts"]["applicable"] is True
    assert doc8["verdicts"]["hkt"]["answer"] == "yes"
    assert doc8["verdicts"]["hkt"]["certificate"] is not None

    doc12 = build_report(load_corpus("example3"))
    assert doc12["verdicts"]["applicable"] is False
    assert "hkt" not in doc12["verdicts"]


def test_suite_entries_in_document():
    doc = build_report(load_corpus("example1"))
    statuses = {entry["status"] for entry in doc["suite"]}
    assert statuses == {"pass"}
    names = [entry["name"] for entry in doc["suite"]]
    assert len(names) == len(set(names))


def test_table_mode_renders_without_loss():
    doc = build_report(load_corpus("example1"))
    text = to_table(doc)
    assert "structure: example1" in text
    assert "property suite:" in text
    for entry in doc["suite"]:
        assert entry["name"] in text
