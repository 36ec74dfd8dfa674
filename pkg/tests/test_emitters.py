# tests/test_emitters.py

import json

import pytest

from activation import tail_classes
from contributors import enumerate_contributors, enumerate_reduced_nonzero
from emitters import emit
from errors import CapabilityError
from incidence import laplacian
from kirchhoff_laws import full_report, label_edges


class TestLabelingOutput:
    def test_dot_has_one_arc_per_ordered_adjacency(self, k3):
        text = emit(label_edges(k3, "a", "b"), "dot")
        assert text.startswith("digraph transpedance {")
        assert text.count("->") == 6
        assert '"a" -> "b" [label="-2"];' in text

    def test_json_is_sorted_and_stable(self, k3):
        lab = label_edges(k3, "a", "b")
        text = emit(lab, "json")
        assert text == emit(label_edges(k3, "a", "b"), "json")
        data = json.loads(text)
        assert data["tau"] == 3
        assert list(data) == sorted(data)

    def test_csv(self, c5):
        rows = emit(label_edges(c5, "1", "3"), "csv").splitlines()
        assert rows[0] == "from,to,value,multiplicity"
        assert "1,2,-3,1" in rows

    def test_text(self, k3):
        text = emit(label_edges(k3, "a", "b"), "text")
        assert text.splitlines()[0] == "SOURCE: a | SINK: b | SIGN: det | METHOD: contributor"
        assert "TAU: 3" in text


class TestReportOutput:
    def test_text_result_line(self, c5):
        text = emit(full_report(c5, "1", "3"), "text")
        assert text.rstrip().endswith("RESULT: ALL LAWS HOLD")

    def test_json_flags_violation(self, graph):
        data = json.loads(emit(full_report(graph("house_neg34"), "1", "2"), "json"))
        assert data["violated"] is True
        assert [v["law"] for v in data["verdicts"]][0] == "degeneracy"

    def test_csv_residual_rows(self, k3):
        rows = emit(full_report(k3, "a", "b"), "csv").splitlines()
        assert rows[0] == "law,where,residual,residual_d"
        assert "cycle-conservation,a b c,0,0" in rows

    def test_dot_unsupported(self, k3):
        with pytest.raises(CapabilityError):
            emit(full_report(k3, "a", "b"), "dot")


class TestEnumerationOutput:
    def test_json_records(self, k3):
        data = json.loads(emit(list(enumerate_contributors(k3)), "json"))
        assert len(data) == 16
        assert all(len(record) == 3 for record in data)

    def test_empty_enumeration(self, k3):
        assert emit([], "json") == "[]\n"
        assert emit(list(enumerate_reduced_nonzero(k3, ("a", "a"), ("b", "c"))), "text") == "TOTAL: 0\n"

    def test_text_moves(self, k3):
        found = list(enumerate_reduced_nonzero(k3, ("a", "b"), ("a", "c")))
        assert emit(found, "text") == "c->b(bc)\nTOTAL: 1\n"

    def test_classes(self, c5):
        text = emit(tail_classes(c5, ("1", "3"), ("1", "2")), "text")
        assert text.rstrip().endswith("CLASSES: 4")
        with pytest.raises(CapabilityError):
            emit(tail_classes(c5, ("1", "3"), ("1", "2")), "csv")


class TestScalarsAndMatrices:
    def test_matrix_csv_uses_labels(self, k3):
        rows = emit(laplacian(k3), "csv").splitlines()
        assert rows == ["a,b,c", "2,-1,-1", "-1,2,-1", "-1,-1,2"]

    def test_value(self):
        assert emit(-12, "text") == "-12\n"
        assert emit(-12, "json") == "-12\n"
        with pytest.raises(CapabilityError):
            emit(5, "dot")

    def test_unknown_format(self, k3):
        with pytest.raises(CapabilityError):
            emit(laplacian(k3), "xml")

    def test_unknown_artifact(self):
        with pytest.raises(CapabilityError):
            emit({"a": 1}, "json")
