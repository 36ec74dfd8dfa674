# tests/test_main.py

import json

import pytest

from incidence import load_graph
from main import run
from tests.conftest import fixture_path


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestTranspedanceCommand:
    def test_k3_value(self, capsys):
        code, out, _ = _run(capsys, "transpedance", "-g", fixture_path("k3"), "-s", "a", "-t", "b", "--pair", "a,b")
        assert code == 0
        assert out == "-2\n"

    def test_degenerate_pair_is_zero(self, capsys):
        code, out, _ = _run(capsys, "transpedance", "-g", fixture_path("k3"), "-s", "a", "-t", "b", "--pair", "a,a")
        assert code == 0
        assert out == "0\n"

    @pytest.mark.parametrize("method", ["contributor", "activation", "cofactor"])
    def test_house_methods(self, capsys, method):
        code, out, _ = _run(capsys, "transpedance", "-g", fixture_path("house_neg34"), "-s", "1", "-t", "2",
                            "--pair", "1,2", "--method", method)
        assert code == 0
        assert out == "-12\n"

    def test_perm_sign_json(self, capsys):
        code, out, _ = _run(capsys, "transpedance", "-g", fixture_path("k3_neg"), "-s", "a", "-t", "b",
                            "--pair", "a,b", "--sign", "perm", "--format", "json")
        assert code == 0
        assert json.loads(out) == -2

    def test_bad_pair(self, capsys):
        code, out, err = _run(capsys, "transpedance", "-g", fixture_path("k3"), "-s", "a", "-t", "b", "--pair", "a")
        assert code == 2
        assert out == ""
        assert "[ERROR]" in err


class TestExitCodes:
    def test_missing_file(self, capsys, tmp_path):
        code, _, err = _run(capsys, "tau", "-g", str(tmp_path / "nope.json"))
        assert code == 2
        assert "not found" in err

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, _ = _run(capsys, "tau", "-g", str(path))
        assert code == 2

    def test_invalid_utf8(self, capsys, tmp_path):
        path = tmp_path / "latin.json"
        path.write_bytes(b'{"edges":[{"ends":["a\xff","b"],"sign":1}]}')
        code, out, err = _run(capsys, "tau", "-g", str(path))
        assert code == 2
        assert out == ""
        assert "UTF-8" in err

    def test_incidences_not_a_list(self, capsys, tmp_path):
        path = tmp_path / "scalar.json"
        path.write_text('{"edges":[{"id":"e1","incidences":5}]}', encoding="utf-8")
        code, _, err = _run(capsys, "tau", "-g", str(path))
        assert code == 2
        assert "[ERROR]" in err

    def test_unknown_flag(self, capsys):
        code, _, _ = _run(capsys, "tau", "-g", fixture_path("k3"), "--frobnicate")
        assert code == 2

    def test_unknown_vertex(self, capsys):
        code, _, _ = _run(capsys, "label", "-g", fixture_path("k3"), "-s", "a", "-t", "z")
        assert code == 2

    def test_arborescence_on_signed_graph(self, capsys):
        code, _, err = _run(capsys, "transpedance", "-g", fixture_path("house_neg34"), "-s", "1", "-t", "2",
                            "--pair", "1,2", "--method", "arborescence")
        assert code == 3
        assert "all-positive" in err

    def test_permanent_guard(self, capsys):
        code, _, _ = _run(capsys, "perm", "-g", fixture_path("k3"), "--perm-max", "2")
        assert code == 3

    def test_contributor_cap(self, capsys):
        code, _, _ = _run(capsys, "enumerate", "-g", fixture_path("k3"), "--cap", "3")
        assert code == 3


class TestVerifyCommand:
    def test_all_laws_hold(self, capsys):
        code, out, _ = _run(capsys, "verify", "-g", fixture_path("c5"), "-s", "1", "-t", "3")
        assert code == 0
        assert "RESULT: ALL LAWS HOLD" in out

    def test_violation_exit_code(self, capsys):
        code, out, _ = _run(capsys, "verify", "-g", fixture_path("house_neg34"), "-s", "1", "-t", "2",
                            "--format", "json")
        assert code == 1
        assert json.loads(out)["violated"] is True

    def test_threads_flag(self, capsys):
        code, _, _ = _run(capsys, "verify", "-g", fixture_path("k3"), "-s", "a", "-t", "b", "--threads", "3")
        assert code == 0


class TestOtherCommands:
    def test_matrix(self, capsys):
        code, out, _ = _run(capsys, "matrix", "-g", fixture_path("k3"))
        assert code == 0
        assert out.splitlines() == [" 2 -1 -1", "-1  2 -1", "-1 -1  2"]

    def test_tau_uses_underlying_graph(self, capsys):
        code, out, _ = _run(capsys, "tau", "-g", fixture_path("house_neg34"))
        assert code == 0
        assert out == "11\n"

    def test_tau_fixtures(self, capsys):
        assert _run(capsys, "tau", "-g", fixture_path("p3"))[1] == "1\n"
        assert _run(capsys, "tau", "-g", fixture_path("c4"))[1] == "4\n"

    def test_label_house_allpos_arborescence(self, capsys):
        code, out, _ = _run(capsys, "label", "-g", fixture_path("house_allpos"), "-s", "1", "-t", "2",
                            "--method", "arborescence", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["tau"] == 11
        assert {"from": "1", "to": "2", "value": -8, "multiplicity": 1} in data["labels"]

    def test_det_and_perm(self, capsys):
        assert _run(capsys, "det", "-g", fixture_path("k3"))[1] == "0\n"
        assert _run(capsys, "perm", "-g", fixture_path("k3"))[1] == "16\n"

    def test_label_dot(self, capsys):
        code, out, _ = _run(capsys, "label", "-g", fixture_path("k3"), "-s", "a", "-t", "b", "--format", "dot")
        assert code == 0
        assert out.count("->") == 6

    def test_enumerate_all(self, capsys):
        code, out, _ = _run(capsys, "enumerate", "-g", fixture_path("k3"), "--format", "json")
        assert code == 0
        assert len(json.loads(out)) == 16

    def test_enumerate_reduced(self, capsys):
        code, out, _ = _run(capsys, "enumerate", "-g", fixture_path("k3"), "-s", "a", "-t", "b", "--pair", "a,c")
        assert code == 0
        assert out == "c->b(bc)\nTOTAL: 1\n"

    def test_enumerate_needs_full_restriction(self, capsys):
        code, _, _ = _run(capsys, "enumerate", "-g", fixture_path("k3"), "-s", "a")
        assert code == 2

    def test_enumerate_classes(self, capsys):
        code, out, _ = _run(capsys, "enumerate", "-g", fixture_path("c5"), "-s", "1", "-t", "3",
                            "--pair", "1,2", "--classes", "--format", "json")
        assert code == 0
        assert sorted(r["size"] for r in json.loads(out)) == [1, 1, 1, 2]

    def test_enumerate_classes_empty(self, capsys):
        code, out, _ = _run(capsys, "enumerate", "-g", fixture_path("k3"), "-s", "a", "-t", "b",
                            "--pair", "c,c", "--classes")
        assert code == 0
        assert out == "CLASSES: 0\n"

    def test_gen_is_byte_stable(self, capsys):
        first = _run(capsys, "gen", "-n", "6", "-p", "0.6", "-q", "0.3", "--seed", "42")
        second = _run(capsys, "gen", "-n", "6", "-p", "0.6", "-q", "0.3", "--seed", "42")
        assert first[0] == 0
        assert first[1] == second[1]
        assert json.loads(first[1])["vertices"] == ["1", "2", "3", "4", "5", "6"]

    def test_gen_to_file(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        code, out, _ = _run(capsys, "gen", "-n", "4", "-p", "1.0", "--seed", "1", "-o", str(path))
        assert code == 0
        assert out == ""
        assert len(load_graph(str(path)).edges) == 6
