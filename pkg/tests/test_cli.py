import json

import pytest

from gradedorders.cli import load_fixture, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, obj, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


MAXIMAL_TRIVIAL = {
    "kind": "pic-construction",
    "delta": {"ring": "Z", "prime": "2", "entries": [[0, 0], [0, 0]]},
    "radpower": 0,
}

GLOBAL_SIX = {
    "ring": "Z",
    "n": 2,
    "entries": [
        [{"factors": []}, {"factors": []}],
        [{"gen": 6}, {"factors": []}],
    ],
}


class TestCheck:
    def test_hereditary_exit_zero(self, tmp_path, capsys):
        code, out, _ = run(capsys, "check", write(tmp_path, MAXIMAL_TRIVIAL))
        assert code == 0
        assert "hereditary: True" in out

    def test_not_hereditary_exit_one(self, tmp_path, capsys):
        fixture = load_fixture("semiprime")
        code, out, _ = run(capsys, "check", write(tmp_path, fixture))
        assert code == 1
        assert "inner witness" in out

    def test_malformed_json_exit_two(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code, _, err = run(capsys, "check", str(path))
        assert code == 2
        assert "invalid JSON" in err

    def test_schema_violation_names_field(self, tmp_path, capsys):
        bad = {"kind": "pic-construction", "delta": {"ring": "Q"}}
        code, _, err = run(capsys, "check", write(tmp_path, bad))
        assert code == 2
        assert "ring" in err

    def test_json_report_is_deterministic(self, tmp_path, capsys):
        path = write(tmp_path, MAXIMAL_TRIVIAL)
        _, out1, _ = run(capsys, "check", path, "--json")
        _, out2, _ = run(capsys, "check", path, "--json")
        assert out1 == out2
        rep = json.loads(out1)
        assert rep["schema_version"] == "1"
        assert rep["report"]["hereditary"] is True


class TestPicent:
    def test_rational_analog(self, tmp_path, capsys):
        code, out, _ = run(capsys, "picent", write(tmp_path, GLOBAL_SIX))
        assert code == 0
        assert "Z/2 at (2)" in out and "Z/2 at (3)" in out

    def test_matrix_ring_trivial(self, tmp_path, capsys):
        trivial = {
            "ring": "Z",
            "n": 2,
            "entries": [
                [{"factors": []}, {"factors": []}],
                [{"factors": []}, {"factors": []}],
            ],
        }
        code, out, _ = run(capsys, "picent", write(tmp_path, trivial), "--json")
        assert code == 0
        assert json.loads(out)["report"]["factors"] == []

    def test_not_hereditary_exit_two(self, tmp_path, capsys):
        bad = {
            "ring": "Z",
            "n": 2,
            "entries": [
                [{"factors": []}, {"factors": []}],
                [{"gen": 4}, {"factors": []}],
            ],
        }
        code, _, err = run(capsys, "picent", write(tmp_path, bad))
        assert code == 2


class TestOracleCheck:
    def test_agreement(self, tmp_path, capsys):
        nonbasic = load_fixture("nonbasic")
        code, out, _ = run(
            capsys, "oracle-check", write(tmp_path, nonbasic), "--json"
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["report"]["agree"] is True
        assert rep["report"]["places"][0]["rank"] == 18

    def test_oversized_exit_two(self, tmp_path, capsys):
        big = {
            "kind": "pic-construction",
            "delta": {"ring": "Z", "prime": "2", "staircase": [1] * 15},
            "radpower": 0,
        }
        code, _, err = run(capsys, "oracle-check", write(tmp_path, big))
        assert code == 2


class TestExamples:
    def test_nonbasic_passes(self, capsys):
        code, out, _ = run(capsys, "example", "nonbasic")
        assert code == 0
        assert "FAIL" not in out

    def test_semiprime_passes(self, capsys):
        code, out, _ = run(capsys, "example", "semiprime", "--d", "3")
        assert code == 0
        assert "FAIL" not in out

    def test_unknown_example(self, capsys):
        code, _, err = run(capsys, "example", "whatever")
        assert code == 2

    def test_classify_fixture(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "classify", write(tmp_path, load_fixture("nonbasic")), "--json"
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["report"]["outer"] is True
