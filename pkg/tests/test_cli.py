from __future__ import annotations

import json
import subprocess
import sys

import pytest

from bruhatstrata.cli import (
    EXIT_INVALID_WORD,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_UNKNOWN_SELECTOR,
    main,
)
from bruhatstrata.strata import StrataGraph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_seven_letter_permutation(self, capsys):
        code, out, _ = run(capsys, "analyze", "--perm", "45132")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["permutation"] == "[45132]"
        assert data["length"] == 7 and data["cycles"] == 2 and data["block"] == []
        assert [o["size"] for o in data["orbits"]] == [8, 16, 8]
        assert [o["N"] for o in data["orbits"]] == [2, 4, 6]
        assert data["d2_preancestries"] == 1
        assert data["totals"]["N"] == 128 == data["totals"]["vertices"]
        assert data["totals"]["components"] == 40

    def test_word_and_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "analyze", "--word", "1,2,3,1,2", "--out", str(target))
        assert code == EXIT_OK and out == ""
        data = json.loads(target.read_text())
        assert sorted(e["N"] for e in data["elements"]) == [1] * 8 + [3] * 8
        assert data["totals"]["components"] == 16

    @pytest.mark.parametrize(
        "argv, code",
        [
            (["analyze", "--word", "1,1"], EXIT_INVALID_WORD),
            (["analyze", "--word", "1,5", "--n", "3"], EXIT_INVALID_WORD),
            (["analyze", "--word", "a,b"], EXIT_PARSE),
            (["analyze", "--perm", "4513"], EXIT_PARSE),
            (["analyze"], EXIT_PARSE),
            (["analyze", "--word", "1", "--perm", "21"], EXIT_PARSE),
        ],
    )
    def test_errors(self, capsys, argv, code):
        got, out, err = run(capsys, *argv)
        assert got == code
        assert out == "" and err.startswith("bruhatstrata: error:")


class TestComponentsEta:
    @pytest.mark.parametrize("n, total", [(1, 2), (2, 6), (3, 20), (4, 52), (5, 96)])
    def test_totals(self, capsys, n, total):
        code, out, _ = run(capsys, "components-eta", "--n", str(n))
        assert code == EXIT_OK and out.strip() == str(total)

    @pytest.mark.slow
    def test_rank_six(self, capsys):
        code, out, _ = run(capsys, "components-eta", "--n", "6", "--threads", "2")
        assert code == EXIT_OK and out.strip() == "192"

    @pytest.mark.parametrize("n", ["0", "7"])
    def test_out_of_range(self, capsys, n):
        assert run(capsys, "components-eta", "--n", n)[0] == EXIT_PARSE


class TestExport:
    def test_dot_path_graph(self, capsys):
        code, out, _ = run(capsys, "export", "--perm", "4312", "--z=--+-+", "--format", "dot")
        assert code == EXIT_OK
        assert out.startswith("graph w_1_2_1_3_2 {")
        assert 'v0 [label="--+-+"];' in out
        assert 'v0 -- v1 [label="(-1,-2,+1,-1,+2)"];' in out
        assert 'v0 -- v2 [label="(-2,-1,+2,-1,+1)"];' in out
        assert out.count(" -- ") == 2

    def test_json_round_trip(self, capsys, tmp_path):
        target = tmp_path / "g.json"
        code, _, _ = run(capsys, "export", "--perm", "45132", "--z", "0", "--out", str(target))
        assert code == EXIT_OK
        data = json.loads(target.read_text())
        g = StrataGraph.from_json(data)
        assert g.to_json() == data

    def test_empty_word(self, capsys):
        code, out, _ = run(capsys, "export", "--word", "", "--n", "2")
        assert code == EXIT_OK
        assert json.loads(out)["vertices"] == [""]

    @pytest.mark.parametrize("selector", ["9", "+-", "x", "1,1,1"])
    def test_unknown_selector(self, capsys, selector):
        assert run(capsys, "export", "--perm", "4312", f"--z={selector}")[0] == EXIT_UNKNOWN_SELECTOR


def test_check_fast_level(capsys):
    code, out, _ = run(capsys, "check", "--level", "fast")
    assert code == EXIT_OK
    assert out.strip().endswith("11/11 criteria passed")
    assert out.count("[PASS]") == 11


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bruhatstrata", "components-eta", "--n", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "20"
