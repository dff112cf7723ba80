"""End-to-end tests of the command-line interface.

Each test drives ``main`` with an argv list and checks stdout and the exit
code; exit conventions are 0 = positive, 1 = negative verdict, 2 = usage,
3 = budget exhausted.
"""

from __future__ import annotations

import json

import pytest

from ulrich import cli, search
from ulrich.cli import main
from ulrich.core import FlagType
from ulrich.search import SearchReport


def run(argv):
    """main() returns an int normally, raises SystemExit on usage errors."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


class TestCheck:
    def test_positive(self, capsys):
        assert run(["check", "12,4|3,0|-2,-8"]) == 0
        assert capsys.readouterr().out == "ULRICH\n"

    def test_negative_duplicate(self, capsys):
        assert run(["check", "5,3|0|-5"]) == 1
        assert capsys.readouterr().out == "NOT-ULRICH: duplicate-time 5\n"

    def test_negative_fractional(self, capsys):
        assert run(["check", "6,1|0|-3"]) == 1
        assert capsys.readouterr().out == "NOT-ULRICH: non-integral-time 9/2\n"

    def test_json(self, capsys):
        assert run(["check", "--json", "4|3,0|-2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {
            "schema": 1,
            "command": "check",
            "partition": "4|3,0|-2",
            "type": [1, 2, 1],
            "N": 5,
            "ulrich": True,
            "witness": None,
        }

    def test_bad_partition(self, capsys):
        assert run(["check", "1|1"]) == 2
        assert capsys.readouterr().err.startswith("error:")


class TestFamily:
    def test_p_u(self, capsys):
        assert run(["family", "p_u", "2"]) == 0
        assert capsys.readouterr().out == "17,5|4,2,-1,-3|-5,-15\n"

    def test_sign_string(self, capsys):
        assert run(["family", "one_n_one", "2", "+-"]) == 0
        assert capsys.readouterr().out == "3|2,-1|-3\n"

    def test_sporadic(self, capsys):
        assert run(["family", "sporadic", "322"]) == 0
        assert capsys.readouterr().out == "16,10,4|3,0|-2,-12\n"

    def test_json_fields(self, capsys):
        assert run(["family", "--json", "elongated", "1", "2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["partition"] == "12,8|7,6,1,-4,-5|-8"
        assert payload["type"] == [2, 5, 1]
        assert payload["N"] == 17

    def test_bad_parameter_value(self, capsys):
        assert run(["family", "p_u", "zero"]) == 2
        assert "bad parameter" in capsys.readouterr().err

    def test_family_rejects_bad_arguments(self, capsys):
        assert run(["family", "p_u", "0"]) == 2
        assert "family p_u:" in capsys.readouterr().err

    def test_wrong_arity(self, capsys):
        assert run(["family", "p_u"]) == 2
        assert "family p_u:" in capsys.readouterr().err

    def test_unknown_family(self):
        assert run(["family", "mystery", "1"]) == 2


class TestEnumerate:
    def test_small_type(self, capsys):
        assert run(["enumerate", "1,2,1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 5
        assert lines[-1].startswith("count 4 (complete,")

    def test_json(self, capsys):
        assert run(["enumerate", "--json", "2,2,2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["count"] == 2
        assert payload["completed"] is True
        # p_u(1) and its mirror, shifted to canonical position
        assert payload["classes"] == ["20,12|11,8|6,0", "20,14|12,9|8,0"]

    def test_baseline_method(self, capsys):
        assert run(["enumerate", "--method", "baseline", "1,2,1"]) == 0
        assert "count 4 (complete" in capsys.readouterr().out

    def test_budget_exhausted(self, capsys):
        assert run(["enumerate", "2,8,2", "--budget-seconds", "0.0001"]) == 3
        assert "INCOMPLETE" in capsys.readouterr().out

    def test_pipe_type_syntax(self, capsys):
        assert run(["enumerate", "2|2|2"]) == 0
        assert "count 2" in capsys.readouterr().out

    def test_bad_type(self, capsys):
        assert run(["enumerate", "2,x,2"]) == 2
        assert "bad type" in capsys.readouterr().err


class TestAnalyze:
    def test_three_block_ulrich(self, capsys):
        assert run(["analyze", "12,4|3,0|-2,-8"]) == 0
        out = capsys.readouterr().out
        assert "verdict: ULRICH" in out
        assert "type: 2,2,2  N: 12" in out
        assert "congruences: ok" in out
        assert "greedy word: acca" in out
        assert "dual: -2,-8|-10,-13|-14,-22" in out
        assert "rectangle rule: holds" in out
        assert "trapezoid rule: holds" in out

    def test_sumset_line(self, capsys):
        assert run(["analyze", "5,1|0|-3"]) == 0
        assert "sumset decomposition: A'=[0, 4] C'=[2] tiling [0,4]" \
            in capsys.readouterr().out

    def test_non_ulrich(self, capsys):
        assert run(["analyze", "5,3|0|-5"]) == 1
        out = capsys.readouterr().out
        assert "verdict: NOT-ULRICH (duplicate-time 5)" in out
        assert "sumset decomposition: none" in out
        assert "greedy word" not in out

    def test_congruence_violation(self, capsys):
        assert run(["analyze", "4|3,0|-1"]) == 1
        assert "congruences: VIOLATED" in capsys.readouterr().out

    def test_json(self, capsys):
        assert run(["analyze", "--json", "8,6|5,0|-2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["greedy_word"] == "aca"
        assert payload["rectangle_ok"] and payload["trapezoid_ok"]
        assert payload["ulrich"] is True


class TestVerify:
    def test_multistep_holds(self, capsys):
        assert run(["verify", "multistep", "5"]) == 0
        out = capsys.readouterr().out
        assert "type 1,1,1,1: 0 classes" in out
        assert out.splitlines()[-1] == \
            "HOLDS: no Ulrich partition with >= 4 blocks, total length <= 5"

    def test_conjecture_smallest(self, capsys):
        assert run(["verify", "conjecture", "9"]) == 0
        assert "HOLDS" in capsys.readouterr().out

    def test_checkpoint(self, tmp_path, capsys):
        path = str(tmp_path / "ck.jsonl")
        assert run(["verify", "multistep", "5", "--checkpoint", path]) == 0
        capsys.readouterr()
        assert run(["verify", "multistep", "5", "--checkpoint", path]) == 0
        assert "HOLDS" in capsys.readouterr().out
        with open(path) as fh:
            assert sum(1 for line in fh if line.strip()) == 6

    def test_json(self, capsys):
        assert run(["verify", "--json", "multistep", "4"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["holds"] is True
        assert payload["completed"] is True
        assert len(payload["types"]) == 1

    def test_inconclusive(self, capsys, monkeypatch):
        def fake_sweep(bound, limits, workers, checkpoint):
            ft = FlagType((3, 3, 3))
            return {ft.lengths: SearchReport(ft, (), 10, 0.01, False)}
        monkeypatch.setattr(search, "verify_conjecture_sweep", fake_sweep)
        assert run(["verify", "conjecture", "9"]) == 3
        out = capsys.readouterr().out
        assert "INCONCLUSIVE (budget exhausted)" in out
        assert "INCOMPLETE" in out

    def test_counterexample(self, capsys, monkeypatch):
        from ulrich.core import parse_partition
        def fake_sweep(bound, limits, workers, checkpoint):
            ft = FlagType((1, 1, 1, 1))
            fake = parse_partition("3|2|1|0")
            return {ft.lengths: SearchReport(ft, (fake,), 10, 0.01, True)}
        monkeypatch.setattr(search, "verify_no_multistep", fake_sweep)
        assert run(["verify", "multistep", "4"]) == 1
        assert "COUNTEREXAMPLE to:" in capsys.readouterr().out


class TestGeometry:
    def test_flagship(self, capsys):
        assert run(["geometry", "5|3,-1,-2,-4|-5"]) == 0
        out = capsys.readouterr().out
        assert "flag variety: steps 1,5 in n=6  dim 9  deg 252" in out
        assert "bundle rank: 70" in out
        assert "h^0: 17640" in out
        assert "identity h^0 = rank * deg: holds (70 * 252 = 17640)" in out

    def test_json(self, capsys):
        assert run(["geometry", "--json", "4|3,0|-2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["identity_holds"] is True
        assert payload["rank"] * payload["degree"] == payload["h0"]

    def test_non_ulrich_fails(self, capsys):
        assert run(["geometry", "5,3|0|-5"]) == 1
        assert "FAILS" in capsys.readouterr().out

    def test_explicit_polarization(self, capsys):
        assert run(["geometry", "--polarization", "1,1",
                    "5|3,-1,-2,-4|-5"]) == 0
        assert "deg 252" in capsys.readouterr().out

    def test_polarization_arity_error(self, capsys):
        assert run(["geometry", "--polarization", "1,1,1", "4|3,0|-2"]) == 2
        assert capsys.readouterr().err.startswith("error:")


class TestDiagram:
    def test_ascii(self, capsys):
        assert run(["diagram", "4|3,0|-2"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("t=  0")
        assert "#" in out

    def test_svg_stdout(self, capsys):
        assert run(["diagram", "4|3,0|-2", "--svg", "-"]) == 0
        assert capsys.readouterr().out.startswith("<svg")

    def test_svg_file(self, tmp_path, capsys):
        path = tmp_path / "out.svg"
        assert run(["diagram", "4|3,0|-2", "--svg", str(path)]) == 0
        assert path.read_text().startswith("<svg")
        assert capsys.readouterr().out == ""

    def test_json(self, capsys):
        assert run(["diagram", "--json", "4|3,0|-2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["rows"][0] == [4, 3, 0, -2]
        assert payload["coincidences"]["2"] == [[2, 3]]


class TestParser:
    def test_no_arguments(self):
        assert run([]) == 2

    def test_unknown_command(self):
        assert run(["transmogrify"]) == 2

    def test_console_script_entry(self):
        # the installed entry point resolves to cli.main
        import importlib.metadata as md
        eps = md.entry_points(group="console_scripts")
        ours = [ep for ep in eps if ep.name == "ulrich"]
        assert ours and ours[0].value == "ulrich.cli:main"
