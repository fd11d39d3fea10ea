"""Command-line interface: subcommands, formats, exit codes, round trips."""

import json

import pytest

from arcposet import cli
from arcposet.diagram import parse
from arcposet.matrix import SymmetricMatrix
from arcposet.verify import CheckPoint, VerificationReport


def run(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInspect:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "inspect", "n=9; arcs=(1,4),(5,9),(6,8)")
        assert code == 0
        assert "free sites: 2 3 7" in out
        assert "tautology: 3" in out

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "inspect", "n=5; arcs=(1,3)")
        payload = json.loads(out)
        assert code == 0
        assert payload["schema"] == 1
        assert payload["free_sites"] == [2, 4, 5]

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "inspect", "bogus")
        assert code == 2
        assert "malformed" in err


class TestTransforms:
    def test_canonicalize_round_trip(self, capsys):
        code, out, _ = run(capsys, "canonicalize", "n=7; arcs=(1,4),(2,6)")
        assert code == 0
        assert parse(out.strip()) == parse("n=7; arcs=(1,6),(2,4)")

    def test_dual(self, capsys):
        code, out, _ = run(capsys, "dual", "n=5; arcs=(2,4)")
        assert code == 0 and out.strip() == "n=6; arcs=(2,5)"

    def test_blowup(self, capsys):
        code, out, _ = run(capsys, "blowup", "n=5; arcs=(1,3),(3,5)")
        assert code == 0 and out.strip() == "n=6; arcs=(1,3),(4,6)"

    def test_equiv(self, capsys):
        code, out, _ = run(
            capsys, "equiv", "n=7; arcs=(1,4),(2,6)", "n=7; arcs=(1,6),(2,4)"
        )
        assert code == 0 and out.strip() == "equivalent"
        code, out, _ = run(capsys, "equiv", "n=5; arcs=(1,3)", "n=5; arcs=(2,4)")
        assert code == 0 and out.strip() == "not equivalent"


class TestRealize:
    def test_from_file(self, capsys, tmp_path):
        matrix = SymmetricMatrix.from_entries(4, {(1, 3): 1})
        path = tmp_path / "matrix.json"
        path.write_text(matrix.to_json())
        code, out, _ = run(capsys, "realize", str(path))
        assert code == 0 and out.strip() == "n=5; arcs=(1,4)"

    def test_inline_json(self, capsys):
        code, out, _ = run(capsys, "realize", '{"order": 4, "rows": [[0,0,1,0],[0,0,0,0],[1,0,0,0],[0,0,0,0]]}')
        assert code == 0 and out.strip() == "n=5; arcs=(1,4)"

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "realize", "no-such-file.json")
        assert code == 2 and "cannot read" in err


class TestEnumAndPoset:
    def test_enum_counts_and_reparses(self, capsys):
        code, out, _ = run(capsys, "enum", "--family", "S", "--params", "n=5,k=1")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 10
        for line in lines:
            parse(line)

    def test_enum_matrices_reparse(self, capsys):
        code, out, _ = run(capsys, "enum", "--family", "M", "--params", "m=4,k=1,r=0")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 2
        for line in lines:
            SymmetricMatrix.from_json(line)

    def test_poset_stats_and_dot(self, capsys, tmp_path):
        dot = tmp_path / "out.dot"
        code, out, _ = run(
            capsys, "poset", "--family", "P", "--params", "f=4,k=1,r=0",
            "--dot", str(dot), "--stats",
        )
        assert code == 0
        assert "elements=10" in out
        assert dot.read_text().startswith("digraph")

    def test_cap_exit_3(self, capsys):
        code, _, err = run(
            capsys, "--cap", "5", "enum", "--family", "S", "--params", "n=6,k=2"
        )
        assert code == 3 and "cap" in err

    def test_bad_params_exit_2(self, capsys):
        code, _, err = run(capsys, "enum", "--family", "S", "--params", "n=five")
        assert code == 2

    def test_missing_params_exit_2(self, capsys):
        code, _, err = run(capsys, "enum", "--family", "S", "--params", "n=5")
        assert code == 2 and "parameter k" in err


class TestComplexAndHomology:
    def test_pipeline(self, capsys, tmp_path):
        facets = tmp_path / "facets.txt"
        code, out, _ = run(capsys, "complex", "--T", "6", "2", "--facets", str(facets))
        assert code == 0 and "3 facets" in out
        code, out, _ = run(capsys, "homology", "--facets", str(facets))
        assert code == 0 and out.strip() == "H~_1 = Z"

    def test_complex_to_stdout(self, capsys):
        code, out, _ = run(capsys, "complex", "--T", "6", "2")
        assert code == 0 and len(out.strip().splitlines()) == 3

    def test_homology_json(self, capsys, tmp_path):
        facets = tmp_path / "facets.txt"
        run(capsys, "complex", "--T", "6", "2", "--facets", str(facets))
        code, out, _ = run(capsys, "--format", "json", "homology", "--facets", str(facets))
        payload = json.loads(out)
        assert code == 0
        assert payload["groups"]["1"] == {"betti": 1, "torsion": []}

    def test_missing_facet_file(self, capsys):
        code, _, err = run(capsys, "homology", "--facets", "missing.txt")
        assert code == 2


class TestVerify:
    def test_passing_check(self, capsys):
        code, out, _ = run(capsys, "verify", "--check", "thm11", "--grid", "f=4,k=1")
        assert code == 0
        assert "thm11[f=4,k=1]: pass" in out

    def test_grid_splitting(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--check", "thm11", "--grid", "f=4,k=1;f=5,k=1"
        )
        assert code == 0
        assert out.count(": pass") == 3  # two points plus the summary line

    def test_unknown_check_exit_2(self, capsys):
        code, *_ = run(capsys, "verify", "--check", "nope")
        assert code == 2

    def test_failing_report_exit_1(self, capsys, monkeypatch):
        report = VerificationReport(
            "thm11", [CheckPoint({"f": 4, "k": 1}, False, "forced failure", 0.0)]
        )
        monkeypatch.setattr(cli, "run_check", lambda name, grid: report)
        code, out, _ = run(capsys, "verify", "--check", "thm11")
        assert code == 1
        assert "FAIL" in out

    def test_jobs_flag_does_not_change_output(self, capsys):
        _, base, _ = run(capsys, "verify", "--check", "thm11", "--grid", "f=4,k=1")
        _, jobs, _ = run(capsys, "--jobs", "4", "verify", "--check", "thm11", "--grid", "f=4,k=1")
        assert base == jobs
