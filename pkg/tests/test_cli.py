"""Tests for the command-line front end: parsing, output formats, exit codes."""

import csv
import io
import json
import math

import numpy as np
import pytest

from tailbounds.bounds import MartingaleConditions, tail_bound_range
from tailbounds.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return rows


class TestBoundCommand:
    def test_range_theorem_row(self, capsys):
        code, out, _ = run_cli(
            ["bound", "--theorem", "1.2", "--n", "2", "--p", "0.5", "--x", "1"], capsys
        )
        assert code == 0
        (row,) = parse_csv(out)
        assert float(row["exact"]) == pytest.approx(0.25, rel=1e-12)
        assert float(row["hull_value"]) == pytest.approx(0.25, rel=1e-12)
        assert float(row["raw"]) == pytest.approx(0.6795704571147613, rel=1e-12)

    def test_beyond_support_row(self, capsys):
        code, out, _ = run_cli(
            ["bound", "--theorem", "1.2", "--n", "2", "--p", "0.5", "--x", "2"], capsys
        )
        assert code == 0
        (row,) = parse_csv(out)
        assert float(row["exact"]) == 0.0
        assert float(row["hull_value"]) == 0.0
        assert float(row["raw"]) == 0.0

    def test_symmetric_gaussian_column(self, capsys):
        code, out, _ = run_cli(
            ["bound", "--theorem", "1.3", "--n", "2", "--a", "1", "--x", "0"], capsys
        )
        assert code == 0
        (row,) = parse_csv(out)
        assert float(row["coarse_raw"]) == pytest.approx(2 * math.e**3 / 9 * 0.5, rel=1e-12)
        assert float(row["coarse_clamped"]) == 1.0
        assert row["hoeffding"] == ""

    def test_round_trip_matches_library(self, capsys):
        code, out, _ = run_cli(
            ["bound", "--theorem", "1.2", "--n", "3", "--p", "0.4", "--x", "0.7"], capsys
        )
        (row,) = parse_csv(out)
        cond = MartingaleConditions.range_condition(np.full(3, 0.4))
        assert float(row["raw"]) == tail_bound_range(cond, 0.7).value

    def test_x_range_sweep(self, capsys):
        code, out, _ = run_cli(
            [
                "bound", "--theorem", "1.1", "--n", "2", "--sigma2", "1", "--b", "1",
                "--x-min", "-2", "--x-max", "2", "--x-step", "1",
            ],
            capsys,
        )
        assert code == 0
        rows = parse_csv(out)
        assert [float(r["x"]) for r in rows] == [-2.0, -1.0, 0.0, 1.0, 2.0]

    def test_bit_stable_output(self, capsys):
        args = ["bound", "--theorem", "1.2", "--n", "4", "--p", "0.3", "--x", "1.1"]
        _, out1, _ = run_cli(args, capsys)
        _, out2, _ = run_cli(args, capsys)
        assert out1 == out2

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            ["bound", "--theorem", "1.2", "--n", "2", "--p", "0.5", "--x", "1", "--format", "json"],
            capsys,
        )
        assert code == 0
        rows = json.loads(out)
        assert rows[0]["raw"] == pytest.approx(0.6795704571147613, rel=1e-15)

    def test_clamp_flag(self, capsys):
        _, out, _ = run_cli(
            ["bound", "--theorem", "1.2", "--n", "2", "--p", "0.5", "--x", "-3", "--clamp"], capsys
        )
        (row,) = parse_csv(out)
        assert float(row["raw"]) == 1.0

    def test_missing_parameters_exit_2(self, capsys):
        code, _, err = run_cli(["bound", "--theorem", "1.1", "--n", "2", "--x", "1"], capsys)
        assert code == 2
        assert "error" in err


class TestHullCommand:
    def test_counterexample_flags_dropped_knot(self, capsys):
        code, out, _ = run_cli(
            ["hull", "--atoms", "0:0.9801,0.1:0.0099,1:0.0099,1.1:0.0001"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        flags = {float(r["x"]): int(r["on_hull"]) for r in rows}
        assert flags[0.1] == 0
        assert flags[0.0] == 1 and flags[1.0] == 1 and flags[1.1] == 1

    def test_binomial_keeps_every_knot(self, capsys):
        code, out, _ = run_cli(["hull", "--p", "0.3", "--n", "8"], capsys)
        rows = parse_csv(out)
        assert code == 0
        assert all(int(r["on_hull"]) == 1 for r in rows)

    def test_single_atom_pair(self, capsys):
        code, out, _ = run_cli(["hull", "--sigma2", "0.5", "--b", "1", "--n", "1"], capsys)
        rows = parse_csv(out)
        assert len(rows) == 2
        assert float(rows[0]["survival"]) == 1.0

    def test_invalid_distribution_exit_2(self, capsys):
        code, _, err = run_cli(["hull", "--atoms", "0:0.5,1:0.7"], capsys)
        assert code == 2


class TestLemma42Command:
    def test_margins_negative(self, capsys):
        code, out, _ = run_cli(
            ["lemma42", "--sigma2", "0.25", "--b", "0.5", "--n", "4", "--s", "1,2"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        assert rows
        assert all(float(r["margin"]) <= 1e-9 for r in rows)
        assert {float(r["s"]) for r in rows} == {1.0, 2.0}


class TestVerifyCommand:
    def test_fast_suite_passes(self, capsys):
        code, out, _ = run_cli(["verify", "--suite", "lemma48", "--seed", "7"], capsys)
        assert code == 0
        assert "suite=lemma48" in out
        assert "failures=0" in out

    def test_unknown_suite_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nonsense"])
        assert exc.value.code == 2


class TestConfidenceCommand:
    def test_basic(self, capsys):
        code, out, _ = run_cli(
            ["confidence", "--n", "100", "--mean", "0.5", "--delta", "0.05"], capsys
        )
        assert code == 0
        (row,) = parse_csv(out)
        mu = float(row["upper_limit"])
        assert 0.5 < mu < 1.0
        assert float(row["bound_at_limit"]) == pytest.approx(0.05, abs=1e-6)

    def test_no_room_above(self, capsys):
        code, out, _ = run_cli(
            ["confidence", "--n", "10", "--mean", "1", "--delta", "0.05"], capsys
        )
        (row,) = parse_csv(out)
        assert float(row["upper_limit"]) == 1.0

    def test_bad_mean_exit_2(self, capsys):
        code, _, err = run_cli(
            ["confidence", "--n", "10", "--mean", "1.4", "--delta", "0.05"], capsys
        )
        assert code == 2


class TestOutputFile:
    def test_out_writes_file(self, tmp_path, capsys):
        target = tmp_path / "rows.csv"
        code, out, _ = run_cli(
            ["bound", "--theorem", "1.2", "--n", "2", "--p", "0.5", "--x", "1", "--out", str(target)],
            capsys,
        )
        assert code == 0
        assert out == ""
        rows = parse_csv(target.read_text())
        assert float(rows[0]["raw"]) == pytest.approx(0.6795704571147613, rel=1e-12)
