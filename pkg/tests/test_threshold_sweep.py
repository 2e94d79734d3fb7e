"""Tests for scripts.threshold_sweep."""
import pytest

from gaussent.dynamics.analytic import NEVER, ReservoirKind
from scripts.threshold_sweep import SWEEP_COLUMNS, main, sweep


class TestSweep:
    def test_bisection_tracks_closed_form(self):
        for row in sweep([0.5, 2.5, 4.0], r=0.1):
            assert row["r_star_bisect"] == pytest.approx(row["r_star"], abs=1e-9)
            assert row["t_root"] == pytest.approx(row["t_closed"], abs=1e-9)

    def test_vacuum_reservoir_survives(self):
        (row,) = sweep([0.0], r=0.1)
        assert row["r_star"] == 0.0
        assert row["t_closed"] is NEVER
        assert row["t_root"] is NEVER

    def test_independent(self):
        (row,) = sweep([0.5], r=1.0, kind=ReservoirKind.INDEPENDENT)
        assert row["t_root"] == pytest.approx(row["t_closed"], abs=1e-9)

    def test_hottest_reservoir_brackets_threshold(self):
        (row,) = sweep([1e6], r=0.1)
        assert row["r_star"] > 5.0
        # n2 - c2 at the threshold is about 1/N, resolved only to ~1e-4 relative
        assert row["r_star_bisect"] == pytest.approx(row["r_star"], abs=1e-3)
        assert row["t_root"] == pytest.approx(row["t_closed"], rel=1e-6)


class TestMain:
    def test_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert main(["--nbar", "0,0.5", "--csv", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert len(lines) == 3
        assert lines[1].endswith(",,")
        assert "never" in capsys.readouterr().out

    def test_bad_list(self):
        assert main(["--nbar", "a,b"]) == 2

    def test_negative_nbar(self):
        assert main(["--nbar=-1"]) == 2

    def test_hottest_reservoir(self, capsys):
        assert main(["--nbar", "1e6"]) == 0
        assert "1e+06" in capsys.readouterr().out

    def test_nbar_above_guardrail(self):
        assert main(["--nbar", "2e6"]) == 2

    def test_squeezing_above_guardrail(self):
        assert main(["--r", "10"]) == 2
