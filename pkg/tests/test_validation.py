"""Tests for gaussent.validation."""
import pytest

from gaussent.config import RunConfig
from gaussent.validation import (
    CheckResult,
    ValidationReport,
    check_criteria,
    check_dfs,
    check_oracle_agreement,
    measure_convergence,
    run_validation,
)


@pytest.fixture
def small_config():
    return RunConfig(r_list=[0.1, 1.0], nbar_list=[0.0, 0.5], points=12, dt=2e-3)


class TestReport:
    def test_line_format(self):
        line = CheckResult("dfs-residual", 1.5e-13, 1e-8, True).line()
        assert line == "PASS dfs-residual: 1.500e-13 (threshold 1.0e-08)"

    def test_failing_names(self):
        report = ValidationReport(
            checks=[
                CheckResult("a", 0.0, 1.0, True),
                CheckResult("b", 2.0, 1.0, False),
            ]
        )
        assert not report.passed
        assert report.failing == ["b"]


class TestChecks:
    def test_oracle_agreement(self, small_config):
        result = check_oracle_agreement(small_config)
        assert result.passed, result.line()

    def test_criteria(self, small_config):
        sign, spectrum = check_criteria(small_config)
        assert sign.passed, sign.line()
        assert sign.value == 0.0
        assert spectrum.passed, spectrum.line()

    def test_criteria_on_full_grid(self):
        config = RunConfig(r_list=[0.0, 0.1, 0.5, 1.0, 2.0], nbar_list=[0.0, 0.5, 2.5, 4.0], points=50)
        sign, spectrum = check_criteria(config)
        assert sign.passed, sign.line()
        assert spectrum.passed, spectrum.line()

    def test_dfs(self, small_config):
        assert check_dfs(small_config).passed

    def test_convergence_ratio(self, small_config):
        assert 12.0 <= measure_convergence(small_config) <= 20.0


class TestRunValidation:
    def test_passes(self, small_config):
        report = run_validation(small_config)
        assert report.passed, report.lines()
        assert [c.name for c in report.checks] == [
            "oracle-agreement",
            "sign-agreement",
            "spectrum-oracle",
            "dfs-residual",
        ]
        assert report.notes[0].startswith("INFO convergence ratio")

    def test_missing_gamma_on_diffusion_fails(self):
        config = RunConfig(r_list=[1.0], nbar_list=[0.5], points=5, dt=1e-2)
        report = run_validation(config, drop_diffusion_gamma=True)
        assert not report.passed
        assert "oracle-agreement" in report.failing
