"""
Validation report: compares the closed-form propagators against the moment
integrator and cross-checks the separability machinery on a parameter grid.

Checks (name: metric, pass threshold):
    oracle-agreement    max |V_numeric - V_analytic|            < 1e-8
    sign-agreement      criterion disagreements (count)         == 0
    spectrum-oracle     max |lambda_numeric - lambda_closed|    < 1e-10
    dfs-residual        max difference-mode drift               < 1e-8
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from gaussent.config import RunConfig
from gaussent.core.entanglement import (
    SIGN_BAND,
    criterion_sign,
    log_negativity,
    simon_full,
    simon_reduced,
    symplectic_spectrum_general,
    symplectic_spectrum_pt,
)
from gaussent.core.gaussian import SqueezedVacuumParams, tmsv_covariance
from gaussent.dynamics.analytic import (
    ReservoirKind,
    ReservoirModel,
    evolve,
    times_for_grid,
)
from gaussent.dynamics.numeric import (
    build_moment_flow,
    convergence_ratio,
    dfs_residual,
    integrate_checkpoints,
)

logger = logging.getLogger(__name__)

VALIDATION_R_GRID = (0.0, 0.1, 0.5, 1.0, 2.0)
VALIDATION_NBAR_GRID = (0.0, 0.5, 2.5, 4.0)
ORACLE_GAMMA_TIMES = (0.5, 1.0, 2.0, 5.0)
DFS_GAMMA_TIMES = tuple(float(x) for x in np.linspace(0.0, 5.0, 11))

ORACLE_TOL = 1e-8
SPECTRUM_TOL = 1e-10
DFS_TOL = 1e-8
_CONVERGENCE_GAMMA_DT = 0.1
_CONVERGENCE_GAMMA_T = 2.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.value:.3e} (threshold {self.threshold:.1e}) {self.detail}".rstrip()


@dataclass
class ValidationReport:
    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks] + self.notes


def _models(config: RunConfig, kind: ReservoirKind, gamma: float):
    for nbar in config.nbar_list:
        yield ReservoirModel(kind, gamma=gamma, nbar=nbar)


def check_oracle_agreement(config: RunConfig, *, drop_diffusion_gamma: bool = False) -> CheckResult:
    """Integrator vs closed form at fixed gamma*t, for two coupling rates."""
    worst = 0.0
    worst_at = ""
    for kind in ReservoirKind:
        for gamma in (config.gamma, 2.0 * config.gamma):
            for model in _models(config, kind, gamma):
                flow = build_moment_flow(model, drop_diffusion_gamma=drop_diffusion_gamma)
                times = [gt / gamma for gt in ORACLE_GAMMA_TIMES]
                for r in config.r_list:
                    initial = tmsv_covariance(SqueezedVacuumParams(r))
                    numeric = integrate_checkpoints(flow, initial, times, config.dt / gamma)
                    for t, cov in zip(times, numeric):
                        exact = evolve(r, model, t).to_covariance()
                        dev = float(np.max(np.abs(cov.entries - exact.entries)))
                        if dev > worst:
                            worst = dev
                            worst_at = f"at {kind.value} gamma={gamma:g} r={r:g} nbar={model.nbar:g} gamma_t={gamma * t:g}"
    return CheckResult("oracle-agreement", worst, ORACLE_TOL, worst < ORACLE_TOL, worst_at)


def check_criteria(config: RunConfig) -> tuple[CheckResult, CheckResult]:
    """Full vs reduced Simon sign, negativity consistency, and the spectrum oracle."""
    mismatches = 0
    spectrum_dev = 0.0
    for kind in ReservoirKind:
        for model in _models(config, kind, config.gamma):
            grid = times_for_grid(model, config.points, config.tau_max)
            for r in config.r_list:
                for t in grid:
                    elems = evolve(r, model, t)
                    covariance = elems.to_covariance()
                    scale = elems.n1 * elems.n2
                    full_sign = criterion_sign(simon_full(covariance), scale**2 / 16.0)
                    reduced = simon_reduced(elems).simon_value
                    reduced_sign = criterion_sign(reduced, scale)
                    negativity = log_negativity(elems)
                    entangled = reduced_sign < 0
                    consistent = negativity > 0 if entangled else negativity < SIGN_BAND * max(1.0, scale)
                    if full_sign != reduced_sign or not consistent:
                        mismatches += 1
                        logger.warning(
                            "criterion mismatch: %s r=%g nbar=%g t=%g full=%d reduced=%d E=%.3e",
                            kind.value, r, model.nbar, t, full_sign, reduced_sign, negativity,
                        )
                    closed = symplectic_spectrum_pt(elems)
                    general = symplectic_spectrum_general(covariance, partial_transpose=True)
                    spectrum_dev = max(
                        spectrum_dev,
                        abs(closed.lambda1 - general.lambda1),
                        abs(closed.lambda2 - general.lambda2),
                    )
    sign = CheckResult(
        "sign-agreement",
        float(mismatches),
        0.0,
        mismatches == 0,
        f"({mismatches} disagreements)",
    )
    spectrum = CheckResult("spectrum-oracle", spectrum_dev, SPECTRUM_TOL, spectrum_dev < SPECTRUM_TOL)
    return sign, spectrum


def check_dfs(config: RunConfig, *, drop_diffusion_gamma: bool = False) -> CheckResult:
    """Difference-mode invariance under the common reservoir."""
    worst = 0.0
    times = [gt / config.gamma for gt in DFS_GAMMA_TIMES]
    for model in _models(config, ReservoirKind.COMMON, config.gamma):
        flow = build_moment_flow(model, drop_diffusion_gamma=drop_diffusion_gamma)
        for r in config.r_list:
            initial = tmsv_covariance(SqueezedVacuumParams(r))
            worst = max(worst, dfs_residual(flow, initial, times, config.dt / config.gamma))
    return CheckResult("dfs-residual", worst, DFS_TOL, worst < DFS_TOL)


def measure_convergence(config: RunConfig) -> float:
    model = ReservoirModel(ReservoirKind.COMMON, gamma=config.gamma, nbar=0.5)
    flow = build_moment_flow(model)
    t_end = _CONVERGENCE_GAMMA_T / config.gamma
    return convergence_ratio(
        flow,
        tmsv_covariance(SqueezedVacuumParams(1.0)),
        t_end,
        _CONVERGENCE_GAMMA_DT / config.gamma,
        evolve(1.0, model, t_end).to_covariance(),
    )


def run_validation(config: RunConfig, *, drop_diffusion_gamma: bool = False) -> ValidationReport:
    report = ValidationReport()
    report.checks.append(check_oracle_agreement(config, drop_diffusion_gamma=drop_diffusion_gamma))
    report.checks.extend(check_criteria(config))
    report.checks.append(check_dfs(config, drop_diffusion_gamma=drop_diffusion_gamma))
    ratio = measure_convergence(config)
    report.notes.append(
        f"INFO convergence ratio error(gamma_dt={_CONVERGENCE_GAMMA_DT})/error(gamma_dt={_CONVERGENCE_GAMMA_DT / 2}): {ratio:.2f}"
    )
    for check in report.checks:
        log = logger.info if check.passed else logger.warning
        log("validate: %s", check.line())
    return report
