"""
Moment equations of the reservoir Fokker-Planck dynamics, integrated with a
fixed-step classical Runge-Kutta scheme.

A Gaussian state stays Gaussian under a linear Fokker-Planck equation, so the
covariance obeys the closed Lyapunov-type equation

    dV/dt = -(A V + V A^T) + D

with drift A = (gamma/2) M and diffusion D = (gamma N / 2) M, where M is the
mode-coupling pattern of the reservoir. This module is the independent check
on the closed-form propagators in gaussent.dynamics.analytic.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from gaussent.core.errors import DivergenceError, DomainError, PreconditionError
from gaussent.core.gaussian import CovarianceMatrix4, sum_diff_decompose
from gaussent.dynamics.analytic import ReservoirKind, ReservoirModel

logger = logging.getLogger(__name__)

_PSD_TOL = 1e-12

# x couples to x and p to p across both modes
_COMMON_PATTERN = np.kron(np.ones((2, 2)), np.eye(2))
_INDEPENDENT_PATTERN = np.eye(4)


@dataclass(frozen=True, eq=False)
class MomentFlow:
    """Drift and diffusion of the covariance equation (both in units of 1/time)."""

    drift: np.ndarray
    diffusion: np.ndarray
    kind: ReservoirKind

    def __post_init__(self):
        drift = np.array(self.drift, dtype=float)
        diffusion = np.array(self.diffusion, dtype=float)
        if drift.shape != (4, 4) or diffusion.shape != (4, 4):
            raise DomainError("drift and diffusion must be 4x4")
        if np.max(np.abs(diffusion - diffusion.T)) > _PSD_TOL:
            raise DomainError("diffusion must be symmetric")
        if np.min(np.linalg.eigvalsh(diffusion)) < -_PSD_TOL:
            raise DomainError("diffusion must be positive semidefinite")
        drift.setflags(write=False)
        diffusion.setflags(write=False)
        object.__setattr__(self, "drift", drift)
        object.__setattr__(self, "diffusion", diffusion)
        object.__setattr__(self, "kind", ReservoirKind(self.kind))


def build_moment_flow(model: ReservoirModel, *, drop_diffusion_gamma: bool = False) -> MomentFlow:
    """
    Drift and diffusion for a reservoir model.

    drop_diffusion_gamma leaves the rate off the diffusion term; the resulting
    flow is wrong whenever gamma != 1 and exists only as a negative control.
    """
    if model.kind is ReservoirKind.COMMON:
        pattern = _COMMON_PATTERN
    else:
        pattern = _INDEPENDENT_PATTERN
    diffusion_rate = 1.0 if drop_diffusion_gamma else model.gamma
    if drop_diffusion_gamma:
        logger.warning("build_moment_flow: diffusion built without gamma (negative control)")
    return MomentFlow(
        drift=0.5 * model.gamma * pattern,
        diffusion=0.5 * diffusion_rate * model.noise * pattern,
        kind=model.kind,
    )


def moment_derivative(flow: MomentFlow, covariance: np.ndarray) -> np.ndarray:
    a = flow.drift
    return -(a @ covariance + covariance @ a.T) + flow.diffusion


def _rk4_step(flow: MomentFlow, v: np.ndarray, h: float) -> np.ndarray:
    k1 = moment_derivative(flow, v)
    k2 = moment_derivative(flow, v + 0.5 * h * k1)
    k3 = moment_derivative(flow, v + 0.5 * h * k2)
    k4 = moment_derivative(flow, v + h * k3)
    nxt = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return 0.5 * (nxt + nxt.T)


def _check_step(dt: float) -> None:
    if not (math.isfinite(dt) and dt > 0):
        raise DomainError(f"step must be positive and finite, got {dt!r}")


def _advance(
    flow: MomentFlow, v: np.ndarray, t_start: float, t_end: float, dt: float, step0: int
) -> tuple[np.ndarray, int]:
    span = t_end - t_start
    if span <= 0:
        return v, step0
    steps = max(1, math.ceil(span / dt - 1e-9))
    h = span / steps
    for i in range(1, steps + 1):
        v = _rk4_step(flow, v, h)
        if not np.all(np.isfinite(v)):
            raise DivergenceError(step0 + i, t_start + i * h)
    return v, step0 + steps


def integrate(
    flow: MomentFlow, initial: CovarianceMatrix4, t_end: float, dt: float
) -> CovarianceMatrix4:
    """
    Covariance at t_end from fixed-step RK4 with ceil(t_end/dt) equal steps,
    each no larger than dt. The iterate is symmetrised after every step.
    """
    _check_step(dt)
    if not (math.isfinite(t_end) and t_end >= 0):
        raise DomainError(f"t_end must be finite and >= 0, got {t_end!r}")
    if t_end > 0 and dt > t_end:
        raise DomainError(f"step {dt!r} exceeds integration span {t_end!r}")
    v, steps = _advance(flow, np.array(initial.entries), 0.0, t_end, dt, 0)
    logger.debug("integrate: kind=%s t_end=%.6g steps=%d", flow.kind.value, t_end, steps)
    return CovarianceMatrix4(v)


def integrate_checkpoints(
    flow: MomentFlow, initial: CovarianceMatrix4, times, dt: float
) -> list[CovarianceMatrix4]:
    """One integration pass returning the covariance at each (ascending) checkpoint."""
    _check_step(dt)
    checkpoints = [float(t) for t in times]
    if any(t < 0 or not math.isfinite(t) for t in checkpoints):
        raise DomainError("checkpoints must be finite and >= 0")
    if any(b < a for a, b in zip(checkpoints, checkpoints[1:])):
        raise DomainError("checkpoints must be sorted ascending")

    v = np.array(initial.entries)
    t_now = 0.0
    steps = 0
    result: list[CovarianceMatrix4] = []
    for t in checkpoints:
        v, steps = _advance(flow, v, t_now, t, dt, steps)
        t_now = max(t_now, t)
        result.append(CovarianceMatrix4(v))
    return result


def dfs_residual(flow: MomentFlow, initial: CovarianceMatrix4, grid, dt: float = 1e-3) -> float:
    """
    Largest max-norm change of the difference-mode block over the grid.

    Only the common reservoir leaves the difference mode untouched, so the
    check is refused for independent reservoirs.
    """
    if flow.kind is not ReservoirKind.COMMON:
        raise PreconditionError("decoherence-free residual is defined for the common reservoir only")
    reference = sum_diff_decompose(initial).diff_block
    residual = 0.0
    for covariance in integrate_checkpoints(flow, initial, grid, dt):
        block = sum_diff_decompose(covariance).diff_block
        residual = max(residual, float(np.max(np.abs(block - reference))))
    return residual


def convergence_ratio(
    flow: MomentFlow,
    initial: CovarianceMatrix4,
    t_end: float,
    dt: float,
    exact: CovarianceMatrix4,
) -> float:
    """error(dt) / error(dt/2) in max norm; close to 16 for a fourth-order scheme."""
    coarse = integrate(flow, initial, t_end, dt)
    fine = integrate(flow, initial, t_end, dt / 2.0)
    coarse_err = float(np.max(np.abs(coarse.entries - exact.entries)))
    fine_err = float(np.max(np.abs(fine.entries - exact.entries)))
    if fine_err == 0:
        return math.inf
    return coarse_err / fine_err
