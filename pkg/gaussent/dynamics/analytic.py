"""
Closed-form dynamics of the two-mode squeezed vacuum in a thermal environment.

Two couplings are covered: both modes damped by one common reservoir, or
each mode damped by its own reservoir. Both keep the covariance in standard
form, so a state is tracked by (n1, n2, c1, c2) alone.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import optimize

from gaussent.core.entanglement import (
    entanglement_margin,
    log_negativity,
    simon_reduced,
)
from gaussent.core.errors import DomainError, PreconditionError
from gaussent.core.gaussian import StandardFormElements, purity

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 400
DEFAULT_TAU_MAX = 0.9975

# Admits |r| on the survival boundary despite rounding in ln(2 nbar + 1)
_THRESHOLD_SLACK = 1e-12


class ReservoirKind(str, Enum):
    COMMON = "common"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class ReservoirModel:
    """Reservoir coupling: kind, rate gamma (1/time) and mean thermal photon number."""

    kind: ReservoirKind
    gamma: float
    nbar: float

    def __post_init__(self):
        object.__setattr__(self, "kind", ReservoirKind(self.kind))
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise DomainError(f"gamma must be positive and finite, got {self.gamma!r}")
        if not (math.isfinite(self.nbar) and self.nbar >= 0):
            raise DomainError(f"nbar must be finite and >= 0, got {self.nbar!r}")

    @property
    def noise(self) -> float:
        """N = 2 nbar + 1."""
        return 2.0 * self.nbar + 1.0

    @property
    def relaxation_rate(self) -> float:
        """Rate in the rescaled time tau = 1 - exp(-rate * t)."""
        if self.kind is ReservoirKind.COMMON:
            return 2.0 * self.gamma
        return self.gamma


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    tau: float
    elems: StandardFormElements
    simon_value: float
    negativity: float
    purity: float
    gamma: float = 1.0

    @property
    def gamma_t(self) -> float:
        return self.gamma * self.t


@dataclass(frozen=True)
class Never:
    """Disentanglement time of a state that stays entangled for all t."""

    def __repr__(self) -> str:
        return "NEVER"


NEVER = Never()


# ---------------------------------------------------------------------------
# Time axes
# ---------------------------------------------------------------------------


def _check_time(t: float) -> None:
    if math.isnan(t) or t < 0:
        raise DomainError(f"time must be >= 0, got {t!r}")


def _check_squeezing(r: float) -> None:
    if not math.isfinite(r):
        raise DomainError(f"squeezing parameter must be finite, got {r!r}")


def rescaled_time(model: ReservoirModel, t: float) -> float:
    """tau = 1 - exp(-2 gamma t) (common) or 1 - exp(-gamma t) (independent)."""
    _check_time(t)
    return -math.expm1(-model.relaxation_rate * t)


def time_from_tau(model: ReservoirModel, tau: float) -> float:
    if not 0.0 <= tau < 1.0:
        raise DomainError(f"tau must lie in [0, 1), got {tau!r}")
    return -math.log1p(-tau) / model.relaxation_rate


def tau_grid(points: int = DEFAULT_GRID_POINTS, tau_max: float = DEFAULT_TAU_MAX) -> list[float]:
    if points < 2:
        raise DomainError(f"grid needs at least 2 points, got {points}")
    if not 0.0 < tau_max < 1.0:
        raise DomainError(f"tau_max must lie in (0, 1), got {tau_max!r}")
    return [float(x) for x in np.linspace(0.0, tau_max, points)]


def times_for_grid(
    model: ReservoirModel,
    points: int = DEFAULT_GRID_POINTS,
    tau_max: float = DEFAULT_TAU_MAX,
) -> list[float]:
    """Uniform tau grid mapped back to times for the given model."""
    return [time_from_tau(model, tau) for tau in tau_grid(points, tau_max)]


# ---------------------------------------------------------------------------
# Propagators
# ---------------------------------------------------------------------------


def _require_kind(model: ReservoirModel, kind: ReservoirKind) -> None:
    if model.kind is not kind:
        raise PreconditionError(f"expected a {kind.value} reservoir, got {model.kind.value}")


def evolve_common(r: float, model: ReservoirModel, t: float) -> StandardFormElements:
    """Standard-form elements at time t for both modes in one common reservoir."""
    _require_kind(model, ReservoirKind.COMMON)
    _check_squeezing(r)
    tau = rescaled_time(model, t)
    n = model.noise
    cosh2r = math.cosh(2.0 * r)
    sinh2r = math.sinh(2.0 * r)
    shift_minus = (n - math.exp(-2.0 * r)) * tau
    shift_plus = (n - math.exp(2.0 * r)) * tau
    return StandardFormElements(
        n1=0.5 * (2.0 * cosh2r + shift_minus),
        n2=0.5 * (2.0 * cosh2r + shift_plus),
        c1=0.5 * (shift_minus - 2.0 * sinh2r),
        c2=0.5 * (shift_plus + 2.0 * sinh2r),
    )


def evolve_independent(r: float, model: ReservoirModel, t: float) -> StandardFormElements:
    """Standard-form elements at time t for each mode in its own reservoir."""
    _require_kind(model, ReservoirKind.INDEPENDENT)
    _check_squeezing(r)
    _check_time(t)
    decay = math.exp(-model.gamma * t)
    n = math.cosh(2.0 * r) * decay + model.noise * (1.0 - decay)
    c = math.sinh(2.0 * r) * decay
    return StandardFormElements(n1=n, n2=n, c1=-c, c2=c)


def evolve(r: float, model: ReservoirModel, t: float) -> StandardFormElements:
    if model.kind is ReservoirKind.COMMON:
        return evolve_common(r, model, t)
    return evolve_independent(r, model, t)


def stationary_elements(r: float, model: ReservoirModel) -> StandardFormElements:
    """The t -> infinity limit of the propagator."""
    return evolve(r, model, math.inf)


# ---------------------------------------------------------------------------
# Survival threshold and disentanglement times
# ---------------------------------------------------------------------------


def survival_threshold(nbar: float) -> float:
    """r* = ln(2 nbar + 1) / 2; |r| >= r* stays entangled forever in a common reservoir."""
    if not (math.isfinite(nbar) and nbar >= 0):
        raise DomainError(f"nbar must be finite and >= 0, got {nbar!r}")
    return 0.5 * math.log1p(2.0 * nbar)


def disentanglement_time(r: float, model: ReservoirModel) -> float | Never:
    """
    First time at which the state becomes separable, or NEVER.

    Common reservoir: NEVER when |r| >= r*, else
        t = ln[(N - e^{-2|r|}) / (N - e^{2|r|})] / (2 gamma).
    Independent reservoirs: NEVER in a vacuum environment, else
        t = ln[1 + (1 - e^{-2|r|}) / (2 nbar)] / gamma.
    """
    _check_squeezing(r)
    if r == 0:
        return 0.0
    a = abs(r)
    if model.kind is ReservoirKind.COMMON:
        if a >= survival_threshold(model.nbar):
            return NEVER
        n = model.noise
        return math.log((n - math.exp(-2.0 * a)) / (n - math.exp(2.0 * a))) / (2.0 * model.gamma)
    if model.nbar == 0:
        return NEVER
    return math.log1p(-math.expm1(-2.0 * a) / (2.0 * model.nbar)) / model.gamma


def asymptotic_negativity(r: float, nbar: float) -> float:
    """Common-reservoir t -> infinity negativity |r|/ln2 - log2(2 nbar + 1)/2."""
    _check_squeezing(r)
    threshold = survival_threshold(nbar)
    if abs(r) < threshold - _THRESHOLD_SLACK:
        raise PreconditionError(
            f"asymptotic negativity needs |r| >= {threshold:.12g}, got |r| = {abs(r):.12g}"
        )
    return max(0.0, abs(r) / math.log(2.0) - 0.5 * math.log2(2.0 * nbar + 1.0))


def find_disentanglement_time(
    r: float, model: ReservoirModel, t_max: float, xtol: float = 1e-14
) -> float | Never:
    """
    Numerical disentanglement time: root of the entanglement margin along the
    closed-form trajectory on [0, t_max]. NEVER if the state is still
    entangled at t_max.
    """
    _check_squeezing(r)
    _check_time(t_max)

    def margin(t: float) -> float:
        return entanglement_margin(evolve(r, model, t))

    if margin(0.0) >= 0:
        return 0.0
    if margin(t_max) < 0:
        return NEVER
    root = optimize.brentq(margin, 0.0, t_max, xtol=xtol, rtol=4 * np.finfo(float).eps)
    logger.debug("find_disentanglement_time: r=%.6g %s -> t=%.12g", r, model, root)
    return float(root)


def find_survival_threshold(
    nbar: float, r_max: float | None = None, xtol: float = 1e-12
) -> float:
    """
    Bisection on r of the t -> infinity verdict in the common-reservoir model.

    The default bracket ends one unit above the closed-form threshold; further
    out the stationary n2 - c2 = e^{-2r} drops below the rounding of n2.
    """
    model = ReservoirModel(ReservoirKind.COMMON, gamma=1.0, nbar=nbar)
    if nbar == 0:
        return 0.0
    if r_max is None:
        r_max = max(5.0, survival_threshold(nbar) + 1.0)

    def margin(r: float) -> float:
        return entanglement_margin(stationary_elements(r, model))

    return float(optimize.bisect(margin, 0.0, r_max, xtol=xtol))


# ---------------------------------------------------------------------------
# Trajectories
# ---------------------------------------------------------------------------


def trajectory(r: float, model: ReservoirModel, grid) -> list[TrajectoryPoint]:
    """Evolve r under model at every time in grid (ascending, >= 0)."""
    times = [float(t) for t in grid]
    for earlier, later in zip(times, times[1:]):
        if later < earlier:
            raise DomainError("time grid must be sorted ascending")
    points: list[TrajectoryPoint] = []
    for t in times:
        elems = evolve(r, model, t)
        points.append(
            TrajectoryPoint(
                t=t,
                tau=rescaled_time(model, t),
                elems=elems,
                simon_value=simon_reduced(elems).simon_value,
                negativity=log_negativity(elems),
                purity=purity(elems),
                gamma=model.gamma,
            )
        )
    logger.debug(
        "trajectory: r=%.6g kind=%s nbar=%.6g points=%d",
        r, model.kind.value, model.nbar, len(points),
    )
    return points
