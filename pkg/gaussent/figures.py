"""
Parameter families of the six reference figures: negativity against rescaled
time (figures 1-4) and purity against gamma*t (figures 5-6).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from gaussent.core.errors import DomainError
from gaussent.dynamics.analytic import (
    ReservoirKind,
    ReservoirModel,
    TrajectoryPoint,
    times_for_grid,
    trajectory,
)
from gaussent.guardrails import validate_run_param
from gaussent.output import ManifestEntry

logger = logging.getLogger(__name__)

AXIS_TAU = "tau"
AXIS_GAMMA_T = "gamma_t"

PURITY_GAMMA_T_MAX = 5.0

_SQUEEZINGS = (0.0, 0.1, 0.5, 1.0, 2.0)
_NOISES = (1.0, 2.0, 6.0, math.exp(2.0), 9.0)  # N = 2 nbar + 1


@dataclass(frozen=True)
class FigureSpec:
    figure_id: int
    kind: ReservoirKind
    curves: tuple[tuple[float, float], ...]  # (r, nbar) in caption order
    axis: str
    caption: str


def _squeezing_family() -> tuple[tuple[float, float], ...]:
    return tuple((r, 0.5) for r in _SQUEEZINGS)


def _noise_family() -> tuple[tuple[float, float], ...]:
    return tuple((1.0, (n - 1.0) / 2.0) for n in _NOISES)


FIGURES: dict[int, FigureSpec] = {
    1: FigureSpec(
        1, ReservoirKind.COMMON, _squeezing_family(), AXIS_TAU,
        "Log negativity vs tau, common reservoir, nbar=0.5, r=(0,0.1,0.5,1,2) bottom to top",
    ),
    2: FigureSpec(
        2, ReservoirKind.COMMON, _noise_family(), AXIS_TAU,
        "Log negativity vs tau, common reservoir, r=1, N=(1,2,6,e^2,9) top to bottom",
    ),
    3: FigureSpec(
        3, ReservoirKind.INDEPENDENT, _squeezing_family(), AXIS_TAU,
        "Log negativity vs tau, independent reservoirs, nbar=0.5, r=(0,0.1,0.5,1,2) bottom to top",
    ),
    4: FigureSpec(
        4, ReservoirKind.INDEPENDENT, _noise_family(), AXIS_TAU,
        "Log negativity vs tau, independent reservoirs, r=1, N=(1,2,6,e^2,9) top to bottom",
    ),
    5: FigureSpec(
        5, ReservoirKind.COMMON, _squeezing_family(), AXIS_GAMMA_T,
        "Purity vs gamma*t, common reservoir, nbar=0.5, r=(0,0.1,0.5,1,2)",
    ),
    6: FigureSpec(
        6, ReservoirKind.COMMON, _noise_family(), AXIS_GAMMA_T,
        "Purity vs gamma*t, common reservoir, r=1, N=(1,2,6,e^2,9)",
    ),
}


@dataclass(frozen=True)
class Curve:
    entry: ManifestEntry
    points: list[TrajectoryPoint]


def curve_times(spec: FigureSpec, model: ReservoirModel, points: int, tau_max: float) -> list[float]:
    if spec.axis == AXIS_TAU:
        return times_for_grid(model, points, tau_max)
    return [float(x) / model.gamma for x in np.linspace(0.0, PURITY_GAMMA_T_MAX, points)]


def build_figure(
    figure_id: int,
    points: int,
    tau_max: float,
    gamma: float = 1.0,
    workers: int = 1,
) -> list[Curve]:
    """Compute every curve of a figure, in caption order."""
    if figure_id not in FIGURES:
        raise KeyError(f"unknown figure {figure_id}; choose from {sorted(FIGURES)}")
    spec = FIGURES[figure_id]
    ok, err = validate_run_param("workers", workers)
    if not ok:
        raise DomainError(err)

    def _curve(index_params: tuple[int, tuple[float, float]]) -> Curve:
        index, (r, nbar) = index_params
        model = ReservoirModel(spec.kind, gamma=gamma, nbar=nbar)
        entry = ManifestEntry(
            file=f"fig{figure_id}_curve{index}.csv",
            model=spec.kind.value,
            r=r,
            nbar=nbar,
            axis=spec.axis,
            figure=figure_id,
        )
        return Curve(entry, trajectory(r, model, curve_times(spec, model, points, tau_max)))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        curves = list(pool.map(_curve, enumerate(spec.curves, start=1)))
    logger.info("Figure %d: computed %d curves (%s)", figure_id, len(curves), spec.caption)
    return curves
