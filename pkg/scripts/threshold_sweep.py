"""
Threshold sweep: compares the closed-form survival threshold and
disentanglement times against their numerical root-finding counterparts
over a range of reservoir temperatures.

Usage:
    python -m scripts.threshold_sweep --nbar 0,0.5,2.5,4 --r 0.1
    python -m scripts.threshold_sweep --nbar 0.5 --model independent --csv sweep.csv
"""
import argparse
import csv
import logging
import sys
from pathlib import Path

from dotenv import load_dotenv

from gaussent.config import ConfigError, parse_float_list
from gaussent.core.errors import DomainError
from gaussent.dynamics.analytic import (
    NEVER,
    ReservoirKind,
    ReservoirModel,
    disentanglement_time,
    find_disentanglement_time,
    find_survival_threshold,
    survival_threshold,
)
from gaussent.guardrails import validate_run_param

load_dotenv()
logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ("nbar", "r_star", "r_star_bisect", "t_closed", "t_root")

# Search horizon for the root finder, in units of 1/gamma
_T_MAX = 200.0


def parse_args(argv=None):
    p = argparse.ArgumentParser(description="Survival threshold sweep")
    p.add_argument("--nbar", default="0,0.5,1,2.5,4", help="Comma-separated mean photon numbers")
    p.add_argument("--r", type=float, default=0.1, help="Squeezing used for disentanglement times")
    p.add_argument("--model", choices=[k.value for k in ReservoirKind], default="common")
    p.add_argument("--csv", type=Path, default=None, help="Write the table to this file")
    return p.parse_args(argv)


def _time_or_blank(t) -> str:
    return "" if t is NEVER else f"{t:.12g}"


def sweep(nbar_list, r: float, kind: ReservoirKind = ReservoirKind.COMMON) -> list[dict]:
    """One row per nbar: r* both ways and the disentanglement time of r both ways."""
    rows = []
    for nbar in nbar_list:
        model = ReservoirModel(kind, gamma=1.0, nbar=nbar)
        closed = disentanglement_time(r, model)
        found = find_disentanglement_time(r, model, t_max=_T_MAX)
        rows.append(
            {
                "nbar": nbar,
                "r_star": survival_threshold(nbar),
                "r_star_bisect": find_survival_threshold(nbar),
                "t_closed": closed,
                "t_root": found,
            }
        )
    return rows


def write_sweep_csv(path: Path, rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    f"{row['nbar']:.12g}",
                    f"{row['r_star']:.12g}",
                    f"{row['r_star_bisect']:.12g}",
                    _time_or_blank(row["t_closed"]),
                    _time_or_blank(row["t_root"]),
                ]
            )


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        nbar_list = parse_float_list(args.nbar)
    except ConfigError as exc:
        logger.error("%s", exc)
        return 2
    for key, values in (("r", [args.r]), ("nbar", nbar_list)):
        for value in values:
            ok, err = validate_run_param(key, value)
            if not ok:
                logger.error("%s", err)
                return 2
    kind = ReservoirKind(args.model)
    logger.info("Threshold sweep: model=%s r=%g nbar=%s", kind.value, args.r, nbar_list)

    try:
        rows = sweep(nbar_list, args.r, kind)
    except DomainError as exc:
        logger.error("%s", exc)
        return 2
    print(f"{'nbar':>10} {'r*':>14} {'r* (bisect)':>14} {'diff':>10} {'t':>14} {'t (root)':>14}")
    for row in rows:
        print(
            f"{row['nbar']:>10.4g} {row['r_star']:>14.10f} {row['r_star_bisect']:>14.10f} "
            f"{abs(row['r_star'] - row['r_star_bisect']):>10.2e} "
            f"{_time_or_blank(row['t_closed']) or 'never':>14} "
            f"{_time_or_blank(row['t_root']) or 'never':>14}"
        )
    if args.csv:
        write_sweep_csv(args.csv, rows)
        logger.info("Wrote %d rows to %s", len(rows), args.csv)
    return 0


if __name__ == "__main__":
    sys.exit(main())
