"""
Command-line entry point: trajectory CSVs, figure data, threshold queries and
the analytic-vs-numeric validation report.

Usage:
    python -m gaussent.main trajectory --model common --r 0.1,1 --nbar 0.5 --out out/
    python -m gaussent.main figures --figure 1 --out out/fig1
    python -m gaussent.main threshold --nbar 0.5 --r 0.1,1
    python -m gaussent.main validate --dt 1e-3

Exit status: 0 success, 1 validation failure or I/O error, 2 usage error.
"""

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from dotenv import load_dotenv
from pydantic import ValidationError

from gaussent.config import (
    ConfigError,
    RunConfig,
    Settings,
    build_run_config,
    load_config_file,
    parse_float_list,
)
from gaussent.core.errors import DomainError, GaussEntError
from gaussent.dynamics.analytic import (
    NEVER,
    ReservoirKind,
    ReservoirModel,
    disentanglement_time,
    survival_threshold,
    times_for_grid,
    trajectory,
)
from gaussent.figures import FIGURES, build_figure
from gaussent.guardrails import validate_run_param
from gaussent.output import (
    ManifestEntry,
    curve_file_name,
    write_manifest,
    write_trajectory_csv,
)
from gaussent.validation import VALIDATION_NBAR_GRID, VALIDATION_R_GRID, run_validation

logger = logging.getLogger("gaussent.main")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _setup_logging(level: str) -> None:
    logging.basicConfig(
        level=level.upper(),
        format="%(asctime)s %(levelname)-8s %(name)-30s %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%SZ",
        stream=sys.stdout,
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _check_param(key: str, value) -> None:
    ok, err = validate_run_param(key, value)
    if not ok:
        raise DomainError(err)


def cmd_trajectory(config: RunConfig, workers: int = 1) -> list[Path]:
    """One CSV per (r, nbar) pair plus a manifest, under config.output_path."""
    _check_param("workers", workers)
    out_dir = Path(config.output_path)
    pairs = [(r, nbar) for nbar in config.nbar_list for r in config.r_list]

    def _compute(pair: tuple[float, float]):
        r, nbar = pair
        model = config.reservoir(nbar)
        return trajectory(r, model, times_for_grid(model, config.points, config.tau_max))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        curves = list(pool.map(_compute, pairs))

    entries: list[ManifestEntry] = []
    written: list[Path] = []
    kind = config.model.value
    for (r, nbar), points in zip(pairs, curves):
        name = curve_file_name(kind, r, nbar)
        written.append(write_trajectory_csv(out_dir / name, points, config.precision))
        entries.append(ManifestEntry(file=name, model=kind, r=r, nbar=nbar, axis="tau"))
    write_manifest(out_dir, entries, config.precision)
    return written


def cmd_figures(
    figure_id: int,
    output_dir: Path,
    points: int,
    tau_max: float,
    precision: int,
    gamma: float = 1.0,
    workers: int = 1,
) -> list[Path]:
    """Write every curve of one figure plus a manifest; files are written in caption order."""
    curves = build_figure(figure_id, points, tau_max, gamma=gamma, workers=workers)
    output_dir = Path(output_dir)
    written = [
        write_trajectory_csv(output_dir / c.entry.file, c.points, precision) for c in curves
    ]
    write_manifest(output_dir, [c.entry for c in curves], precision)
    return written


def cmd_threshold(
    nbar_list,
    r_list=(),
    kind: ReservoirKind = ReservoirKind.COMMON,
    gamma: float = 1.0,
    precision: int = 12,
) -> list[str]:
    """Report r* for each nbar and, for each r, whether the state survives."""
    for r in r_list:
        _check_param("r", r)
    kind = ReservoirKind(kind)
    lines: list[str] = []
    for nbar in nbar_list:
        _check_param("nbar", nbar)
        lines.append(f"nbar={nbar:g} r*={survival_threshold(nbar):.{precision}g}")
        model = ReservoirModel(kind, gamma=gamma, nbar=nbar)
        for r in r_list:
            t = disentanglement_time(r, model)
            if t is NEVER:
                verdict = "survives"
            elif r == 0:
                verdict = "separable at t=0"
            else:
                verdict = f"disentangles at gamma_t={gamma * t:.{precision}g}"
            lines.append(f"  {kind.value} r={r:g}: {verdict}")
    return lines


def cmd_validate(config: RunConfig, *, drop_diffusion_gamma: bool = False) -> int:
    report = run_validation(config, drop_diffusion_gamma=drop_diffusion_gamma)
    for line in report.lines():
        print(line)
    if report.passed:
        print("validation passed")
        return EXIT_OK
    print(f"validation FAILED: {', '.join(report.failing)}")
    return EXIT_FAILURE


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def create_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Flat key=value config file (flags win)")
    common.add_argument("--gamma", type=float, help="Coupling rate gamma (default 1)")
    common.add_argument("--precision", type=int, help="Significant digits in CSV output")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable DEBUG logging")
    common.add_argument("--workers", type=int, help="Threads for per-curve computation")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--r", help="Comma-separated squeezing parameters (write --r=-1,2 when the list starts negative)")
    grid.add_argument("--nbar", help="Comma-separated mean thermal photon numbers")
    grid.add_argument("--points", type=int, help="Grid points per curve")
    grid.add_argument("--tau-max", dest="tau_max", type=float, help="Largest tau on the grid")

    parser = argparse.ArgumentParser(
        prog="gaussent",
        description="Entanglement of a two-mode squeezed vacuum in thermal reservoirs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trajectory", parents=[common, grid], help="Write trajectory CSVs")
    p.add_argument("--model", choices=[k.value for k in ReservoirKind])
    p.add_argument("--out", type=Path, help="Output directory")

    p = sub.add_parser("figures", parents=[common], help="Write figure data")
    p.add_argument("--figure", type=int, required=True, choices=sorted(FIGURES))
    p.add_argument("--out", type=Path, help="Output directory")
    p.add_argument("--points", type=int, help="Grid points per curve")
    p.add_argument("--tau-max", dest="tau_max", type=float, help="Largest tau on the grid")

    p = sub.add_parser("threshold", parents=[common], help="Survival threshold and verdicts")
    p.add_argument("--nbar", required=True, help="Comma-separated mean thermal photon numbers")
    p.add_argument("--r", help="Comma-separated squeezing parameters to classify (write --r=-1,2 when the list starts negative)")
    p.add_argument("--model", choices=[k.value for k in ReservoirKind], default="common")

    p = sub.add_parser("validate", parents=[common, grid], help="Analytic vs numeric report")
    p.add_argument("--dt", type=float, help="Dimensionless integrator step gamma*dt")
    p.add_argument(
        "--drop-diffusion-gamma",
        action="store_true",
        help="Debug: build the diffusion without gamma (must fail oracle-agreement)",
    )
    return parser


def _flag_values(args: argparse.Namespace) -> dict:
    return {
        "model": getattr(args, "model", None),
        "gamma": args.gamma,
        "r_list": getattr(args, "r", None),
        "nbar_list": getattr(args, "nbar", None),
        "points": getattr(args, "points", None),
        "tau_max": getattr(args, "tau_max", None),
        "output_path": getattr(args, "out", None),
        "precision": args.precision,
        "dt": getattr(args, "dt", None),
    }


def _run(args: argparse.Namespace, settings: Settings) -> int:
    workers = settings.workers if args.workers is None else args.workers
    _check_param("workers", workers)
    file_values = load_config_file(args.config) if args.config else None

    if args.command == "threshold":
        config = build_run_config(settings, file_values, {"gamma": args.gamma, "precision": args.precision})
        lines = cmd_threshold(
            parse_float_list(args.nbar),
            parse_float_list(args.r) if args.r else (),
            kind=ReservoirKind(args.model),
            gamma=config.gamma,
            precision=config.precision,
        )
        for line in lines:
            print(line)
        return EXIT_OK

    if args.command == "validate":
        defaults = {"r_list": VALIDATION_R_GRID, "nbar_list": VALIDATION_NBAR_GRID}
        config = build_run_config(settings, file_values, _flag_values(args), defaults)
        return cmd_validate(config, drop_diffusion_gamma=args.drop_diffusion_gamma)

    config = build_run_config(settings, file_values, _flag_values(args))
    if args.command == "trajectory":
        written = cmd_trajectory(config, workers=workers)
    else:
        written = cmd_figures(
            args.figure,
            config.output_path,
            config.points,
            config.tau_max,
            config.precision,
            gamma=config.gamma,
            workers=workers,
        )
    print(f"wrote {len(written)} curve file(s) to {config.output_path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    parser = create_parser()
    args = parser.parse_args(argv)
    try:
        settings = Settings()
    except ValidationError as exc:
        print(f"gaussent: invalid GAUSSENT_* environment: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _setup_logging("DEBUG" if args.verbose else settings.log_level)
    if settings.seed is not None:
        logger.debug("GAUSSENT_SEED=%s ignored: all computation is deterministic", settings.seed)

    try:
        return _run(args, settings)
    except (ValidationError, ConfigError, DomainError) as exc:
        logger.error("usage error: %s", exc)
        print(f"gaussent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        print(f"gaussent: I/O error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except GaussEntError as exc:
        logger.error("numerical failure: %s", exc)
        print(f"gaussent: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
