"""
CSV writers for trajectories and the run manifest. Output is byte-for-byte
deterministic for a given input: fixed column order, '\n' line endings and
scientific-notation floats at a fixed number of significant digits.
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

from gaussent.dynamics.analytic import TrajectoryPoint

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "tau",
    "gamma_t",
    "n1",
    "n2",
    "c1",
    "c2",
    "simon_value",
    "log_negativity",
    "purity",
)

MANIFEST_NAME = "manifest.csv"
MANIFEST_HEADER = ("file", "figure", "model", "r", "nbar", "N", "axis")


@dataclass(frozen=True)
class ManifestEntry:
    file: str
    model: str
    r: float
    nbar: float
    axis: str
    figure: int | None = None


def format_float(value: float, precision: int) -> str:
    return format(float(value), f".{precision - 1}e")


def trajectory_rows(points: list[TrajectoryPoint], precision: int) -> list[list[str]]:
    rows = []
    for p in points:
        values = (
            p.tau,
            p.gamma_t,
            p.elems.n1,
            p.elems.n2,
            p.elems.c1,
            p.elems.c2,
            p.simon_value,
            p.negativity,
            p.purity,
        )
        rows.append([format_float(v, precision) for v in values])
    return rows


def write_trajectory_csv(path: Path, points: list[TrajectoryPoint], precision: int) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(trajectory_rows(points, precision))
    logger.info("Wrote %d rows to %s", len(points), path)
    return path


def write_manifest(directory: Path, entries: list[ManifestEntry], precision: int) -> Path:
    path = Path(directory) / MANIFEST_NAME
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(MANIFEST_HEADER)
        for e in entries:
            writer.writerow(
                [
                    e.file,
                    "" if e.figure is None else str(e.figure),
                    e.model,
                    format_float(e.r, precision),
                    format_float(e.nbar, precision),
                    format_float(2.0 * e.nbar + 1.0, precision),
                    e.axis,
                ]
            )
    logger.info("Wrote manifest with %d entries to %s", len(entries), path)
    return path


def read_manifest(directory: Path) -> list[dict[str, str]]:
    with open(Path(directory) / MANIFEST_NAME, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def curve_file_name(model: str, r: float, nbar: float) -> str:
    return f"trajectory_{model}_r{r:.12g}_nbar{nbar:.12g}.csv"
