"""CSV and plot-data output for sweeps."""

import csv
from itertools import product
from pathlib import Path
from typing import Iterable

from knapsackga.core.exceptions import ConfigError, MissingCellsError
from knapsackga.core.logging import logger
from knapsackga.core.models import SweepCell, SweepConfig, TrendSummary

CELLS_FILE = "sweep_cells.csv"
SUMMARY_FILE = "summary.csv"
TREND_FILE = "trend.json"

CELL_COLUMNS = [
    "instance_id",
    "cx_rate",
    "mut_rate",
    "run",
    "solutions",
    "success",
    "generations",
]
SUMMARY_COLUMNS = ["cx_rate", "mut_rate", "mean_solutions"]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return str(int(value)) if value.is_integer() else repr(value)
    return str(value)


def _write_rows(path: Path, header: list[str], rows: Iterable[list]) -> Path:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(value) for value in row])
    return path


def write_cells_csv(cells: list[SweepCell], path: str | Path) -> Path:
    return _write_rows(
        Path(path),
        CELL_COLUMNS,
        (
            [
                c.instance_id,
                c.cx_rate,
                c.mut_rate,
                c.run,
                c.solutions_found,
                c.success,
                c.generations,
            ]
            for c in cells
        ),
    )


def read_cells_csv(path: str | Path) -> list[SweepCell]:
    path = Path(path)
    cells = []
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != CELL_COLUMNS:
            raise ConfigError(str(path), f"expected columns {CELL_COLUMNS}")
        for line, row in enumerate(reader, start=2):
            cell = SweepCell(
                instance_id=int(row["instance_id"]),
                cx_rate=float(row["cx_rate"]),
                mut_rate=float(row["mut_rate"]),
                run=int(row["run"]),
                solutions_found=int(row["solutions"]),
                generations=int(row["generations"]),
            )
            if _fmt(cell.success) != row["success"]:
                raise ConfigError(
                    f"{path}:{line}", "success disagrees with the solution count"
                )
            cells.append(cell)
    return cells


def _grid_axes(cells: list[SweepCell], config: SweepConfig | None):
    if config is not None:
        return (
            list(range(1, len(config.instances) + 1)),
            list(config.crossover_rates),
            list(config.mutation_rates),
            list(range(1, config.repeats + 1)),
        )
    return tuple(
        sorted({cell.coordinate[axis] for cell in cells}) for axis in range(4)
    )


def emit_experiment_tables(
    cells: list[SweepCell], out_dir: str | Path, config: SweepConfig | None = None
) -> list[Path]:
    """
    Writes one table per (instance, crossover rate), numbered instance-major.

    Each ``experiment_<k>.csv`` has one row per mutation rate and one column
    per run holding the distinct solutions found, plus a ``cumulative``
    column with the distinct solutions across all runs of that row.
    ``experiment_<k>.dat`` carries the same series as whitespace-separated
    plot data with mutation rate on the x axis.

    Raises:
        MissingCellsError: If any grid coordinate has no cell
    """
    out_dir = Path(out_dir)
    instance_ids, cx_rates, mut_rates, runs = _grid_axes(cells, config)

    by_coordinate = {cell.coordinate: cell for cell in cells}
    missing = [
        coordinate
        for coordinate in product(instance_ids, cx_rates, mut_rates, runs)
        if coordinate not in by_coordinate
    ]
    if missing:
        raise MissingCellsError(missing)

    run_columns = [f"run_{r}" for r in runs]
    written = []
    for k, (instance_id, cx_rate) in enumerate(
        product(instance_ids, cx_rates), start=1
    ):
        rows = []
        for mut_rate in mut_rates:
            row_cells = [
                by_coordinate[(instance_id, cx_rate, mut_rate, r)] for r in runs
            ]
            distinct = set().union(*(cell.solutions for cell in row_cells))
            rows.append(
                [mut_rate, *(cell.solutions_found for cell in row_cells), len(distinct)]
            )

        written.append(
            _write_rows(
                out_dir / f"experiment_{k}.csv",
                ["mutation_rate", *run_columns, "cumulative"],
                rows,
            )
        )

        dat_path = out_dir / f"experiment_{k}.dat"
        with dat_path.open("w", encoding="utf-8", newline="\n") as handle:
            handle.write(
                f"# instance {instance_id}, crossover rate {_fmt(cx_rate)}: "
                "solutions per run\n"
            )
            handle.write("# " + " ".join(["mutation_rate", *run_columns]) + "\n")
            for row in rows:
                handle.write(" ".join(_fmt(value) for value in row[:-1]) + "\n")
        written.append(dat_path)

    logger.info(f"Wrote {len(written) // 2} experiment tables to {out_dir}")
    return written


def write_summary_csv(summary: TrendSummary, path: str | Path) -> Path:
    return _write_rows(
        Path(path),
        SUMMARY_COLUMNS,
        ([e.cx_rate, e.mut_rate, e.mean_solutions] for e in summary.entries),
    )


def write_sweep_outputs(
    cells: list[SweepCell],
    summary: TrendSummary,
    out_dir: str | Path,
    config: SweepConfig | None = None,
) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    written = [write_cells_csv(cells, out_dir / CELLS_FILE)]
    written += emit_experiment_tables(cells, out_dir, config)
    written.append(write_summary_csv(summary, out_dir / SUMMARY_FILE))
    written.append(summary.to_file(out_dir / TREND_FILE))
    return written
