from itertools import product

from pydantic import BaseModel

from knapsackga.core.exceptions import EmptySummaryError
from knapsackga.core.logging import logger
from knapsackga.core.models import (
    GaParams,
    Instance,
    SweepCell,
    SweepConfig,
    TrendEntry,
    TrendSummary,
)
from knapsackga.ga.engine import run_ga
from knapsackga.worker.executor import get_execution_strategy

PAPER_CROSSOVER_RATES = [2.0, 3.0, 4.0, 5.0]
PAPER_MUTATION_RATES = [0.5, 0.6, 0.7, 0.8]
PAPER_REPEATS = 5

# operating point reported as best by the source experiments
RECOMMENDED_POINT = (2.0, 0.6)


def paper_instances() -> list[Instance]:
    return [
        Instance(weights=(2, 4, 6, 8, 10, 12), target=20, name="A1"),
        Instance(weights=(1, 3, 5, 7, 9, 11), target=20, name="A2"),
        Instance(weights=(5, 7, 21, 33, 37, 91), target=112, name="A3"),
        Instance(weights=(2, 9, 21, 33, 77, 101), target=79, name="A4"),
        Instance(weights=(7, 10, 13, 20, 27, 30), target=57, name="A5"),
    ]


def paper_sweep_config(
    seed: int = 0, population_size: int = 50, max_generations: int = 1000
) -> SweepConfig:
    """The five instances x crossover 2..5 x mutation 0.5..0.8 x five runs."""
    return SweepConfig(
        instances=paper_instances(),
        crossover_rates=PAPER_CROSSOVER_RATES,
        mutation_rates=PAPER_MUTATION_RATES,
        repeats=PAPER_REPEATS,
        base_params=GaParams(
            population_size=population_size,
            max_generations=max_generations,
            seed=seed,
        ),
    )


class CellTask(BaseModel):
    instance_id: int
    instance: Instance
    params: GaParams
    run: int


def cell_tasks(config: SweepConfig) -> list[CellTask]:
    """
    One task per grid coordinate, ordered instance, crossover, mutation, run.

    Each task's RNG stream is keyed by its 0-based grid indices, so no two
    cells share a stream and a rerun with the same base seed is identical.
    """
    tasks = []
    for (i, instance), (c, cx_rate), (m, mut_rate), r in product(
        enumerate(config.instances),
        enumerate(config.crossover_rates),
        enumerate(config.mutation_rates),
        range(config.repeats),
    ):
        derived = config.base_params.derive(i, c, m, r)
        params = GaParams.model_validate(
            derived.model_dump()
            | {"crossover_rate": cx_rate, "mutation_rate": mut_rate}
        )
        tasks.append(
            CellTask(instance_id=i + 1, instance=instance, params=params, run=r + 1)
        )
    return tasks


def run_cell(task: CellTask) -> SweepCell:
    result = run_ga(task.instance, task.params)
    logger.debug(
        f"Cell instance={task.instance_id} cx={task.params.crossover_rate:g} "
        f"mut={task.params.mutation_rate:g} run={task.run}: "
        f"{result.solution_count} solutions"
    )
    return SweepCell(
        instance_id=task.instance_id,
        cx_rate=task.params.crossover_rate,
        mut_rate=task.params.mutation_rate,
        run=task.run,
        solutions_found=result.solution_count,
        generations=result.generations_executed,
        solutions=result.solutions,
    )


def run_sweep(config: SweepConfig, jobs: int = 1) -> list[SweepCell]:
    tasks = cell_tasks(config)
    logger.info(f"Running sweep of {len(tasks)} cells with {jobs} worker(s)")

    cells = get_execution_strategy(jobs).map(run_cell, tasks)

    successes = sum(cell.success for cell in cells)
    logger.info(f"Sweep finished: {successes} of {len(cells)} cells found a solution")
    return cells


def summarize(cells: list[SweepCell]) -> TrendSummary:
    """
    Mean solutions per (crossover, mutation) pair across instances and runs.

    The best pair is the highest mean; ties go to the lower crossover rate,
    then the lower mutation rate, and are flagged.

    Raises:
        EmptySummaryError: If ``cells`` is empty
    """
    if not cells:
        raise EmptySummaryError()

    groups: dict[tuple[float, float], list[SweepCell]] = {}
    for cell in cells:
        groups.setdefault((cell.cx_rate, cell.mut_rate), []).append(cell)

    entries = [
        TrendEntry(
            cx_rate=cx_rate,
            mut_rate=mut_rate,
            # integer total over count, so equal ratios compare equal
            mean_solutions=sum(c.solutions_found for c in group) / len(group),
            success_rate=sum(c.success for c in group) / len(group),
            cells=len(group),
        )
        for (cx_rate, mut_rate), group in sorted(groups.items())
    ]

    best_mean = max(entry.mean_solutions for entry in entries)
    winners = [entry for entry in entries if entry.mean_solutions == best_mean]
    best = winners[0]

    summary = TrendSummary(
        entries=entries,
        best_cx_rate=best.cx_rate,
        best_mut_rate=best.mut_rate,
        best_mean=best_mean,
        tie=len(winners) > 1,
        degenerate=best_mean == 0,
        recommended_point_is_best=(best.cx_rate, best.mut_rate) == RECOMMENDED_POINT,
    )
    logger.info(
        f"Best mean {best_mean:g} at crossover {best.cx_rate:g}, "
        f"mutation {best.mut_rate:g}"
        + (" (tie)" if summary.tie else "")
        + (" (degenerate: no solutions anywhere)" if summary.degenerate else "")
    )
    return summary
