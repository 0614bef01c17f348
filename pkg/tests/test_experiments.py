import pytest
from pydantic import ValidationError

from knapsackga.core.exceptions import EmptySummaryError
from knapsackga.core.models import GaParams, Instance, SweepCell, SweepConfig
from knapsackga.core.subset_sum import count_solutions
from knapsackga.harness.experiments import (
    PAPER_CROSSOVER_RATES,
    PAPER_MUTATION_RATES,
    cell_tasks,
    paper_instances,
    paper_sweep_config,
    run_sweep,
    summarize,
)
from knapsackga.worker.executor import (
    PoolExecutionStrategy,
    SequentialExecutionStrategy,
    get_execution_strategy,
)


def _cell(cx, mut, found, instance_id=1, run=1):
    return SweepCell(
        instance_id=instance_id,
        cx_rate=cx,
        mut_rate=mut,
        run=run,
        solutions_found=found,
        generations=10,
    )


def test_paper_instances():
    instances = paper_instances()
    assert len(instances) == 5
    assert instances[2].target == 112
    assert instances[4].weights == (7, 10, 13, 20, 27, 30)


def test_paper_grid_has_400_cells():
    config = paper_sweep_config()
    tasks = cell_tasks(config)
    assert config.cell_count == len(tasks) == 400
    assert sum(task.instance_id == 1 for task in tasks) == 80


def test_cell_streams_are_distinct():
    tasks = cell_tasks(paper_sweep_config(seed=3))
    keys = {task.params.spawn_key for task in tasks}
    assert len(keys) == len(tasks)
    first = tasks[0].params
    assert (first.crossover_rate, first.mutation_rate) == (2.0, 0.5)
    assert first.seed == 3


def test_small_sweep_respects_the_oracle():
    config = SweepConfig(
        instances=paper_instances()[:2],
        crossover_rates=[2, 10],
        mutation_rates=[0.5, 0.8],
        repeats=2,
        base_params=GaParams(population_size=20, max_generations=40, seed=1),
    )
    cells = run_sweep(config)
    assert len(cells) == config.cell_count == 16
    assert [c.coordinate for c in cells] == sorted(c.coordinate for c in cells)

    counts = {i + 1: count_solutions(inst) for i, inst in enumerate(config.instances)}
    for cell in cells:
        assert cell.solutions_found <= counts[cell.instance_id]
        assert cell.success == (cell.solutions_found > 0)
        assert cell.generations == 40


def test_sweep_is_independent_of_worker_count():
    config = SweepConfig(
        instances=[Instance(weights=(2, 4, 6, 8, 10, 12), target=20)],
        crossover_rates=[2, 4],
        mutation_rates=[0.6],
        repeats=3,
        base_params=GaParams(population_size=10, max_generations=20, seed=9),
    )
    sequential = run_sweep(config, jobs=1)
    pooled = run_sweep(config, jobs=3)
    assert [c.model_dump() for c in sequential] == [c.model_dump() for c in pooled]
    assert [c.solutions for c in sequential] == [c.solutions for c in pooled]


def test_worker_count_must_be_positive():
    assert isinstance(get_execution_strategy(1), SequentialExecutionStrategy)
    assert isinstance(get_execution_strategy(2), PoolExecutionStrategy)
    with pytest.raises(ValueError, match="at least 1"):
        get_execution_strategy(0)


def test_summarize_picks_the_highest_mean():
    cells = [
        _cell(2, 0.5, 1),
        _cell(2, 0.5, 3, run=2),
        _cell(2, 0.6, 4),
        _cell(2, 0.6, 4, run=2),
        _cell(3, 0.5, 0),
        _cell(3, 0.5, 1, run=2),
    ]
    summary = summarize(cells)
    assert summary.mean_table() == {2: {0.5: 2.0, 0.6: 4.0}, 3: {0.5: 0.5}}
    assert (summary.best_cx_rate, summary.best_mut_rate) == (2, 0.6)
    assert summary.best_mean == 4.0
    assert summary.recommended_point_is_best
    assert not summary.tie
    assert not summary.degenerate
    assert summary.entries[2].success_rate == 0.5


def test_summarize_breaks_ties_toward_lower_rates():
    summary = summarize([_cell(4, 0.7, 2), _cell(3, 0.8, 2), _cell(3, 0.5, 1)])
    assert (summary.best_cx_rate, summary.best_mut_rate) == (3, 0.8)
    assert summary.tie
    assert not summary.recommended_point_is_best


def test_all_zero_sweep_is_degenerate():
    summary = summarize([_cell(c, m, 0) for c in (2, 3) for m in (0.5, 0.6)])
    assert summary.degenerate
    assert summary.tie
    assert summary.best_mean == 0


def test_empty_summary_is_an_error():
    with pytest.raises(EmptySummaryError):
        summarize([])


def test_paper_grid_summary_is_four_by_four():
    config = paper_sweep_config(seed=2, population_size=10, max_generations=5)
    summary = summarize(run_sweep(config))
    table = summary.mean_table()
    assert sorted(table) == PAPER_CROSSOVER_RATES
    assert all(sorted(row) == PAPER_MUTATION_RATES for row in table.values())
    assert all(entry.cells == 25 for entry in summary.entries)
    assert (summary.best_cx_rate, summary.best_mut_rate) in {
        (e.cx_rate, e.mut_rate) for e in summary.entries
    }


@pytest.mark.parametrize(
    "update",
    [
        {"crossover_rates": [2, 2]},
        {"mutation_rates": [1.5]},
        {"crossover_rates": [-1]},
        {"repeats": 0},
        {"instances": []},
    ],
)
def test_sweep_config_validation(update):
    document = paper_sweep_config().model_dump() | update
    with pytest.raises(ValidationError):
        SweepConfig.model_validate(document)
