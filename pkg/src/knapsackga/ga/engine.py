import numpy as np

from knapsackga.core.logging import logger
from knapsackga.core.models import GaParams, Instance, RunResult
from knapsackga.core.subset_sum import evaluate
from knapsackga.core.types import Chromosome, GenerationCallback
from knapsackga.ga.operators import (
    crossover,
    init_population,
    mutate,
    population_fitness,
    roulette_select,
)


def run_ga(
    instance: Instance,
    params: GaParams,
    callback: GenerationCallback | None = None,
) -> RunResult:
    """
    Runs the genetic algorithm on a subset-sum instance.

    Every generation is evaluated, then selected by roulette wheel, crossed
    over and mutated. Each distinct chromosome that hits the target exactly
    is collected. The loop ends after ``max_generations`` evaluations, or at
    the first hit when ``stop_on_first`` is set.

    Args:
        instance: The subset-sum instance to attack
        params: GA parameters, including the seed
        callback: Optional per-generation progress hook

    Returns:
        RunResult: Distinct solutions plus per-generation fitness statistics
    """
    rng = params.rng()
    pop = init_population(instance.n, params, rng)

    # dict keeps discovery order
    found: dict[Chromosome, None] = {}
    first_hit: int | None = None
    best_history: list[float] = []
    mean_history: list[float] = []
    generation = 0

    for generation in range(1, params.max_generations + 1):
        values, solved = population_fitness(pop, instance)
        best_history.append(float(values.max()))
        mean_history.append(float(values.mean()))

        hits = np.unique(pop[solved], axis=0) if solved.any() else ()
        for row in hits:
            chromosome = tuple(int(bit) for bit in row)
            if chromosome not in found:
                assert evaluate(instance, chromosome) == instance.target
                found[chromosome] = None
                if first_hit is None:
                    first_hit = generation

        if callback is not None:
            callback(generation, best_history[-1], len(found))

        if params.stop_on_first and found:
            break
        if generation == params.max_generations:
            break

        pop = roulette_select(pop, values, rng)
        pop = crossover(pop, params.crossover_rate, rng, params.crossover_kind)
        pop = mutate(pop, params.mutation_rate, rng)

    logger.debug(
        f"GA finished after {generation} generations with {len(found)} solutions "
        f"(n={instance.n}, target={instance.target}, seed={params.seed}, "
        f"spawn_key={params.spawn_key})"
    )

    return RunResult(
        instance=instance,
        solutions=list(found),
        generations_executed=generation,
        first_solution_generation=first_hit,
        best_fitness_history=best_history,
        mean_fitness_history=mean_history,
        params_echo=params,
    )
