import math
import sys
from typing import Sequence

import numpy as np

from knapsackga.core.exceptions import DimensionError
from knapsackga.core.models import CrossoverKind, GaParams, Instance
from knapsackga.core.subset_sum import population_differences
from knapsackga.core.types import FitnessValue, Population

# exact hits get a fixed sentinel above every computed fitness (max 100/1)
SOLUTION_FITNESS = 101.0
MAX_FITNESS = 100.0


def init_population(
    n: int, params: GaParams, rng: np.random.Generator | None = None
) -> Population:
    """Uniform random bits, ``params.population_size`` rows of length ``n``."""
    if n < 1:
        raise ValueError(f"Chromosome length must be at least 1, got {n}")
    rng = rng if rng is not None else params.rng()
    return rng.integers(0, 2, size=(params.population_size, n), dtype=np.uint8)


def fitness(diff: int) -> FitnessValue:
    if diff < 0:
        raise ValueError(f"Difference must be non-negative, got {diff}")
    if diff == 0:
        return FitnessValue(SOLUTION_FITNESS, True)
    return FitnessValue(max(MAX_FITNESS / diff, sys.float_info.min), False)


def population_fitness(
    pop: Population, instance: Instance
) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorized fitness of every row.

    Returns:
        tuple[np.ndarray, np.ndarray]: float fitness values and the exact-hit mask
    """
    diffs = population_differences(pop, instance)
    solved = np.asarray(diffs == 0, dtype=bool)
    safe = np.where(solved, 1, diffs)
    values = np.maximum(np.asarray(MAX_FITNESS / safe, dtype=float), sys.float_info.min)
    values[solved] = SOLUTION_FITNESS
    return values, solved


def evaluate_population(pop: Population, instance: Instance) -> list[FitnessValue]:
    values, solved = population_fitness(pop, instance)
    return [FitnessValue(float(v), bool(s)) for v, s in zip(values, solved)]


def _fitness_weights(fits: Sequence[FitnessValue] | np.ndarray) -> np.ndarray:
    if isinstance(fits, np.ndarray):
        return fits.astype(float)
    return np.asarray([f.value for f in fits], dtype=float)


def selection_probabilities(fits: Sequence[FitnessValue] | np.ndarray) -> np.ndarray:
    weights = _fitness_weights(fits)
    if np.any(weights <= 0):
        raise ValueError("Roulette wheel needs strictly positive fitness values")
    return weights / weights.sum()


def roulette_select(
    pop: Population,
    fits: Sequence[FitnessValue] | np.ndarray,
    rng: np.random.Generator,
) -> Population:
    """Draws a same-size population, slot by slot, proportional to fitness."""
    if len(fits) != len(pop):
        raise DimensionError(len(pop), len(fits), what="fitness list")
    p = selection_probabilities(fits)
    chosen = rng.choice(len(pop), size=len(pop), p=p)
    return pop[chosen]


def pairing_count(crossover_rate: float, population_size: int) -> int:
    """Individuals taking part in crossover: rate percent of the population, even."""
    k = math.floor(crossover_rate * population_size / 100 + 1e-9)
    k = min(k, population_size)
    return k - k % 2


def swap_tails(
    parent_a: np.ndarray, parent_b: np.ndarray, cut: int
) -> tuple[np.ndarray, np.ndarray]:
    child_a = np.concatenate([parent_a[:cut], parent_b[cut:]])
    child_b = np.concatenate([parent_b[:cut], parent_a[cut:]])
    return child_a, child_b


def _swap_mask(n: int, kind: CrossoverKind, rng: np.random.Generator) -> np.ndarray:
    positions = np.arange(n)
    if kind == CrossoverKind.UNIFORM:
        return rng.random(n) < 0.5
    if kind == CrossoverKind.TWO_POINT and n >= 3:
        first, second = np.sort(rng.choice(np.arange(1, n), size=2, replace=False))
        return (positions >= first) & (positions < second)
    cut = rng.integers(1, n)
    return positions >= cut


def crossover(
    pop: Population,
    crossover_rate: float,
    rng: np.random.Generator,
    kind: CrossoverKind = CrossoverKind.SINGLE_POINT,
) -> Population:
    """
    Pairs a share of the population and exchanges aligned material.

    ``crossover_rate`` percent of the population, rounded down to an even
    count, is drawn without replacement and paired off. With single-point
    crossover each pair swaps the tails after a cut drawn from [1, n-1].
    Everybody else passes through unchanged.
    """
    size, n = pop.shape
    if size < 2:
        raise ValueError(f"Crossover needs at least 2 chromosomes, got {size}")

    out = pop.copy()
    k = pairing_count(crossover_rate, size)
    if k == 0 or n < 2:
        return out

    chosen = rng.choice(size, size=k, replace=False)
    for a, b in zip(chosen[0::2], chosen[1::2]):
        if kind == CrossoverKind.SINGLE_POINT:
            out[a], out[b] = swap_tails(pop[a], pop[b], int(rng.integers(1, n)))
            continue
        mask = _swap_mask(n, kind, rng)
        out[a, mask] = pop[b, mask]
        out[b, mask] = pop[a, mask]
    return out


def mutate(
    pop: Population, mutation_rate: float, rng: np.random.Generator
) -> Population:
    """Each chromosome, with probability ``mutation_rate``, gets one bit flipped."""
    out = pop.copy()
    size, n = out.shape
    rows = np.flatnonzero(rng.random(size) < mutation_rate)
    cols = rng.integers(0, n, size=len(rows))
    out[rows, cols] ^= 1
    return out
