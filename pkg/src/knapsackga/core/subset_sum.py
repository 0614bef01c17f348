"""Subset-sum evaluation and the exhaustive oracle the GA is checked against."""

from typing import Sequence

import numpy as np

from knapsackga.core.exceptions import CapacityError, DimensionError
from knapsackga.core.logging import logger
from knapsackga.core.models import Instance
from knapsackga.core.types import Chromosome, Population

DEFAULT_ORACLE_LIMIT = 30

# sums below this bound are computed in int64, larger keys fall back to Python ints
_INT64_SAFE = 2**62

_ORACLE_CHUNK = 1 << 16


def evaluate(instance: Instance, chromosome: Sequence[int]) -> int:
    """
    Sums the weights selected by the chromosome.

    Raises:
        DimensionError: If the chromosome length differs from the weight count
    """
    if len(chromosome) != instance.n:
        raise DimensionError(instance.n, len(chromosome))
    return sum(w for w, bit in zip(instance.weights, chromosome) if bit)


def difference(total: int, target: int) -> int:
    return abs(total - target)


def _fits_int64(instance: Instance) -> bool:
    return max(instance.total, instance.target) < _INT64_SAFE


def population_sums(pop: Population, instance: Instance) -> np.ndarray:
    """Row-wise weighted sums of a population matrix."""
    if pop.ndim != 2 or pop.shape[1] != instance.n:
        raise DimensionError(instance.n, pop.shape[-1] if pop.ndim else 0)
    if _fits_int64(instance):
        return pop.astype(np.int64) @ np.asarray(instance.weights, dtype=np.int64)
    return np.dot(pop.astype(object), np.asarray(instance.weights, dtype=object))


def population_differences(pop: Population, instance: Instance) -> np.ndarray:
    return np.abs(population_sums(pop, instance) - instance.target)


def _enumerate_chunks(n: int):
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, 1 << n, _ORACLE_CHUNK):
        masks = np.arange(start, min(start + _ORACLE_CHUNK, 1 << n), dtype=np.int64)
        yield ((masks[:, None] >> shifts) & 1).astype(np.uint8)


def brute_force_solve(
    instance: Instance, limit: int = DEFAULT_ORACLE_LIMIT
) -> frozenset[Chromosome]:
    """
    Enumerates all 2^n selections and returns those that hit the target exactly.

    Args:
        instance: The subset-sum instance
        limit: Largest n the oracle accepts

    Raises:
        CapacityError: If the instance has more than ``limit`` weights
    """
    if instance.n > limit:
        raise CapacityError(instance.n, limit)

    solutions: set[Chromosome] = set()
    for bits in _enumerate_chunks(instance.n):
        exact = np.asarray(population_differences(bits, instance) == 0, dtype=bool)
        hits = bits[exact]
        solutions.update(tuple(int(b) for b in row) for row in hits)

    logger.debug(
        f"Oracle found {len(solutions)} solutions for n={instance.n}, "
        f"target={instance.target}"
    )
    return frozenset(solutions)


def count_solutions(instance: Instance, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    return len(brute_force_solve(instance, limit))
