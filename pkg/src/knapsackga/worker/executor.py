import multiprocessing as mp
from abc import ABC, abstractmethod
from typing import Callable, Sequence, TypeVar

from knapsackga.core.logging import logger

T = TypeVar("T")
R = TypeVar("R")


class ExecutionStrategy(ABC):
    """
    Abstract base class implementing the Strategy pattern for independent jobs.
    Implementations must return results in submission order.
    """

    def __init__(self, jobs: int = 1):
        if jobs < 1:
            raise ValueError(f"Worker count must be at least 1, got {jobs}")
        self.jobs = jobs

    @abstractmethod
    def map(self, func: Callable[[T], R], items: Sequence[T]) -> list[R]:
        pass


class SequentialExecutionStrategy(ExecutionStrategy):
    """Runs every job in the calling process."""

    def map(self, func: Callable[[T], R], items: Sequence[T]) -> list[R]:
        return [func(item) for item in items]


class PoolExecutionStrategy(ExecutionStrategy):
    """
    Fans jobs out to a process pool:
    1. ``func`` and the items must be picklable
    2. ``Pool.map`` preserves input order, so the join is deterministic
    """

    def map(self, func: Callable[[T], R], items: Sequence[T]) -> list[R]:
        if len(items) <= 1:
            return [func(item) for item in items]

        processes = min(self.jobs, len(items))
        chunksize = max(1, len(items) // (processes * 4))
        logger.debug(
            f"Dispatching {len(items)} jobs to {processes} workers "
            f"(chunksize {chunksize})"
        )
        with mp.Pool(processes=processes) as pool:
            return pool.map(func, items, chunksize=chunksize)


def get_execution_strategy(jobs: int = 1) -> ExecutionStrategy:
    if jobs < 1:
        raise ValueError(f"Worker count must be at least 1, got {jobs}")
    if jobs == 1:
        return SequentialExecutionStrategy()
    return PoolExecutionStrategy(jobs)
