from typing import Annotated, NamedTuple, Protocol

import numpy as np
import numpy.typing as npt
from pydantic import BeforeValidator, PlainSerializer

# bit i selects weight i
Chromosome = tuple[int, ...]

# one chromosome per row, dtype uint8
Population = npt.NDArray[np.uint8]


def format_bits(chromosome: Chromosome) -> str:
    return "".join("1" if bit else "0" for bit in chromosome)


def parse_bits(text: str) -> Chromosome:
    text = text.strip()
    if any(char not in "01" for char in text):
        raise ValueError(f"Bit string may only contain '0' and '1', got {text!r}")
    return tuple(int(char) for char in text)


def _coerce_bits(value):
    if isinstance(value, str):
        return parse_bits(value)
    bits = tuple(int(bit) for bit in value)
    if any(bit not in (0, 1) for bit in bits):
        raise ValueError(f"Chromosome bits must be 0 or 1, got {bits}")
    return bits


BitString = Annotated[
    Chromosome,
    BeforeValidator(_coerce_bits),
    PlainSerializer(format_bits, return_type=str),
]


class FitnessValue(NamedTuple):
    value: float
    is_solution: bool


class GenerationCallback(Protocol):
    def __call__(self, generation: int, best_fitness: float, solutions: int) -> None:
        """
        A callback invoked once per evaluated generation.

        Args:
            generation (int): 1-based generation number.
            best_fitness (float): Highest fitness in the evaluated population.
            solutions (int): Distinct solutions collected so far.
        """
        pass
