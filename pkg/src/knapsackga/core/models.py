import hashlib
import json
import math
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Self

import numpy as np
import yaml
from pydantic import (
    AfterValidator,
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    computed_field,
    field_validator,
    model_validator,
)

from knapsackga.core.exceptions import ConfigError
from knapsackga.core.types import BitString, Chromosome


def _positive_entries(values: tuple[int, ...]) -> tuple[int, ...]:
    for i, value in enumerate(values):
        if value <= 0:
            raise ValueError(f"entry {i} must be positive, got {value}")
    return values


def _non_negative_entries(values):
    for i, value in enumerate(values):
        if value < 0:
            raise ValueError(f"entry {i} must be non-negative, got {value}")
    return values


def _unique_entries(values):
    if len(set(values)) != len(values):
        raise ValueError(f"values must be unique, got {list(values)}")
    return values


PositiveInts = Annotated[tuple[int, ...], AfterValidator(_positive_entries)]


def load_document(path: str | Path) -> Any:
    """
    Reads a JSON or YAML document, chosen by file suffix.

    Raises:
        OSError: If the file cannot be read
        ConfigError: If the file is not valid JSON/YAML
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            return yaml.safe_load(text)
        return json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(str(path), f"not a valid document: {e}")


def describe_validation_error(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in detail['loc']) or '<root>'}: {detail['msg']}"
        for detail in error.errors()
    )


class FileModel(BaseModel):
    """Models that are read from and written to JSON (or YAML) files."""

    @classmethod
    def from_file(cls, path: str | Path) -> Self:
        document = load_document(path)
        try:
            return cls.model_validate(document)
        except ValidationError as e:
            raise ConfigError(str(path), describe_validation_error(e))

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True) + "\n"

    def to_file(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_json(), encoding="utf-8", newline="\n")
        return path


class Instance(FileModel):
    """A subset-sum problem: a weight list and the sum to reach."""

    weights: PositiveInts = Field(min_length=1)
    target: int = Field(ge=0)
    name: str | None = None

    model_config = ConfigDict(frozen=True, extra="forbid")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    @classmethod
    def from_cli(cls, weights: str, target: int) -> "Instance":
        try:
            parsed = tuple(int(w) for w in weights.split(","))
        except ValueError:
            raise ConfigError(
                "--weights", f"expected comma-separated integers, got {weights!r}"
            )
        return cls(weights=parsed, target=target)


class CrossoverKind(str, Enum):
    SINGLE_POINT = "single_point"
    TWO_POINT = "two_point"
    UNIFORM = "uniform"


class GaParams(FileModel):
    population_size: int = Field(default=50, ge=2)
    crossover_rate: float = Field(
        default=2.0, ge=0, description="Percent of the population paired per generation"
    )
    mutation_rate: float = Field(
        default=0.6,
        ge=0,
        le=1,
        description="Per-chromosome probability of a single bit flip",
    )
    max_generations: int = Field(default=1000, ge=1)
    seed: int = Field(default=0, ge=0)
    stop_on_first: bool = False
    crossover_kind: CrossoverKind = CrossoverKind.SINGLE_POINT
    spawn_key: Annotated[
        tuple[int, ...], AfterValidator(_non_negative_entries)
    ] = ()

    model_config = ConfigDict(frozen=True, extra="forbid")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        )

    def derive(self, *coordinates: int) -> "GaParams":
        """Parameters for a sub-run whose RNG stream is keyed by ``coordinates``."""
        return self.model_validate(
            self.model_dump() | {"spawn_key": self.spawn_key + tuple(coordinates)}
        )


class RunResult(FileModel):
    instance: Instance
    solutions: list[BitString] = Field(
        default_factory=list, description="Distinct solutions in discovery order"
    )
    generations_executed: int = Field(ge=0)
    first_solution_generation: int | None = None
    best_fitness_history: list[float] = Field(default_factory=list)
    mean_fitness_history: list[float] = Field(default_factory=list)
    params_echo: GaParams

    @computed_field
    @property
    def solution_count(self) -> int:
        return len(self.solutions)

    @property
    def solution_set(self) -> frozenset[Chromosome]:
        return frozenset(self.solutions)


class PublicKey(FileModel):
    weights: PositiveInts = Field(alias="public", min_length=1)

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="ignore")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def capacity(self) -> int:
        return sum(self.weights)

    @property
    def fingerprint(self) -> str:
        canonical = json.dumps({"public": list(self.weights)}, sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


class PrivateKey(FileModel):
    superincreasing: PositiveInts = Field(min_length=1)
    modulus: int
    multiplier: int

    model_config = ConfigDict(frozen=True, extra="ignore")

    @model_validator(mode="after")
    def check_trapdoor(self) -> "PrivateKey":
        running = 0
        for i, b in enumerate(self.superincreasing):
            if b <= running:
                raise ValueError(
                    f"superincreasing[{i}] = {b} does not exceed the sum {running} "
                    "of the preceding elements"
                )
            running += b
        if self.modulus <= running:
            raise ValueError(
                f"modulus {self.modulus} must exceed the sequence sum {running}"
            )
        if not 1 < self.multiplier < self.modulus:
            raise ValueError(
                f"multiplier {self.multiplier} must lie strictly between 1 "
                f"and the modulus {self.modulus}"
            )
        if math.gcd(self.multiplier, self.modulus) != 1:
            raise ValueError(
                f"multiplier {self.multiplier} is not coprime to modulus {self.modulus}"
            )
        return self

    @property
    def n(self) -> int:
        return len(self.superincreasing)

    @property
    def inverse(self) -> int:
        return pow(self.multiplier, -1, self.modulus)

    def public_key(self) -> PublicKey:
        return PublicKey(
            weights=tuple(
                (self.multiplier * b) % self.modulus for b in self.superincreasing
            )
        )


class Ciphertext(FileModel):
    n: int = Field(ge=1, description="Block size in bits")
    byte_len: int = Field(ge=0, description="Plaintext length before padding")
    blocks: list[int] = Field(default_factory=list)

    model_config = ConfigDict(extra="forbid")

    @field_validator("blocks")
    def check_blocks(cls, v: list[int]) -> list[int]:
        return _non_negative_entries(v)

    @model_validator(mode="after")
    def check_block_count(self) -> "Ciphertext":
        expected = -(-self.byte_len * 8 // self.n)
        if len(self.blocks) != expected:
            raise ValueError(
                f"{self.byte_len} bytes at n={self.n} need {expected} blocks, "
                f"got {len(self.blocks)}"
            )
        return self


class BlockRecovery(BaseModel):
    index: int = Field(ge=0)
    value: int = Field(ge=0)
    bits: BitString | None = None
    ambiguous: bool = False
    known_preimages: int = Field(default=0, ge=0)
    generations: int = Field(default=0, ge=0)

    @property
    def recovered(self) -> bool:
        return self.bits is not None


class AttackReport(FileModel):
    recovered_blocks: list[BitString | None] = Field(default_factory=list)
    ambiguous_blocks: list[int] = Field(default_factory=list)
    failed_blocks: list[int] = Field(default_factory=list)
    total_generations: int = Field(default=0, ge=0)
    byte_len: int = Field(default=0, ge=0)
    plaintext: str = ""
    plaintext_hex: str = ""

    @model_validator(mode="after")
    def check_partition(self) -> "AttackReport":
        for index in self.failed_blocks:
            if not 0 <= index < len(self.recovered_blocks):
                raise ValueError(f"failed block index {index} is out of range")
            if self.recovered_blocks[index] is not None:
                raise ValueError(f"block {index} is both recovered and failed")
        for index, bits in enumerate(self.recovered_blocks):
            if bits is None and index not in self.failed_blocks:
                raise ValueError(f"block {index} is neither recovered nor failed")
        return self

    @computed_field
    @property
    def complete(self) -> bool:
        return not self.failed_blocks


class SweepConfig(FileModel):
    instances: list[Instance] = Field(min_length=1)
    crossover_rates: Annotated[list[float], AfterValidator(_unique_entries)] = Field(
        min_length=1
    )
    mutation_rates: Annotated[list[float], AfterValidator(_unique_entries)] = Field(
        min_length=1
    )
    repeats: int = Field(default=5, ge=1)
    base_params: GaParams = Field(default_factory=GaParams)

    model_config = ConfigDict(extra="forbid")

    @field_validator("crossover_rates")
    def check_crossover_rates(cls, v: list[float]) -> list[float]:
        return _non_negative_entries(v)

    @field_validator("mutation_rates")
    def check_mutation_rates(cls, v: list[float]) -> list[float]:
        for rate in v:
            if not 0 <= rate <= 1:
                raise ValueError(f"mutation rate {rate} is not a probability")
        return v

    @property
    def cell_count(self) -> int:
        return (
            len(self.instances)
            * len(self.crossover_rates)
            * len(self.mutation_rates)
            * self.repeats
        )


class SweepCell(BaseModel):
    instance_id: int = Field(ge=1)
    cx_rate: float = Field(ge=0)
    mut_rate: float = Field(ge=0, le=1)
    run: int = Field(ge=1)
    solutions_found: int = Field(ge=0)
    generations: int = Field(ge=0)
    solutions: list[BitString] = Field(default_factory=list, exclude=True)

    @computed_field
    @property
    def success(self) -> bool:
        return self.solutions_found >= 1

    @property
    def coordinate(self) -> tuple[int, float, float, int]:
        return (self.instance_id, self.cx_rate, self.mut_rate, self.run)


class TrendEntry(BaseModel):
    cx_rate: float
    mut_rate: float
    mean_solutions: float
    success_rate: float
    cells: int


class TrendSummary(FileModel):
    entries: list[TrendEntry]
    best_cx_rate: float
    best_mut_rate: float
    best_mean: float
    tie: bool = False
    degenerate: bool = False
    recommended_point_is_best: bool = False

    def mean_table(self) -> dict[float, dict[float, float]]:
        """Means indexed as ``table[cx_rate][mut_rate]``."""
        table: dict[float, dict[float, float]] = {}
        for entry in self.entries:
            table.setdefault(entry.cx_rate, {})[entry.mut_rate] = entry.mean_solutions
        return table
