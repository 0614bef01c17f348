import argparse
import sys
from abc import ABC, abstractmethod
from enum import IntEnum
from pathlib import Path
from typing import ClassVar

from knapsackga.core.config import KnapsackSettings
from knapsackga.core.models import CrossoverKind, GaParams, Instance


class ExitCode(IntEnum):
    OK = 0
    INVALID_INPUT = 1
    IO_ERROR = 2
    PARTIAL = 3


class BaseCommand(ABC):
    help: ClassVar[str]
    description: ClassVar[str | None] = None

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """
        Declares the subcommand's flags.

        Args:
            parser (argparse.ArgumentParser): The subcommand parser
        """
        pass

    @abstractmethod
    def execute(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> ExitCode:
        """
        Runs the subcommand.

        Args:
            args (argparse.Namespace): Parsed flags
            settings (KnapsackSettings): Environment settings

        Returns:
            ExitCode: Process exit status

        Raises:
            ValueError: If inputs are invalid
            OSError: If a file cannot be read or written
        """
        pass


def resolve_seed(args: argparse.Namespace, settings: KnapsackSettings) -> int:
    return args.seed if args.seed is not None else settings.seed


def write_output(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def add_seed_argument(parser: argparse._ActionsContainer) -> None:
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="RNG seed (falls back to KNAP_SEED, then 0)",
    )


def add_ga_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("genetic algorithm")
    group.add_argument(
        "--pop", type=int, default=None, help="population size (default 50)"
    )
    group.add_argument(
        "--cx-rate",
        type=float,
        default=None,
        help="crossover rate in percent of the population (default 2)",
    )
    group.add_argument(
        "--mut-rate",
        type=float,
        default=None,
        help="per-chromosome probability of one bit flip (default 0.6)",
    )
    group.add_argument(
        "--max-gen", type=int, default=None, help="generation cap (default 1000)"
    )
    group.add_argument(
        "--stop-on-first",
        action="store_true",
        help="stop at the first exact solution instead of collecting all",
    )
    group.add_argument(
        "--crossover",
        choices=[kind.value for kind in CrossoverKind],
        default=None,
        help="crossover operator (default single_point)",
    )
    group.add_argument(
        "--ga-config",
        type=Path,
        default=None,
        help="JSON or YAML file with GA parameters; flags override it",
    )
    add_seed_argument(group)


def resolve_jobs(args: argparse.Namespace, settings: KnapsackSettings) -> int:
    return args.jobs if args.jobs is not None else settings.KNAP_JOBS


def layer_ga_params(
    settings: KnapsackSettings,
    configured: GaParams | None = None,
    overrides: dict | None = None,
) -> GaParams:
    """Layers settings defaults, the fields a config file set, and explicit flags."""
    values: dict = {
        "population_size": settings.KNAP_POPULATION_SIZE,
        "max_generations": settings.KNAP_MAX_GENERATIONS,
        "seed": settings.seed,
    }
    if configured is not None:
        values |= configured.model_dump(exclude_unset=True)
    values |= {
        key: value for key, value in (overrides or {}).items() if value is not None
    }
    return GaParams.model_validate(values)


def ga_params_from_args(
    args: argparse.Namespace, settings: KnapsackSettings
) -> GaParams:
    configured = (
        GaParams.from_file(args.ga_config) if args.ga_config is not None else None
    )
    overrides = {
        "population_size": args.pop,
        "crossover_rate": args.cx_rate,
        "mutation_rate": args.mut_rate,
        "max_generations": args.max_gen,
        "seed": args.seed,
        "crossover_kind": args.crossover,
        "stop_on_first": True if args.stop_on_first else None,
    }
    return layer_ga_params(settings, configured, overrides)


def add_instance_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("instance")
    group.add_argument(
        "--weights", default=None, help="comma-separated positive weights, e.g. 2,4,6"
    )
    group.add_argument(
        "--target", type=int, default=None, help="the sum to reach (with --weights)"
    )
    group.add_argument(
        "--instance",
        type=Path,
        default=None,
        help='JSON or YAML file {"weights": [...], "target": m}',
    )


def instance_from_args(args: argparse.Namespace) -> Instance:
    if args.instance is not None:
        if args.weights is not None or args.target is not None:
            raise ValueError("Give either --instance or --weights/--target, not both")
        return Instance.from_file(args.instance)
    if args.weights is None or args.target is None:
        raise ValueError("Both --weights and --target are required without --instance")
    return Instance.from_cli(args.weights, args.target)
