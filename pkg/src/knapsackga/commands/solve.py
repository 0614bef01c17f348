import argparse
from pathlib import Path

from knapsackga.commands.base_command import (
    BaseCommand,
    ExitCode,
    add_ga_arguments,
    add_instance_arguments,
    ga_params_from_args,
    instance_from_args,
    write_output,
)
from knapsackga.commands.command_registry import register_command
from knapsackga.core.config import KnapsackSettings
from knapsackga.core.logging import logger
from knapsackga.ga.engine import run_ga

PROGRESS_EVERY = 100


def log_progress(generation: int, best_fitness: float, solutions: int) -> None:
    if generation % PROGRESS_EVERY == 0:
        logger.debug(
            f"Generation {generation}: best fitness {best_fitness:g}, "
            f"{solutions} solutions so far"
        )


@register_command("solve")
class SolveCommand(BaseCommand):
    help = "run the genetic algorithm on a bare subset-sum instance"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_instance_arguments(parser)
        add_ga_arguments(parser)
        parser.add_argument(
            "--out",
            type=Path,
            default=None,
            help="run result JSON path (default stdout)",
        )

    def execute(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> ExitCode:
        instance = instance_from_args(args)
        result = run_ga(
            instance, ga_params_from_args(args, settings), callback=log_progress
        )
        logger.info(
            f"{result.solution_count} solutions in {result.generations_executed} "
            "generations"
        )
        write_output(result.to_json(), args.out)
        return ExitCode.OK
