import argparse

from knapsackga.commands.base_command import (
    BaseCommand,
    ExitCode,
    add_instance_arguments,
    instance_from_args,
)
from knapsackga.commands.command_registry import register_command
from knapsackga.core.config import KnapsackSettings
from knapsackga.core.subset_sum import brute_force_solve
from knapsackga.core.types import format_bits


@register_command("oracle")
class OracleCommand(BaseCommand):
    help = "list every exact solution by exhaustive enumeration"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_instance_arguments(parser)
        parser.add_argument(
            "--limit",
            type=int,
            default=None,
            help="largest weight count to enumerate (default KNAP_ORACLE_LIMIT)",
        )

    def execute(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> ExitCode:
        instance = instance_from_args(args)
        limit = args.limit if args.limit is not None else settings.KNAP_ORACLE_LIMIT
        solutions = sorted(format_bits(s) for s in brute_force_solve(instance, limit))

        for bits in solutions:
            print(bits)
        print(f"count: {len(solutions)}")
        return ExitCode.OK
