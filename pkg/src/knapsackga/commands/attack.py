import argparse
from pathlib import Path

from knapsackga.attack.knapsack_attack import attack_message
from knapsackga.commands.base_command import (
    BaseCommand,
    ExitCode,
    add_ga_arguments,
    ga_params_from_args,
    resolve_jobs,
    write_output,
)
from knapsackga.commands.command_registry import register_command
from knapsackga.core.config import KnapsackSettings
from knapsackga.core.models import Ciphertext, PublicKey


@register_command("attack")
class AttackCommand(BaseCommand):
    help = "recover plaintext from ciphertext and public key only"
    description = (
        "Runs the genetic algorithm on every ciphertext block. Exit status is 0 "
        "when every block was recovered, 3 when some were not."
    )

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--ciphertext", type=Path, required=True, help="ciphertext JSON path"
        )
        parser.add_argument(
            "--public", type=Path, required=True, help="public key JSON path"
        )
        parser.add_argument(
            "--out",
            type=Path,
            default=None,
            help="attack report JSON path (default stdout)",
        )
        parser.add_argument(
            "--jobs",
            type=int,
            default=None,
            help="worker processes for independent blocks (default KNAP_JOBS)",
        )
        add_ga_arguments(parser)

    def execute(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> ExitCode:
        ciphertext = Ciphertext.from_file(args.ciphertext)
        key = PublicKey.from_file(args.public)
        params = ga_params_from_args(args, settings)

        _, report = attack_message(
            ciphertext,
            key,
            params,
            jobs=resolve_jobs(args, settings),
            oracle_limit=settings.KNAP_ORACLE_LIMIT,
        )
        write_output(report.to_json(), args.out)
        return ExitCode.OK if report.complete else ExitCode.PARTIAL
