import argparse
import sys
from typing import Sequence

from pydantic import ValidationError

import knapsackga.commands  # noqa: F401  registers the subcommands
from knapsackga import __version__
from knapsackga.commands.base_command import ExitCode
from knapsackga.commands.command_registry import CommandRegistry, get_command_registry
from knapsackga.core.config import LOG_LEVELS, KnapsackSettings
from knapsackga.core.exceptions import KnapsackError
from knapsackga.core.logging import configure_logging, logger
from knapsackga.core.models import describe_validation_error


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; that code is reserved for I/O errors."""

    def error(self, message):
        raise UsageError(message)


def build_parser(registry: CommandRegistry | None = None) -> ArgumentParser:
    registry = registry or get_command_registry()

    parser = ArgumentParser(
        prog="knapsackga",
        description="Knapsack cipher workbench: keys, encryption, and a "
        "genetic-algorithm attack on the subset-sum problem.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=None,
        help="log level on stderr (default KNAP_LOG_LEVEL)",
    )

    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for name in registry.get_command_names():
        command = registry.get_command(name)
        subparser = subparsers.add_parser(
            name, help=command.help, description=command.description or command.help
        )
        command.add_arguments(subparser)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        settings = KnapsackSettings()
    except ValidationError as e:
        detail = describe_validation_error(e)
        sys.stderr.write(f"knapsackga: invalid environment: {detail}\n")
        return ExitCode.INVALID_INPUT

    registry = get_command_registry()
    parser = build_parser(registry)
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"knapsackga: error: {e}\n")
        return ExitCode.INVALID_INPUT

    configure_logging(
        args.log_level or settings.KNAP_LOG_LEVEL, settings.KNAP_ERROR_LOG_DIR
    )
    settings.print_settings()

    command = registry.get_command(args.command)
    try:
        return int(command.execute(args, settings))
    except ValidationError as e:
        logger.error(f"{args.command}: invalid input: {describe_validation_error(e)}")
        return ExitCode.INVALID_INPUT
    except (KnapsackError, ValueError) as e:
        logger.error(f"{args.command}: {e}")
        return ExitCode.INVALID_INPUT
    except OSError as e:
        logger.error(f"{args.command}: {e}")
        return ExitCode.IO_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
