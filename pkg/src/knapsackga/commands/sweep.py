import argparse
from pathlib import Path

from knapsackga.commands.base_command import (
    BaseCommand,
    ExitCode,
    add_seed_argument,
    layer_ga_params,
    resolve_jobs,
)
from knapsackga.commands.command_registry import register_command
from knapsackga.core.config import KnapsackSettings
from knapsackga.core.logging import logger
from knapsackga.core.models import SweepConfig
from knapsackga.harness.experiments import paper_sweep_config, run_sweep, summarize
from knapsackga.harness.tables import write_sweep_outputs


@register_command("sweep")
class SweepCommand(BaseCommand):
    help = "run a crossover x mutation parameter sweep and write CSV tables"
    description = (
        "Writes sweep_cells.csv, one experiment_<k>.csv/.dat pair per "
        "(instance, crossover rate), summary.csv and trend.json into --out."
    )

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument(
            "--config", type=Path, default=None, help="sweep config JSON or YAML"
        )
        source.add_argument(
            "--paper",
            action="store_true",
            help="the five published instances, crossover 2-5, mutation 0.5-0.8, "
            "five runs",
        )
        add_seed_argument(parser)
        parser.add_argument(
            "--pop", type=int, default=None, help="population size for every cell"
        )
        parser.add_argument(
            "--max-gen", type=int, default=None, help="generation cap for every cell"
        )
        parser.add_argument(
            "--jobs",
            type=int,
            default=None,
            help="worker processes (default KNAP_JOBS); output does not depend on it",
        )
        parser.add_argument(
            "--out", type=Path, required=True, help="output directory"
        )

    def _load_config(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> SweepConfig:
        overrides = {
            "seed": args.seed,
            "population_size": args.pop,
            "max_generations": args.max_gen,
        }
        if args.paper:
            config = paper_sweep_config()
            base_params = layer_ga_params(settings, overrides=overrides)
        else:
            config = SweepConfig.from_file(args.config)
            base_params = layer_ga_params(settings, config.base_params, overrides)
        return config.model_copy(update={"base_params": base_params})

    def execute(
        self, args: argparse.Namespace, settings: KnapsackSettings
    ) -> ExitCode:
        config = self._load_config(args, settings)
        cells = run_sweep(config, jobs=resolve_jobs(args, settings))
        summary = summarize(cells)

        written = write_sweep_outputs(cells, summary, args.out, config)
        logger.info(f"Wrote {len(written)} files to {args.out}")
        print(
            f"cells: {len(cells)}  best: crossover {summary.best_cx_rate:g}, "
            f"mutation {summary.best_mut_rate:g} (mean {summary.best_mean:g})"
        )
        return ExitCode.OK
