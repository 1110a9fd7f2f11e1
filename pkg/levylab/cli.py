#!/usr/bin/env python3
"""Main CLI interface for levylab."""

import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Optional

import click
import yaml
from rich.console import Console
from rich.table import Table

from .experiments import ExperimentConfig, ExperimentReport, list_experiments, run_experiment
from .models import check_assumptions, dual_model, phi_exponent, validate_model
from .models.levy_model import LevyModel
from .paths import HorizonPolicy, SimulationSettings, simulate_path
from .reports import PathCsvWriter
from .utils.config import ConfigManager
from .utils.exceptions import ConfigurationError, ExperimentError, LevyLabError, ValidationError
from .utils.logger import Logger
from .utils.random_streams import substream
from .utils.validators import Validators

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def _fail(logger: Logger, error: Exception, what: str) -> None:
    """Log, print and exit with the status matching the error."""
    logger.log_error(error, {'command': what})
    click.echo(f"❌ Error: {error}", err=True)
    if isinstance(error, (ConfigurationError, ValidationError, ExperimentError)):
        sys.exit(EXIT_CONFIG)
    sys.exit(EXIT_FAIL)


def _verdict_table(report: ExperimentReport) -> Table:
    table = Table(title=f"{report.experiment} ({report.anchor})")
    table.add_column("test_id")
    table.add_column("statistic", justify="right")
    table.add_column("threshold", justify="right")
    table.add_column("ess", justify="right")
    table.add_column("pass", justify="center")
    for row in report.tests:
        table.add_row(row.test_id, f"{row.statistic:.4g}", f"{row.threshold:.4g}", f"{row.ess:.0f}",
                      "[green]✔[/green]" if row.passed else "[red]✘[/red]")
    return table


@click.group()
@click.option('--log-level', default=None,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR']),
              help='Set the logging level (default: defaults.log_level)')
@click.option('--config-file', type=click.Path(exists=True),
              help='Path to settings file (simulation, parallel and stats keys)')
@click.pass_context
def cli(ctx, log_level: Optional[str], config_file: Optional[str]):
    """levylab - Simulate and verify Lévy processes under the Cramér condition.

    Runs named Monte Carlo experiments against the exact conditional laws of
    a Lévy process drifting to −∞, and writes machine-readable verdicts.
    """
    ctx.ensure_object(dict)
    ctx.obj['config_file'] = config_file

    logger = Logger('levylab', level=getattr(logging, log_level or 'WARNING'))
    ctx.obj['logger'] = logger

    try:
        config_manager = ConfigManager(config_file)
        config_manager.validate()
    except LevyLabError as e:
        _fail(logger, e, 'settings')
        return

    log_level = log_level or config_manager.get('defaults.log_level')
    ctx.obj['log_level'] = log_level
    ctx.obj['config'] = config_manager
    ctx.obj['logger'] = Logger('levylab', level=getattr(logging, log_level))


@cli.command()
@click.option('--config', 'config_path', required=True, type=click.Path(exists=True),
              help='Experiment configuration (JSON or YAML)')
@click.option('--output', type=click.Path(), help='Output directory (overrides the configuration)')
@click.option('--workers', type=int, help='Worker processes; never changes the results')
@click.option('--progress/--no-progress', default=None, help='Show a progress bar per ensemble')
@click.pass_context
def run(ctx, config_path: str, output: Optional[str], workers: Optional[int],
        progress: Optional[bool]):
    """Run one experiment; exit 0 if every test passes, 1 otherwise."""
    logger = ctx.obj['logger']
    config_manager = ctx.obj['config']

    try:
        if workers is not None and workers < 1:
            raise ConfigurationError(f"workers: must be at least 1, got {workers}")
        config = ExperimentConfig.from_file(config_path, config_manager)
        if output:
            config = dataclasses.replace(config, output=Path(output))
        Validators.validate_output_directory(config.output)

        report = run_experiment(config, config_manager, workers=workers, progress=progress)
        written = report.write(config.output, config.write_ensembles)
    except LevyLabError as e:
        _fail(logger, e, 'run')
        return

    Console().print(_verdict_table(report))
    click.echo(f"📁 Wrote {len(written)} files to {config.output}")
    if report.passed:
        click.echo(f"✅ {report.experiment}: all {len(report.tests)} tests passed")
        sys.exit(EXIT_PASS)
    click.echo(f"❌ {report.experiment}: {len(report.failed)} of {len(report.tests)} tests failed")
    sys.exit(EXIT_FAIL)


@cli.command('list')
@click.option('--format', 'fmt', default='table',
              type=click.Choice(['table', 'json', 'yaml']),
              help='Output format')
def list_command(fmt: str):
    """List the experiment catalog with the claim each one verifies."""
    entries = [e.to_dict() for e in list_experiments()]
    if fmt == 'json':
        click.echo(json.dumps(entries, indent=2, ensure_ascii=False))
    elif fmt == 'yaml':
        click.echo(yaml.safe_dump(entries, allow_unicode=True, sort_keys=False))
    else:
        table = Table(title="levylab experiments")
        table.add_column("name")
        table.add_column("anchor")
        table.add_column("claim")
        table.add_column("models")
        for entry in entries:
            table.add_row(entry['name'], entry['anchor'], entry['claim'], entry['models'])
        Console(width=160).print(table)


@cli.command()
@click.option('--model', 'model_path', required=True, type=click.Path(exists=True),
              help='Model description (JSON)')
@click.pass_context
def validate(ctx, model_path: str):
    """Check a model against the standing assumptions and print θ."""
    logger = ctx.obj['logger']

    try:
        raw = LevyModel.from_json(model_path)
        violations = check_assumptions(raw)
        if violations:
            for error in violations:
                click.echo(f"  - {type(error).__name__}: {error}", err=True)
            raise violations[0]
        model = validate_model(raw)
    except LevyLabError as e:
        _fail(logger, e, 'validate')
        return

    click.echo(f"✅ {model.label()} satisfies the Cramér condition")
    click.echo(f"θ = {model.theta:.10g}")
    click.echo(f"tilted mean = {model.tilted_mean:.10g}")
    if not model.has_negative_jumps:
        click.echo(f"Φ(1) of the dual = {phi_exponent(dual_model(model), 1.0):.10g}")


@cli.command()
@click.option('--model', 'model_path', required=True, type=click.Path(exists=True),
              help='Model description (JSON)')
@click.option('--horizon', type=float, help='Fixed horizon T')
@click.option('--adaptive', is_flag=True, help='Stop once the path is K below its running maximum')
@click.option('--seed', default=0, type=int, help='Master seed')
@click.option('--step', type=float, help='Grid spacing (overrides simulation.step)')
@click.option('--out', required=True, type=click.Path(), help='CSV file for the path')
@click.pass_context
def simulate(ctx, model_path: str, horizon: Optional[float], adaptive: bool, seed: int,
             step: Optional[float], out: str):
    """Simulate one path from 0 and dump it as CSV."""
    logger = ctx.obj['logger']
    config_manager = ctx.obj['config']

    try:
        if (horizon is None) == (not adaptive):
            raise ConfigurationError("horizon: give exactly one of --horizon T or --adaptive")
        model = validate_model(LevyModel.from_json(model_path))
        policy = HorizonPolicy.adaptive() if adaptive else HorizonPolicy.fixed(horizon)
        settings = SimulationSettings.from_config(config_manager, step=step)
        path = simulate_path(model, substream(seed, 'simulate', 0), policy, settings=settings)
        out_path = Path(out)
        Validators.validate_output_directory(out_path.parent)
        written = PathCsvWriter(str(out_path.parent), filename=out_path.name).write(path)
    except LevyLabError as e:
        _fail(logger, e, 'simulate')
        return

    click.echo(f"✅ Wrote {path.n_points} points up to t={path.end:g} to {written}")


@cli.command()
def version():
    """Show version information."""
    from . import __version__
    click.echo(f"levylab version {__version__}")


def main():
    """Main entry point for the levylab CLI."""
    try:
        cli()
    except KeyboardInterrupt:
        click.echo("\n👋 Interrupted")
        sys.exit(130)


if __name__ == '__main__':
    main()
