#!/usr/bin/env python
import sys
from functools import wraps
from pathlib import Path

import click
from rich.console import Console

from qotp.config import load_config
from qotp.exceptions import ConfigError, QotpError
from qotp.experiments import read_report, run_demo, run_entropy, run_game
from qotp.utils.log import LoggerManager, log
from qotp.utils.print_utils import Timer, create_panel, create_table

EXIT_CONFIG_ERROR = 1
EXIT_RUNTIME_ERROR = 2


def common_options(func):
    """Flags shared by every subcommand; unset flags leave config-file values alone."""
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), help="YAML config file"),
        click.option("--seed", type=int, help="Experiment seed (unsigned 64-bit)"),
        click.option("--lambda", "lambdas", type=int, multiple=True, help="Security parameter; repeat for a sweep"),
        click.option("--ell", type=int, help="Message length"),
        click.option("--trials", type=int, help="Trials per grid point"),
        click.option("--out", type=click.Path(file_okay=False), help="Artifact directory"),
        click.option("--mode", type=click.Choice(["classical", "statevector"]), help="Token representation"),
        click.option("--game", type=click.Choice(["forgery", "bbotp", "rewind", "collapse", "reduction"])),
        click.option("--adversary", help="Adversary id"),
        click.option("--program", help="Program name, table:<name> or a .tt path"),
        click.option("--k", "k_values", type=int, multiple=True, help="collapse-k values; repeat for a sweep"),
        click.option("--predicate", type=click.Choice(["strong", "weak", "no-distinctness"])),
        click.option("--oracle-mode", type=click.Choice(["lazy", "keyed"])),
        click.option("--workers", type=int, help="Worker threads per grid point"),
        click.option("--accept-zero-tag", is_flag=True, default=None, help="Ablation: Verify accepts all-zero tags"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _load(command: str, config_path, accept_zero_tag, **flags):
    overrides = {key: (list(value) if isinstance(value, tuple) else value) for key, value in flags.items()}
    overrides = {key: value for key, value in overrides.items() if value not in (None, [])}
    overrides["command"] = command
    if accept_zero_tag:
        overrides["reject_zero_tag"] = False
    return load_config(config_path, overrides)


def handle_errors(func):
    """Map config errors to exit 1 and every other failure to exit 2."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ConfigError as e:
            click.secho(f"✗ {e}", fg="red", err=True)
            sys.exit(EXIT_CONFIG_ERROR)
        except QotpError as e:
            click.secho(f"✗ {type(e).__name__}: {e}", fg="red", err=True)
            sys.exit(EXIT_RUNTIME_ERROR)
        except OSError as e:
            click.secho(f"✗ {e}", fg="red", err=True)
            sys.exit(EXIT_RUNTIME_ERROR)

    return wrapper


@click.group()
@click.option("--debug", is_flag=True, help="Verbose logging with source locations")
def cli(debug: bool):
    """qotp: quantum one-time tokens and their security games"""
    if debug:
        LoggerManager.debug_mode()


@cli.command()
@common_options
@handle_errors
def demo(config_path, accept_zero_tag, **flags):
    """Keygen, token, one evaluation and a refused second one"""
    config = _load("demo", config_path, accept_zero_tag, **flags)
    for line in run_demo(config):
        click.echo(line)


@cli.command()
@common_options
@handle_errors
def game(config_path, accept_zero_tag, **flags):
    """Run a game sweep and write CSV and transcript artifacts"""
    config = _load("game", config_path, accept_zero_tag, **flags)
    timer = Timer()
    timer.start()
    artifacts = run_game(config)
    timer.stop()
    log.info(f"{config.game} sweep finished in {timer.elapsed:.1f}s")
    rows = [
        (e.game, e.params.get("lam", e.params.get("program", "")), e.trials, e.wins, f"{e.estimate:.4f}", f"[{e.ci_lo:.4f}, {e.ci_hi:.4f}]")
        for e in artifacts.estimates
    ]
    Console().print(create_table(f"{config.game} sweep", ("game", "point", "trials", "wins", "estimate", "interval"), rows))
    click.secho(f"✓ Wrote {artifacts.csv_path}", fg="green")


@cli.command()
@common_options
@handle_errors
def entropy(config_path, accept_zero_tag, **flags):
    """Print the min-entropy profile of a program"""
    config = _load("entropy", config_path, accept_zero_tag, **flags)
    profile, path = run_entropy(config)
    rows = [(x, f"{tau_x:g}") for x, tau_x in enumerate(profile.per_x)]
    Console().print(create_table(f"min-entropy of {profile.program}", ("x", "tau_x"), rows))
    click.echo(f"tau = {profile.tau:g} (r_bits = {profile.r_bits})")
    if profile.tau == 0:
        log.warning(f"Program '{profile.program}' has zero min-entropy")
        click.secho("⚠ tau = 0: the one-time security guarantee does not apply to this program", fg="yellow", err=True)
    click.secho(f"✓ Wrote {path}", fg="green")


@cli.command()
@common_options
@handle_errors
def report(config_path, accept_zero_tag, **flags):
    """Render the CSV artifacts in --out and check their provenance"""
    config = _load("report", config_path, accept_zero_tag, **flags)
    out = Path(config.out)
    if not out.is_dir():
        raise ConfigError(f"Artifact directory {out} does not exist")
    console = Console()
    entries = read_report(out)
    if not entries:
        click.secho(f"No artifacts in {out}", fg="yellow")
        return
    for entry in entries:
        status = "fingerprint ok" if entry.fingerprint_ok else "FINGERPRINT MISMATCH"
        table = create_table(entry.path.name, entry.columns, entry.rows)
        console.print(create_panel(table, title=entry.path.name, border_style="green" if entry.fingerprint_ok else "red"))
        click.secho(f"{entry.path.name}: {status}", fg="green" if entry.fingerprint_ok else "red")
    if not all(entry.fingerprint_ok for entry in entries):
        sys.exit(EXIT_RUNTIME_ERROR)


if __name__ == "__main__":
    cli()
