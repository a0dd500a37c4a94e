"""Command-line front end: ``qfidelity avg|mc|protocol|check <spec>``.

Reports go to standard output as JSON; diagnostics go to standard error.
Exit codes: 0 success, 1 computation error, 2 input or validation error.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Callable, NoReturn, Optional, TypeVar

import click
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from . import __version__
from .client import FidelityClient
from .config import FidelitySettings
from .exceptions import QFidelityException
from .models import ProtocolEvaluationDocument

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_INPUT = 2

_T = TypeVar("_T")

err_console = Console(stderr=True)


def _fail(message: str, code: int) -> NoReturn:
    _LOGGER.debug("Exiting with code %d", code)
    err_console.print(f"[bold red]Error:[/bold red] {escape(message)}", highlight=False)
    sys.exit(code)


def _guarded(action: Callable[[], _T]) -> _T:
    """Run an action, translating library errors into exit codes."""
    try:
        return action()
    except QFidelityException as err:
        _fail(err.message, EXIT_INPUT if err.is_input_error() else EXIT_COMPUTATION)
    except ValidationError as err:
        _fail(str(err), EXIT_INPUT)
    except (OSError, json.JSONDecodeError) as err:
        _fail(str(err), EXIT_INPUT)


def _emit(document: BaseModel) -> None:
    click.echo(document.model_dump_json(indent=2))


def _client(ctx: click.Context) -> FidelityClient:
    return ctx.ensure_object(dict)["client"]


@click.group()
@click.version_option(__version__, prog_name="qfidelity")
@click.option(
    "--tol",
    type=float,
    default=None,
    help="Validation tolerance (default 1e-9, env QFIDELITY_TOL).",
)
@click.option(
    "--max-qubits",
    type=int,
    default=None,
    help="Largest qubit count the closed form accepts (env QFIDELITY_MAX_QUBITS).",
)
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
@click.pass_context
def cli(ctx: click.Context, tol: Optional[float], max_qubits: Optional[int], verbose: bool) -> None:
    """Average fidelity of n-qubit channels against a target unitary."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(message)s",
            handlers=[RichHandler(console=err_console, show_path=False)],
        )
    settings = _guarded(
        lambda: FidelitySettings.from_env(tolerance=tol, max_closed_form_qubits=max_qubits)
    )
    ctx.ensure_object(dict)["client"] = FidelityClient(settings)


spec_argument = click.argument("spec", type=click.Path(dir_okay=False, path_type=Path))


@cli.command()
@spec_argument
@click.pass_context
def avg(ctx: click.Context, spec: Path) -> None:
    """Closed-form average fidelity of SPEC."""
    client = _client(ctx)
    report = _guarded(lambda: client.average(client.load_spec(spec)))
    _emit(report)


@cli.command()
@spec_argument
@click.option("--samples", type=click.IntRange(min=2), required=True, help="Haar samples to draw.")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Seed (drawn when absent).")
@click.option("--chunks", type=click.IntRange(min=1), default=1, show_default=True,
              help="Independent substreams the samples are split into.")
@click.option("--workers", type=click.IntRange(min=1), default=None,
              help="Threads evaluating the chunks (env QFIDELITY_MC_WORKERS).")
@click.pass_context
def mc(
    ctx: click.Context,
    spec: Path,
    samples: int,
    seed: Optional[int],
    chunks: int,
    workers: Optional[int],
) -> None:
    """Monte-Carlo estimate of the average fidelity of SPEC."""
    client = _client(ctx)
    if workers is not None:
        client = FidelityClient(client.settings.model_copy(update={"mc_workers": workers}))
    report = _guarded(
        lambda: client.monte_carlo(client.load_spec(spec), samples, seed=seed, chunks=chunks)
    )
    _emit(report)


@cli.command()
@spec_argument
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True,
              help="Where to write the protocol document.")
@click.option("--evaluate", is_flag=True,
              help="Also print the protocol's value on SPEC's channel next to the closed form.")
@click.pass_context
def protocol(ctx: click.Context, spec: Path, out: Path, evaluate: bool) -> None:
    """Synthesize a pure-state measurement protocol for SPEC's target unitary."""
    client = _client(ctx)
    loaded = _guarded(lambda: client.load_spec(spec))
    built = _guarded(lambda: client.protocol(loaded))
    document = client.protocol_to_document(built)
    _guarded(lambda: out.write_text(document.model_dump_json(indent=2), encoding="utf-8"))
    err_console.print(
        f"Wrote protocol with {len(built.preparations)} preparations to {escape(str(out))}",
        highlight=False,
    )
    if evaluate:
        value = _guarded(lambda: client.evaluate_protocol(built, loaded))
        closed_form = _guarded(lambda: client.average(loaded))
        _emit(
            ProtocolEvaluationDocument(
                n=loaded.n,
                preparations=len(built.preparations),
                protocol_value=value,
                closed_form=closed_form.value,
            )
        )


@cli.command()
@spec_argument
@click.pass_context
def check(ctx: click.Context, spec: Path) -> None:
    """Validate SPEC and report per-check deviations."""
    client = _client(ctx)
    report = _guarded(lambda: client.check(client.load_spec(spec, validate=False)))
    _emit(report)

    table = Table(title="Checks", show_header=True)
    table.add_column("Check")
    table.add_column("Max deviation", justify="right")
    table.add_column("Result")
    for entry in report.checks:
        verdict = "[green]ok[/green]" if entry.ok else "[red]FAILED[/red]"
        table.add_row(entry.check, f"{entry.max_deviation:.3g}", verdict)
    err_console.print(table)

    if not report.ok:
        failed = ", ".join(entry.check for entry in report.checks if not entry.ok)
        _fail(f"checks failed: {failed}", EXIT_INPUT)


def main() -> None:
    """Console-script entry point."""
    cli(obj={})
