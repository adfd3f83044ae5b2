"""
Main entry point for the thermocat command-line interface.

This module sets up the main CLI group and registers all command modules.
"""

import logging
import os
import sys

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.traceback import install

from thermocat import __version__
from thermocat.cli import bound, catalyst, check, figures, fuzz, oracle
from thermocat.cli.base import ThermocatGroup, report_error
from thermocat.core.config import get_config
from thermocat.core.exceptions import ConfigurationError, ThermocatError
from thermocat.utils.output import OutputFormatter

# Install rich traceback handler only in development mode
if os.getenv("THERMOCAT_DEBUG"):
    install(show_locals=True)

# Global console instance
console = Console()


def configure_logging(verbose: bool) -> None:
    """Route library logging through rich on stderr: DEBUG when verbose, WARNING otherwise."""
    handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )


@click.group(cls=ThermocatGroup)
@click.version_option(version=__version__, prog_name="thermocat")
@click.option(
    "--verbose",
    "-v",
    is_flag=True,
    help="Enable verbose output for debugging.",
)
@click.option(
    "--output",
    "-o",
    type=click.Choice(["text", "json", "yaml", "csv"], case_sensitive=False),
    default=None,
    help="Output format (default: output.default_format, normally text).",
)
@click.option(
    "--numeric",
    type=click.Choice(["exact", "float"], case_sensitive=False),
    default=None,
    help="Render rationals as exact p/q strings or as floats (default: output.numeric, normally exact).",
)
@click.pass_context
def cli(ctx: click.Context, verbose: bool, output: str | None, numeric: str | None) -> None:
    """
    thermocat - optimal embezzling catalysts and lower bounds on thermal catalysis.

    Build the optimal catalyst family, certify it with an exact LP, and
    compute dimension and energy bounds on catalytic error.

    Examples:
        thermocat catalyst --m 2 --a 3 --emit error
        thermocat oracle certify --m 2 --a 3
        thermocat bound dim --sys trivial:2 --cat trivial:8
        thermocat -o csv fig 3 --max-a 6

    For more information on specific commands, use:
        thermocat <command> --help
    """
    ctx.ensure_object(dict)
    configure_logging(verbose)

    config = get_config()
    output_format = (output or config.get("output.default_format", "text")).lower()
    numeric_mode = str(numeric or config.get("output.numeric", "exact")).lower()
    if numeric_mode not in ("exact", "float"):
        raise ConfigurationError(
            f"output.numeric must be 'exact' or 'float', got {numeric_mode!r}",
            suggestion="Fix output.numeric in config.yaml",
        )
    ctx.obj["verbose"] = verbose
    ctx.obj["output_format"] = output_format
    ctx.obj["console"] = console
    ctx.obj["numeric"] = numeric_mode
    ctx.obj["formatter"] = OutputFormatter(output_format, console, exact=numeric_mode == "exact")


# Register commands
cli.add_command(catalyst.catalyst)
cli.add_command(figures.fig)
cli.add_command(figures.table1)
cli.add_command(bound.bound)
cli.add_command(check.check)
cli.add_command(check.divergence)
cli.add_command(oracle.oracle)
cli.add_command(fuzz.fuzz)


def handle_exception(exc: Exception) -> None:
    """Handle exceptions and display appropriate error messages."""
    if isinstance(exc, ThermocatError):
        report_error(exc)
        sys.exit(exc.exit_code)
    elif isinstance(exc, click.ClickException):
        # Let Click handle its own exceptions
        exc.show()
        sys.exit(exc.exit_code)
    else:
        # Unexpected error
        err = Console(stderr=True)
        err.print(f"[red]Unexpected error:[/red] {exc}")
        err.print("[yellow]This is likely a bug. Rerun with THERMOCAT_DEBUG=1 for a full traceback.[/yellow]")
        sys.exit(1)


def main() -> None:
    """Main entry point with exception handling."""
    try:
        # with standalone_mode off, ctx.exit(code) surfaces as the return value
        code = cli.main(standalone_mode=False)
        sys.exit(code if isinstance(code, int) else 0)
    except click.exceptions.Abort:
        sys.exit(1)
    except Exception as exc:
        if os.getenv("THERMOCAT_DEBUG"):
            raise
        handle_exception(exc)


if __name__ == "__main__":
    main()
