"""
Shared click classes for thermocat commands.

Library errors raised inside a command are reported on stderr with their
suggestion and turned into the error's exit code, whether the command is run
through the top-level group or invoked on its own.
"""

from typing import Any

import click
from rich.console import Console

from thermocat.core.exceptions import ThermocatError


def report_error(exc: ThermocatError) -> None:
    """Print an error and its suggestion to stderr."""
    console = Console(stderr=True)
    console.print(f"[red]Error:[/red] {exc.message}", highlight=False)
    if exc.suggestion:
        console.print(f"[yellow]Suggestion:[/yellow] {exc.suggestion}", highlight=False)


class _ReportsErrors:
    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)  # type: ignore[misc]
        except ThermocatError as exc:
            report_error(exc)
            ctx.exit(exc.exit_code)


class ThermocatCommand(_ReportsErrors, click.Command):
    """click.Command that maps ThermocatError to exit codes."""


class ThermocatGroup(_ReportsErrors, click.Group):
    """click.Group whose subcommands and subgroups report errors the same way."""

    command_class = ThermocatCommand
    group_class = type


def get_formatter(ctx: click.Context) -> Any:
    """The formatter stored by the top-level group, or a text formatter when run standalone."""
    from thermocat.utils.output import OutputFormatter

    ctx.ensure_object(dict)
    if "formatter" not in ctx.obj:
        ctx.obj["formatter"] = OutputFormatter("text")
    return ctx.obj["formatter"]
