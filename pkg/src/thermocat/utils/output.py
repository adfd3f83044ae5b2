"""
Output formatting utilities for thermocat.

This module provides functions for formatting and displaying output in various formats
including text, JSON, YAML and CSV. Machine formats are written verbatim to stdout so that
runs with fixed flags are byte-identical.
"""

import csv
import io
import json
from typing import Any

import click
import yaml
from rich.console import Console
from rich.table import Table

from thermocat.utils.serialization import dump_json, to_jsonable

MACHINE_FORMATS = ("json", "yaml", "csv")


class OutputFormatter:
    """Handles output formatting for different output types."""

    def __init__(self, format_type: str = "text", console: Console | None = None, exact: bool = True) -> None:
        """
        Initialize the output formatter.

        Args:
            format_type: Output format ('text', 'json', 'yaml', 'csv')
            console: Rich console instance for text output
            exact: Render exact rationals as 'p/q' strings (otherwise as floats)
        """
        self.format_type = format_type.lower()
        self.console = console or Console()
        self.exact = exact

    @property
    def is_machine(self) -> bool:
        return self.format_type in MACHINE_FORMATS

    def format_output(self, data: Any, title: str | None = None) -> None:
        """
        Format and display output based on the configured format.

        Args:
            data: Data to format and display
            title: Optional title for the output
        """
        if self.format_type == "json":
            self._format_json(data)
        elif self.format_type == "yaml":
            self._format_yaml(data)
        elif self.format_type == "csv":
            self._format_csv(data)
        else:
            self._format_text(to_jsonable(data, self.exact), title)

    def _format_json(self, data: Any) -> None:
        """Format output as JSON."""
        click.echo(dump_json(data, self.exact))

    def _format_yaml(self, data: Any) -> None:
        """Format output as YAML."""
        yaml_str = yaml.safe_dump(to_jsonable(data, self.exact), default_flow_style=False, allow_unicode=True, sort_keys=False)
        click.echo(yaml_str.rstrip())

    def _format_csv(self, data: Any) -> None:
        """Format output as CSV: a list of rows becomes a table, a mapping becomes key,value pairs."""
        payload = to_jsonable(data, self.exact)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if isinstance(payload, list) and payload and isinstance(payload[0], dict):
            columns = list(payload[0].keys())
            writer.writerow(columns)
            for row in payload:
                writer.writerow([_cell(row.get(c, "")) for c in columns])
        elif isinstance(payload, dict):
            writer.writerow(["key", "value"])
            for key, value in payload.items():
                writer.writerow([key, _cell(value)])
        elif isinstance(payload, list):
            writer.writerow(["value"])
            for item in payload:
                writer.writerow([_cell(item)])
        else:
            writer.writerow([_cell(payload)])
        click.echo(buffer.getvalue(), nl=False)

    def _format_text(self, data: Any, title: str | None = None) -> None:
        """Format output as human-readable text."""
        if isinstance(data, dict):
            self._format_dict_as_text(data, title)
        elif isinstance(data, list):
            self._format_list_as_text(data, title)
        else:
            if title:
                self.console.print(f"[bold]{title}:[/bold] {data}")
            else:
                self.console.print(str(data))

    def _format_dict_as_text(self, data: dict[str, Any], title: str | None = None) -> None:
        """Format a dictionary as readable text."""
        if title:
            self.console.print(f"\n[bold green]{title}[/bold green]")

        table = Table(show_header=False, box=None, padding=(0, 2))
        table.add_column("Key", style="cyan", no_wrap=True)
        table.add_column("Value", style="white")

        for key, value in data.items():
            value_str = json.dumps(value, ensure_ascii=False) if isinstance(value, (dict, list)) else str(value)
            table.add_row(key, value_str)

        self.console.print(table)

    def _format_list_as_text(self, data: list, title: str | None = None) -> None:
        """Format a list as readable text."""
        if title:
            self.console.print(f"\n[bold green]{title}[/bold green]")

        if not data:
            self.console.print("[dim]No rows[/dim]")
            return

        if isinstance(data[0], dict):
            self._format_list_of_dicts_as_table(data)
        else:
            for i, item in enumerate(data, 1):
                self.console.print(f"{i}. {item}")

    def _format_list_of_dicts_as_table(self, data: list) -> None:
        """Format a list of dictionaries as a table, keeping the column order of the first row."""
        columns = list(data[0].keys())
        table = Table()
        for key in columns:
            table.add_column(key, style="cyan")
        for item in data:
            table.add_row(*[_cell(item.get(key, "")) for key in columns])
        self.console.print(table)

    def result(self, value: Any) -> None:
        """Print a single scalar result, bare in every format except json/yaml."""
        payload = to_jsonable(value, self.exact)
        if self.format_type in ("json", "yaml"):
            self.format_output({"result": payload})
        elif self.format_type == "csv":
            click.echo(_cell(payload))
        else:
            self.console.print(str(payload), markup=False, highlight=False)

    def success(self, message: str) -> None:
        """Display a success message; silent in machine formats, where the payload says it all."""
        if self.is_machine:
            return
        self.console.print(f"[green]✅ {message}[/green]")

    def error(self, message: str) -> None:
        """Display an error message; machine formats send it to stderr."""
        if self.is_machine:
            click.echo(f"error: {message}", err=True)
        else:
            self.console.print(f"[red]❌ {message}[/red]")

    def warning(self, message: str) -> None:
        """Display a warning message; machine formats keep stdout clean."""
        if self.is_machine:
            click.echo(f"warning: {message}", err=True)
        else:
            self.console.print(f"[yellow]⚠️  {message}[/yellow]")

    def info(self, message: str) -> None:
        """Display an info message; machine formats keep stdout clean."""
        if self.is_machine:
            return
        self.console.print(f"[blue]ℹ️  {message}[/blue]")


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False)
    if value is None:
        return ""
    return str(value)


def create_progress_spinner(description: str = "Working...") -> Any:
    """Create a progress spinner for long-running operations."""
    from rich.live import Live
    from rich.spinner import Spinner

    spinner = Spinner("dots", text=description)
    return Live(spinner, refresh_per_second=10, transient=True)
