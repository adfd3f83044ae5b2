"""
LP oracle commands for thermocat.

This module provides commands for certifying the optimal family with the
exact LP, exporting LP instances, and finding best partners for a fixed
catalyst.
"""

import click

from thermocat.cli.base import ThermocatGroup, get_formatter
from thermocat.core.catalysts import FamilyParams, optimal_error
from thermocat.core.oracle import build_embezzle_lp, certify_optimality, lp_optimum, nearest_feasible_partner
from thermocat.core.lp import export_lp
from thermocat.utils.output import OutputFormatter, create_progress_spinner
from thermocat.utils.validation import parse_fixed_catalyst, validate_dimension, validate_power

MODE_CHOICE = click.Choice(["exact", "float"], case_sensitive=False)


@click.group(cls=ThermocatGroup)
def oracle() -> None:
    """Solve and export minimum-distance catalyst LPs."""


@oracle.command()
@click.option("--m", "m", type=int, required=True, help="System dimension m ≥ 2")
@click.option("--a", "a", type=int, required=True, help="Power a ≥ 1 (n = m^a)")
@click.pass_context
def certify(ctx: click.Context, m: int, a: int) -> None:
    """
    Certify that the exact LP optimum at n = m^a equals (m − 1)/(1 + (m − 1)a).

    Exits with code 1 when the values differ.

    Examples:
        thermocat oracle certify --m 2 --a 3
    """
    formatter: OutputFormatter = get_formatter(ctx)
    params = FamilyParams(validate_dimension(m), validate_power(a))
    if formatter.is_machine:
        certified = certify_optimality(params.m, params.a)
    else:
        with create_progress_spinner(f"Solving the exact LP for n = {params.n}..."):
            certified = certify_optimality(params.m, params.a)
    formatter.format_output(
        {"m": m, "a": a, "n": params.n, "closed_form": optimal_error(params), "certified": certified},
        "Optimality certificate",
    )
    if not certified:
        formatter.error(f"LP optimum at n = {params.n} differs from the closed form")
        ctx.exit(1)
    formatter.success(f"Closed form {optimal_error(params)} is the exact LP optimum at n = {params.n}")


@oracle.command()
@click.option("--m", "m", type=int, required=True, help="System dimension m ≥ 2")
@click.option("--n", "n", type=int, required=True, help="Catalyst dimension n")
@click.option("--mode", type=MODE_CHOICE, default="exact", show_default=True, help="LP arithmetic")
@click.pass_context
def optimum(ctx: click.Context, m: int, n: int, mode: str) -> None:
    """
    Optimal trace distance over all catalyst pairs of dimension n.

    Examples:
        thermocat oracle optimum --m 2 --n 6
    """
    formatter: OutputFormatter = get_formatter(ctx)
    formatter.result(lp_optimum(validate_dimension(m), validate_dimension(n, "n", 1), mode.lower()))


@oracle.command("lp-export")
@click.option("--m", "m", type=int, required=True, help="System dimension m ≥ 2")
@click.option("--n", "n", type=int, required=True, help="Catalyst dimension n")
@click.option("--redundant", is_flag=True, help="Also emit the prefix constraints k = n+1..n·m")
@click.option("--file", "-f", "path", type=click.Path(dir_okay=False, writable=True), help="Write to a file instead of stdout")
def lp_export(m: int, n: int, redundant: bool, path: str | None) -> None:
    """
    Export the embezzlement LP in plain text, one constraint per line.

    Examples:
        thermocat oracle lp-export --m 2 --n 4
        thermocat oracle lp-export --m 3 --n 9 -f m3n9.lp
    """
    text = export_lp(build_embezzle_lp(validate_dimension(m), validate_dimension(n, "n", 1), include_redundant=redundant))
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


@oracle.command()
@click.option("--fixed", required=True, help="Fixed catalyst: vdh:N or optimal:M,A")
@click.option(
    "--side",
    type=click.Choice(["input", "output"], case_sensitive=False),
    default="output",
    show_default=True,
    help="Which catalyst the fixed vector plays",
)
@click.option("--m", "m", type=int, default=2, show_default=True, help="System dimension m ≥ 2")
@click.option("--mode", type=MODE_CHOICE, default="exact", show_default=True, help="LP arithmetic")
@click.pass_context
def partner(ctx: click.Context, fixed: str, side: str, m: int, mode: str) -> None:
    """
    Best partner for a fixed catalyst and its trace distance.

    Exits with code 3 when no feasible partner exists.

    Examples:
        thermocat oracle partner --fixed vdh:8 --side output
        thermocat oracle partner --fixed optimal:2,3
    """
    formatter: OutputFormatter = get_formatter(ctx)
    fixed_vec = parse_fixed_catalyst(fixed)
    best, distance = nearest_feasible_partner(fixed_vec, side.lower(), validate_dimension(m), mode.lower())
    formatter.format_output(
        {"fixed": fixed_vec, "side": side.lower(), "m": m, "partner": best, "distance": distance},
        "Nearest feasible partner",
    )
