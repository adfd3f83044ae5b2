"""
Transformation checks for thermocat.

This module provides the ``check`` command, which tests the Rényi-divergence
monotonicity conditions for a proposed transformation, and ``divergence``,
which evaluates D_α between two vectors.
"""

import click

from thermocat.cli.base import ThermocatCommand, get_formatter
from thermocat.core.divergences import d_alpha_diag, default_alpha_grid, monotonicity_check
from thermocat.core.exceptions import ValidationError
from thermocat.core.hamiltonians import thermal_weights
from thermocat.utils.output import OutputFormatter
from thermocat.utils.serialization import load_transform
from thermocat.utils.validation import parse_alpha, parse_probvec


@click.command(cls=ThermocatCommand)
@click.argument("transform_file", type=click.Path(dir_okay=False))
@click.pass_context
def check(ctx: click.Context, transform_file: str) -> None:
    """
    Check the divergence conditions for a transformation p_in → p_out.

    TRANSFORM_FILE is a JSON object with "p_in", "p_out" and a finite
    "spectrum". A pass is a necessary condition only.

    Examples:
        thermocat -o json check transform.json
    """
    formatter: OutputFormatter = get_formatter(ctx)
    p_in, p_out, spec = load_transform(transform_file)
    tau = thermal_weights(spec).weights
    verdict = monotonicity_check(p_in, p_out, tau)
    formatter.format_output(verdict, "Monotonicity check")
    if not verdict.passed and not formatter.is_machine:
        formatter.warning(f"Condition violated at α = {verdict.witness_alpha.label()} by {verdict.gap:.6g}")


@click.command(cls=ThermocatCommand)
@click.option("--p", "p_text", required=True, help="First vector, e.g. 3/4,1/4")
@click.option("--q", "q_text", required=True, help="Second vector, e.g. 1/2,1/2")
@click.option("--alpha", "alphas", multiple=True, help="Rényi order (repeatable); defaults to the configured grid")
@click.pass_context
def divergence(ctx: click.Context, p_text: str, q_text: str, alphas: tuple[str, ...]) -> None:
    """
    Evaluate D_α(p‖q) in the configured log base.

    Examples:
        thermocat divergence --p 3/4,1/4 --q 1/2,1/2 --alpha 2
        thermocat -o csv divergence --p 1,0 --q 1/2,1/2
    """
    formatter: OutputFormatter = get_formatter(ctx)
    p = parse_probvec(p_text)
    q = parse_probvec(q_text)
    if len(p) != len(q):
        raise ValidationError(f"Vectors have different lengths ({len(p)} vs {len(q)})")
    grid = [parse_alpha(a) for a in alphas] if alphas else default_alpha_grid()
    rows = [{"alpha": a.label(), "divergence": d_alpha_diag(p, q, a).to_json()} for a in grid]
    formatter.format_output(rows, "Rényi divergences")
