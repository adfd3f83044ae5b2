"""
Catalyst commands for thermocat.

This module emits the optimal catalyst family, its closed-form error, an exact
feasibility verdict, or one step of the dimension reduction. Verification and
reduction also accept a catalyst pair read from a JSON file.
"""

from fractions import Fraction

import click

from thermocat.cli.base import ThermocatCommand, get_formatter
from thermocat.core.catalysts import FamilyParams, optimal_error, optimal_pair, reduce_pair
from thermocat.core.exceptions import ValidationError
from thermocat.core.spectra import CatalystPair, check_transformation, trace_distance
from thermocat.utils.output import OutputFormatter
from thermocat.utils.serialization import load_json_file, pair_from_dict, pair_to_dict
from thermocat.utils.validation import validate_dimension, validate_power

FILE_EMITS = ("verify", "reduce")


def _verify(
    ctx: click.Context, formatter: OutputFormatter, pair: CatalystPair, expected_error: Fraction | None = None
) -> None:
    """Print OK when the pair is feasible (and has the expected distance), FAIL with exit 1 otherwise."""
    ok = check_transformation(pair)
    if expected_error is not None:
        ok = ok and trace_distance(pair.omega_in, pair.omega_out) == expected_error
    formatter.result("OK" if ok else "FAIL")
    if not ok:
        ctx.exit(1)


@click.command(cls=ThermocatCommand)
@click.option("--m", "m", type=int, default=None, help="System dimension m ≥ 2")
@click.option("--a", "a", type=int, default=None, help="Power a ≥ 1; the catalyst has dimension n = m^a")
@click.option(
    "--pair-file",
    type=click.Path(dir_okay=False),
    default=None,
    help="Catalyst pair JSON (m, omega_in, omega_out) to verify or reduce instead of the optimal family",
)
@click.option(
    "--emit",
    type=click.Choice(["pair", "error", "verify", "reduce"], case_sensitive=False),
    default="pair",
    show_default=True,
    help="What to print",
)
@click.pass_context
def catalyst(ctx: click.Context, m: int | None, a: int | None, pair_file: str | None, emit: str) -> None:
    """
    Construct the optimal embezzling catalyst for an m-level system.

    Examples:
        thermocat catalyst --m 2 --a 3 --emit error     # 1/4
        thermocat catalyst --m 2 --a 1 --emit pair
        thermocat catalyst --m 2 --a 3 --emit verify    # OK
        thermocat catalyst --m 2 --a 3 --emit reduce
        thermocat catalyst --pair-file pair.json --emit reduce
    """
    formatter: OutputFormatter = get_formatter(ctx)
    emit = emit.lower()

    if pair_file is not None:
        if m is not None or a is not None:
            raise ValidationError("--pair-file cannot be combined with --m/--a")
        if emit not in FILE_EMITS:
            raise ValidationError(
                f"--emit {emit} needs --m and --a",
                suggestion="A pair file supports --emit verify or --emit reduce",
            )
        pair = pair_from_dict(load_json_file(pair_file))
        if emit == "verify":
            _verify(ctx, formatter, pair)
        else:
            formatter.format_output(reduce_pair(pair).to_dict(), f"Reduction of {pair_file}")
        return

    if m is None or a is None:
        raise ValidationError("--m and --a are required", suggestion="Or give a catalyst pair with --pair-file")
    params = FamilyParams(validate_dimension(m), validate_power(a))

    if emit == "error":
        formatter.result(optimal_error(params))
        return

    pair = optimal_pair(params)
    if emit == "verify":
        _verify(ctx, formatter, pair, optimal_error(params))
        return
    if emit == "reduce":
        formatter.format_output(reduce_pair(pair).to_dict(), f"Reduction of the m={m}, a={a} pair")
        return

    formatter.format_output(
        {**pair_to_dict(pair), "n": params.n, "error": optimal_error(params)},
        f"Optimal catalyst m={m}, n={params.n}",
    )
