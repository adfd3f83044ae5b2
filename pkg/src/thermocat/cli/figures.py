"""
Figure and table data for thermocat.

Figures are emitted as data (CSV with ``-o csv``); plotting is left to
external tools.
"""

import logging
import math
from fractions import Fraction
from typing import Any

import click

from thermocat.cli.base import ThermocatCommand, get_formatter
from thermocat.core.bounds import dim_bound_diag, energy_bound
from thermocat.core.catalysts import FamilyParams, family_table, optimal_error, vdh_state
from thermocat.core.exceptions import InfeasibleError, ValidationError
from thermocat.core.hamiltonians import FiniteSpectrum, harmonic, trivial_spectrum
from thermocat.core.oracle import nearest_feasible_partner
from thermocat.utils.output import OutputFormatter, create_progress_spinner

logger = logging.getLogger(__name__)

EXACT_AUTO_LIMIT = 32
FAMILY_FIGURES = {1: (2, 3), 2: (3, 3)}


def fig3_rows(max_a: int = 8, mode: str = "auto") -> list[dict[str, Any]]:
    """
    Rows (n, error_ours, error_vdh) for m = 2 and n = 2^a, a = 1..max_a.

    ``error_vdh`` is the distance of the best input partner for the fixed
    output catalyst vdh_state(n), or ``"infeasible"`` when none exists.
    ``mode="auto"`` solves exactly up to n = 32 and in floats beyond.
    """
    if max_a < 1:
        raise ValidationError(f"--max-a must be at least 1, got {max_a}")
    rows = []
    for a in range(1, max_a + 1):
        params = FamilyParams(2, a)
        n = params.n
        lp_mode = mode if mode != "auto" else ("exact" if n <= EXACT_AUTO_LIMIT else "float")
        try:
            _, error_vdh = nearest_feasible_partner(vdh_state(n), "output", 2, lp_mode)
        except InfeasibleError:
            error_vdh = "infeasible"
        logger.debug("fig3 n=%d (%s): vdh error %s", n, lp_mode, error_vdh)
        rows.append({"n": n, "error_ours": optimal_error(params), "error_vdh": error_vdh})
    return rows


def table1_rows() -> list[dict[str, Any]]:
    """Where embezzling with arbitrary accuracy is possible, with a computed bound for each 'No'."""
    degenerate = optimal_error(FamilyParams(2, 3))
    bounded = dim_bound_diag(
        FiniteSpectrum(levels=(0.0, math.log(2)), beta=1.0),
        FiniteSpectrum(levels=(0.0, math.log(2)), beta=1.0),
    )
    unbounded = energy_bound(trivial_spectrum(2, 1.0), harmonic(1.0, 1.0), 1.0)
    return [
        {
            "energy_levels": "fully degenerate",
            "dimension": "bounded",
            "verdict": f"No, d ≥ {degenerate} at (m=2,n=8)",
            "bound": degenerate,
        },
        {
            "energy_levels": "fully degenerate",
            "dimension": "unbounded",
            "verdict": "Yes (error → 0 as n → ∞)",
            "bound": Fraction(0),
        },
        {
            "energy_levels": "bounded",
            "dimension": "bounded",
            "verdict": "No, d ≥ (A − 1)·e^(−βE_max)/Z_C; sys = cat = (0, ln 2), β = 1",
            "bound": bounded.bound,
        },
        {
            "energy_levels": "bounded",
            "dimension": "unbounded",
            "verdict": "Probably, true at least for fully degenerate Hamiltonians",
            "bound": None,
        },
        {
            "energy_levels": "unbounded",
            "dimension": "bounded",
            "verdict": "N/A",
            "bound": None,
        },
        {
            "energy_levels": "unbounded",
            "dimension": "unbounded",
            "verdict": "No if mean energy and Z finite; trivial m=2 system, harmonic catalyst ħω=1, β=1, E=1",
            "bound": unbounded.bound,
        },
    ]


@click.command(cls=ThermocatCommand)
@click.argument("number", type=click.IntRange(1, 3))
@click.option("--max-a", type=int, default=8, show_default=True, help="Largest power a for figure 3 (n = 2^a)")
@click.option(
    "--mode",
    type=click.Choice(["auto", "exact", "float"], case_sensitive=False),
    default="auto",
    show_default=True,
    help="LP arithmetic for figure 3; auto is exact up to n = 32",
)
@click.pass_context
def fig(ctx: click.Context, number: int, max_a: int, mode: str) -> None:
    """
    Emit the data behind figure NUMBER.

    1 and 2 list the eigenvalues of the optimal output catalyst next to the
    van Dam-Hayden state for (m, n) = (2, 8) and (3, 27). 3 compares the
    errors of both families for m = 2.

    Examples:
        thermocat -o csv fig 1
        thermocat -o csv fig 3 --max-a 5 --mode exact
    """
    formatter: OutputFormatter = get_formatter(ctx)
    if number in FAMILY_FIGURES:
        m, a = FAMILY_FIGURES[number]
        formatter.format_output(family_table(m, a), f"Figure {number}: eigenvalues, m={m}, n={m**a}")
        return

    mode = mode.lower()
    if mode == "auto" and 2**max_a > EXACT_AUTO_LIMIT:
        formatter.info(f"Partner LPs with n > {EXACT_AUTO_LIMIT} are solved in floating point")
    if formatter.is_machine:
        rows = fig3_rows(max_a, mode)
    else:
        with create_progress_spinner("Solving partner LPs..."):
            rows = fig3_rows(max_a, mode)
    formatter.format_output(rows, "Figure 3: trace distance error, m=2")


@click.command(cls=ThermocatCommand)
@click.pass_context
def table1(ctx: click.Context) -> None:
    """
    Emit the table of regimes where thermal embezzling is possible.

    Examples:
        thermocat -o json table1
    """
    formatter: OutputFormatter = get_formatter(ctx)
    formatter.format_output(table1_rows(), "Thermal embezzling with arbitrary accuracy")
