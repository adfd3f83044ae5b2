"""
Lower-bound commands for thermocat.

This module exposes the dimension and energy bounds on catalytic error.
Spectra are given as compact flags, see ``parse_spectrum_flag``.
"""

import click

from thermocat.cli.base import ThermocatGroup, get_formatter
from thermocat.core.bounds import (
    dim_bound_arbitrary,
    dim_bound_diag,
    energy_bound,
    energy_bound_arbitrary,
    energy_bound_maintext,
)
from thermocat.core.hamiltonians import trivial_spectrum
from thermocat.utils.output import OutputFormatter
from thermocat.utils.validation import parse_spectrum_flag, require_finite

SPECTRUM_HELP = "Spectrum: trivial:N, harmonic:HW, linear:C,E0, levels:E1,E2,... or file:PATH"


@click.group(cls=ThermocatGroup)
def bound() -> None:
    """Compute lower bounds on catalytic error."""


@bound.command()
@click.option("--sys", "sys_flag", required=True, help=SPECTRUM_HELP)
@click.option("--cat", "cat_flag", required=True, help=SPECTRUM_HELP)
@click.option("--beta", type=float, default=None, help="Inverse temperature (trivial spectra default to 1)")
@click.pass_context
def dim(ctx: click.Context, sys_flag: str, cat_flag: str, beta: float | None) -> None:
    """
    Bound for finite system and catalyst Hamiltonians.

    Examples:
        thermocat bound dim --sys trivial:2 --cat trivial:8
        thermocat bound dim --sys levels:0,0.6931 --cat levels:0,0.6931 --beta 1
    """
    formatter: OutputFormatter = get_formatter(ctx)
    sys = require_finite(parse_spectrum_flag(sys_flag, beta), "--sys")
    cat = require_finite(parse_spectrum_flag(cat_flag, beta), "--cat")
    formatter.format_output(dim_bound_diag(sys, cat), "Dimension bound")


@bound.command("dim-arbitrary")
@click.option("--kappa", type=float, required=True, help="κ₁ = D_∞(ρ′‖τ) − D_∞(ρ‖τ) in bits")
@click.option("--cat", "cat_flag", required=True, help=SPECTRUM_HELP)
@click.option("--beta", type=float, default=None, help="Inverse temperature")
@click.pass_context
def dim_arbitrary(ctx: click.Context, kappa: float, cat_flag: str, beta: float | None) -> None:
    """
    Dimension bound for arbitrary system states, from the divergence gap κ₁.

    Examples:
        thermocat bound dim-arbitrary --kappa 1 --cat trivial:8
    """
    formatter: OutputFormatter = get_formatter(ctx)
    cat = require_finite(parse_spectrum_flag(cat_flag, beta), "--cat")
    report = dim_bound_arbitrary(kappa, cat)
    if report.note:
        formatter.warning(report.note)
    formatter.format_output(report, "Dimension bound (arbitrary states)")


@bound.command()
@click.option("--sys", "sys_flag", required=True, help=SPECTRUM_HELP)
@click.option("--cat", "cat_flag", required=True, help=SPECTRUM_HELP)
@click.option("--beta", type=float, default=None, help="Inverse temperature")
@click.option("--E", "energy", type=float, required=True, help="Mean-energy budget of the catalyst")
@click.pass_context
def energy(ctx: click.Context, sys_flag: str, cat_flag: str, beta: float | None, energy: float) -> None:
    """
    Bound for catalysts with bounded mean energy.

    Examples:
        thermocat bound energy --sys trivial:2 --cat harmonic:1.0 --beta 1 --E 1
    """
    formatter: OutputFormatter = get_formatter(ctx)
    sys = require_finite(parse_spectrum_flag(sys_flag, beta), "--sys")
    cat = parse_spectrum_flag(cat_flag, beta)
    formatter.format_output(energy_bound(sys, cat, energy), "Energy bound")


@bound.command("energy-arbitrary")
@click.option("--kappa", type=float, required=True, help="κ₂ = D_½(ρ′‖τ) − D_½(ρ‖τ) in bits")
@click.option("--cat", "cat_flag", required=True, help=SPECTRUM_HELP)
@click.option("--beta", type=float, default=None, help="Inverse temperature")
@click.option("--E", "energy", type=float, required=True, help="Mean-energy budget of the catalyst")
@click.pass_context
def energy_arbitrary(ctx: click.Context, kappa: float, cat_flag: str, beta: float | None, energy: float) -> None:
    """
    Energy bound for arbitrary system states, from the divergence gap κ₂.

    Examples:
        thermocat bound energy-arbitrary --kappa 1 --cat harmonic:1.0 --beta 1 --E 1
    """
    formatter: OutputFormatter = get_formatter(ctx)
    cat = parse_spectrum_flag(cat_flag, beta)
    report = energy_bound_arbitrary(kappa, cat, energy)
    if report.note:
        formatter.warning(report.note)
    formatter.format_output(report, "Energy bound (arbitrary states)")


@bound.command("energy-maintext")
@click.option("--cat", "cat_flag", required=True, help=SPECTRUM_HELP)
@click.option("--beta", type=float, default=None, help="Inverse temperature")
@click.option("--E", "energy", type=float, required=True, help="Mean-energy budget of the catalyst")
@click.option("--compare/--no-compare", default=True, show_default=True, help="Also report the two-level energy bound")
@click.pass_context
def energy_maintext(ctx: click.Context, cat_flag: str, beta: float | None, energy: float, compare: bool) -> None:
    """
    Simplified energy bound for a two-level system, in ℓ1 units.

    With --compare the general energy bound for a trivial two-level system is
    reported next to it.

    Examples:
        thermocat bound energy-maintext --cat harmonic:1.0 --beta 1 --E 1
    """
    formatter: OutputFormatter = get_formatter(ctx)
    cat = parse_spectrum_flag(cat_flag, beta)
    report = energy_bound_maintext(cat, energy)
    if not compare:
        formatter.format_output(report, "Energy bound (simplified)")
        return
    general = energy_bound(trivial_spectrum(2, cat.beta), cat, energy)
    formatter.format_output({"maintext": report.to_dict(), "general": general.to_dict()}, "Energy bounds")
