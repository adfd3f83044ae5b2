"""
Randomized checks for thermocat.

This module provides seeded fuzzing of the split inequality and of the
dual-versus-primal relation behind the energy bound.
"""

import math

import click
import numpy as np

from thermocat.cli.base import ThermocatGroup, get_formatter
from thermocat.core.bounds import energy_bound, primal_feasible_distance, split_inequality_batch
from thermocat.core.hamiltonians import FiniteSpectrum, trivial_spectrum
from thermocat.core.spectra import ProbVec
from thermocat.utils.helpers import make_rng, pluralize
from thermocat.utils.output import OutputFormatter
from thermocat.utils.validation import validate_positive

DEFAULT_A_VALUES = (2.0, 4.0, 10.0, 100.0)
BATCH = 100_000


def fuzz_split(samples: int, seed: int, a_values: tuple[float, ...] = DEFAULT_A_VALUES) -> list[dict[str, object]]:
    """Count split-inequality violations on uniform (x, y) ∈ [0, 1]² for each form."""
    rng = make_rng(seed)
    forms = [("general", a) for a in a_values] + [("maintext", 2.0)]
    violations = dict.fromkeys(forms, 0)
    remaining = samples
    while remaining > 0:
        size = min(BATCH, remaining)
        x = rng.random(size)
        y = rng.random(size)
        for form, a in forms:
            violations[(form, a)] += int(np.count_nonzero(~split_inequality_batch(x, y, a, form)))
        remaining -= size
    return [{"form": form, "a": a, "samples": samples, "violations": violations[(form, a)]} for form, a in forms]


def fuzz_primal(
    samples: int,
    seed: int,
    beta: float = 0.2,
    energy: float = 1.0,
    levels: int = 30,
    max_draws: int = 1_000_000,
) -> dict[str, object]:
    """
    Draw feasible points of the D_½-relaxed energy problem and compare with the dual bound.

    The catalyst is a harmonic ladder truncated to ``levels`` levels, the
    system a trivial qubit (A = 2). ω is concentrated on low levels and ω′
    spread out, which makes the amplification constraint satisfiable.
    """
    rng = make_rng(seed)
    cat = FiniteSpectrum(levels=tuple(float(j) for j in range(levels)), beta=beta)
    report = energy_bound(trivial_spectrum(2, beta), cat, energy)
    threshold = 2 * float(report.bound)

    found, draws, violations = 0, 0, 0
    smallest = math.inf
    while found < samples and draws < max_draws:
        draws += 1
        omega = np.zeros(levels)
        head = rng.integers(1, 4)
        omega[:head] = rng.dirichlet(np.ones(head))
        omega_p = rng.dirichlet(np.full(levels, rng.uniform(0.2, 2.0)))
        distance = primal_feasible_distance(cat, energy, ProbVec.normalized(omega.tolist()), ProbVec.normalized(omega_p.tolist()))
        if distance is None:
            continue
        found += 1
        smallest = min(smallest, distance)
        if distance < threshold:
            violations += 1
    return {
        "samples": found,
        "draws": draws,
        "violations": violations,
        "dual_bound_l1": threshold,
        "smallest_primal_l1": smallest if found else None,
    }


@click.group(cls=ThermocatGroup)
def fuzz() -> None:
    """Seeded randomized checks of the bound inequalities."""


@fuzz.command()
@click.option("--samples", type=click.IntRange(1), default=1_000_000, show_default=True, help="Points per form")
@click.option("--seed", type=int, default=None, help="Random seed (default: run.seed)")
@click.pass_context
def split(ctx: click.Context, samples: int, seed: int | None) -> None:
    """
    Fuzz the split inequality for a ∈ {2, 4, 10, 100} and the simplified form.

    Exits with code 1 on any violation.

    Examples:
        thermocat fuzz split --samples 100000 --seed 7
    """
    formatter: OutputFormatter = get_formatter(ctx)
    rows = fuzz_split(samples, seed)
    formatter.format_output(rows, "Split inequality fuzzing")
    total = sum(int(r["violations"]) for r in rows)
    if total:
        formatter.error(f"{total} {pluralize(total, 'violation')} found")
        ctx.exit(1)
    formatter.success(f"No violations in {samples} {pluralize(samples, 'sample')} per form")


@fuzz.command()
@click.option("--samples", type=click.IntRange(1), default=1000, show_default=True, help="Feasible points to collect")
@click.option("--seed", type=int, default=None, help="Random seed (default: run.seed)")
@click.option("--beta", type=float, default=0.2, show_default=True, help="Inverse temperature")
@click.option("--E", "energy", type=float, default=1.0, show_default=True, help="Mean-energy budget")
@click.pass_context
def primal(ctx: click.Context, samples: int, seed: int | None, beta: float, energy: float) -> None:
    """
    Check that random feasible primal points never beat the dual energy bound.

    Examples:
        thermocat fuzz primal --samples 1000 --seed 0
    """
    formatter: OutputFormatter = get_formatter(ctx)
    summary = fuzz_primal(samples, seed, validate_positive(beta, "--beta"), validate_positive(energy, "--E"))
    formatter.format_output(summary, "Dual versus primal")
    violations = int(summary["violations"])
    if violations:
        formatter.error(f"{violations} feasible {pluralize(violations, 'point')} beat the dual bound")
        ctx.exit(1)
    if not summary["samples"]:
        formatter.warning("No feasible point found; change --beta or --E")
        return
    formatter.success(f"All {summary['samples']} feasible points respect the dual bound")
