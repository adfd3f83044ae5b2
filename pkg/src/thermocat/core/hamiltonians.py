"""
Energy spectra at fixed inverse temperature.

A spectrum is either a finite, ascending list of levels (degeneracy by
repetition) or an unbounded ladder given by a level function ``j -> E_j`` for
``j = 1, 2, ...``. Partition functions of unbounded ladders are summed until a
geometric tail bound certifies the remainder, using the eventual level gap the
caller declares.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np
from scipy.special import logsumexp

from thermocat.core.config import get_config
from thermocat.core.exceptions import ConvergenceError, ValidationError
from thermocat.core.spectra import ProbVec, Scalar

logger = logging.getLogger(__name__)

UNBOUNDED_FAMILIES = ("harmonic", "linear_offset", "custom")


def _check_beta(beta: float) -> None:
    if not (isinstance(beta, int | float) and math.isfinite(beta) and beta > 0):
        raise ValidationError(
            f"Inverse temperature must be a positive finite number, got {beta!r}",
            suggestion="Pass --beta with a value such as 1.0",
        )


@dataclass(frozen=True)
class FiniteSpectrum:
    """Ascending energy levels E_1 ≤ ... ≤ E_n with inverse temperature beta."""

    levels: tuple[float, ...]
    beta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(float(e) for e in self.levels))
        if not self.levels:
            raise ValidationError("A finite spectrum needs at least one level")
        if any(not math.isfinite(e) for e in self.levels):
            raise ValidationError("Energy levels must be finite")
        if any(a > b for a, b in zip(self.levels, self.levels[1:])):
            raise ValidationError(
                "Energy levels must be sorted ascending",
                suggestion="List levels from the ground state upwards",
            )
        _check_beta(self.beta)

    @property
    def dimension(self) -> int:
        return len(self.levels)

    def level(self, j: int) -> float:
        """Energy of level j, counting from 1."""
        return self.levels[j - 1]


@dataclass(frozen=True)
class UnboundedSpectrum:
    """
    An infinite ladder of levels E_1 ≤ E_2 ≤ ... → ∞.

    ``tail_gap`` is a Δ > 0 such that E_{j+1} − E_j ≥ Δ for every j from some
    index on; it is what makes the partition function and the ε_C envelope
    certifiable. Only finitely many gaps are ever evaluated, so the caller
    vouches for the rest. Every built-in family has all gaps ≥ Δ from j = 1.
    """

    level_fn: Callable[[int], float] = field(compare=False)
    beta: float
    tail_gap: float | None = None
    closed_form_Z: float | None = None
    family: str = "custom"
    params: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        _check_beta(self.beta)
        if self.tail_gap is not None and not self.tail_gap > 0:
            raise ValidationError(f"Tail gap must be positive, got {self.tail_gap!r}")
        if self.family not in UNBOUNDED_FAMILIES:
            raise ValidationError(
                f"Unknown spectrum family '{self.family}'",
                suggestion=f"Use one of: {', '.join(UNBOUNDED_FAMILIES)}",
            )

    def level(self, j: int) -> float:
        if j < 1:
            raise ValidationError(f"Level index must be ≥ 1, got {j}")
        return float(self.level_fn(j))


Spectrum = FiniteSpectrum | UnboundedSpectrum


@dataclass(frozen=True)
class PartitionFunction:
    """A partition function value with a rigorous bracket [value − width/2, value + width/2]."""

    value: Scalar
    width: float = 0.0
    terms: int = 0

    def __float__(self) -> float:
        return float(self.value)

    def contains(self, z: float) -> bool:
        half = self.width / 2
        return float(self.value) - half - 1e-15 * abs(z) <= z <= float(self.value) + half + 1e-15 * abs(z)


@dataclass(frozen=True)
class ThermalWeights:
    weights: ProbVec
    Z: Scalar  # noqa: N815


def harmonic(hbar_omega: float, beta: float) -> UnboundedSpectrum:
    """Harmonic oscillator ladder E_j = ħω·(j − 1), grounded at E_1 = 0."""
    if not hbar_omega > 0:
        raise ValidationError(f"Level spacing must be positive, got {hbar_omega!r}")
    _check_beta(beta)
    return UnboundedSpectrum(
        level_fn=lambda j: hbar_omega * (j - 1),
        beta=beta,
        tail_gap=hbar_omega,
        closed_form_Z=1.0 / -math.expm1(-beta * hbar_omega),
        family="harmonic",
        params={"hbar_omega": hbar_omega},
    )


def linear_offset(spacing: float, offset: float, beta: float) -> UnboundedSpectrum:
    """Ladder E_j = c·(j − 1) + E_0."""
    if not spacing > 0:
        raise ValidationError(f"Level spacing must be positive, got {spacing!r}")
    _check_beta(beta)
    return UnboundedSpectrum(
        level_fn=lambda j: spacing * (j - 1) + offset,
        beta=beta,
        tail_gap=spacing,
        closed_form_Z=math.exp(-beta * offset) / -math.expm1(-beta * spacing),
        family="linear_offset",
        params={"spacing": spacing, "offset": offset},
    )


def polynomial(coefficients: list[float], beta: float) -> UnboundedSpectrum:
    """
    Ladder E_j = Σ_k c_k (j − 1)^k with nonnegative coefficients.

    Consecutive gaps are at least Σ_{k≥1} c_k, which serves as the tail gap.
    """
    coeffs = [float(c) for c in coefficients]
    if len(coeffs) < 2 or any(c < 0 for c in coeffs) or not any(c > 0 for c in coeffs[1:]):
        raise ValidationError(
            "Polynomial ladder needs nonnegative coefficients with a positive non-constant term",
            suggestion="For example coefficients [0, 1, 0.5] give E_j = (j-1) + 0.5(j-1)^2",
        )
    return UnboundedSpectrum(
        level_fn=lambda j: sum(c * (j - 1) ** k for k, c in enumerate(coeffs)),
        beta=beta,
        tail_gap=sum(coeffs[1:]),
        family="custom",
        params={"coefficients": coeffs},
    )


def trivial_spectrum(n: int, beta: float = 1.0) -> FiniteSpectrum:
    """Fully degenerate n-level spectrum (all levels at zero energy)."""
    if n < 1:
        raise ValidationError(f"Dimension must be positive, got {n}")
    return FiniteSpectrum(levels=(0.0,) * n, beta=beta)


def ground_energy(spec: Spectrum) -> float:
    return spec.level(1)


def max_energy(spec: Spectrum) -> float:
    """Highest level of a finite spectrum; +∞ for an unbounded ladder."""
    if isinstance(spec, FiniteSpectrum):
        return spec.levels[-1]
    return math.inf


def boltzmann_ratios(spec: FiniteSpectrum, reference: float) -> list[Scalar]:
    """
    e^{−β(E_i − reference)} for every level.

    Levels equal to the reference give an exact ``Fraction(1)`` so that fully
    degenerate spectra keep exact arithmetic downstream.
    """
    return [Fraction(1) if e == reference else math.exp(-spec.beta * (e - reference)) for e in spec.levels]


def partition_bracket(spec: Spectrum, use_closed_form: bool = True) -> PartitionFunction:
    """
    Partition function with its certification bracket.

    Finite spectra sum exactly when every level sits at zero energy and in
    floats otherwise. Unbounded ladders use the closed form when available
    (and allowed); otherwise terms are added until the tail bound
    e^{−βE_{j+1}}/(1 − e^{−βΔ}) drops below ``partition.relative_tail`` times
    the partial sum, and the midpoint of the resulting bracket is returned.

    The geometric tail bound holds only if every gap from the stopping index
    onward is at least Δ = ``tail_gap``. A sum is therefore never certified
    at a step whose own gap is below Δ, and any gap shrinking again later is
    a broken ``tail_gap`` contract that this function cannot detect.
    """
    if isinstance(spec, FiniteSpectrum):
        ratios = boltzmann_ratios(spec, 0.0)
        if all(isinstance(r, Fraction) for r in ratios):
            return PartitionFunction(value=sum(ratios, Fraction(0)), terms=len(ratios))
        log_z = float(logsumexp(-spec.beta * np.asarray(spec.levels)))
        return PartitionFunction(value=math.exp(log_z), terms=len(ratios))

    if use_closed_form and spec.closed_form_Z is not None:
        return PartitionFunction(value=spec.closed_form_Z)
    if spec.tail_gap is None:
        raise ValidationError(
            "An unbounded spectrum without a closed-form partition function needs a tail gap",
            suggestion="Declare 'tail_gap', the eventual minimal spacing between levels",
        )

    config = get_config()
    relative_tail = config.get("partition.relative_tail", 1e-15)
    max_terms = config.get("partition.max_terms", 1_000_000)
    tail_factor = 1.0 / -math.expm1(-spec.beta * spec.tail_gap)

    partial = 0.0
    compensation = 0.0
    energy = spec.level(1)
    for j in range(1, max_terms + 1):
        # Kahan summation keeps long sums within the tail tolerance
        term = math.exp(-spec.beta * energy) - compensation
        total = partial + term
        compensation = (total - partial) - term
        partial = total

        next_energy = spec.level(j + 1)
        if next_energy < energy:
            raise ValidationError(f"Levels must be ascending, but E_{j + 1} < E_{j}")
        if next_energy - energy >= spec.tail_gap:
            tail = math.exp(-spec.beta * next_energy) * tail_factor
            if tail < relative_tail * partial:
                logger.debug("Partition function certified after %d terms, tail bound %.3e", j, tail)
                return PartitionFunction(value=partial + tail / 2, width=tail, terms=j)
        energy = next_energy

    raise ConvergenceError(
        "Partition function not certified finite",
        iterations=max_terms,
        suggestion="Check the declared tail gap, or raise 'partition.max_terms'",
    )


def partition_function(spec: Spectrum) -> Scalar:
    """Z = Σ_i e^{−βE_i}, exact for fully degenerate zero-energy spectra."""
    return partition_bracket(spec).value


def thermal_weights(spec: FiniteSpectrum) -> ThermalWeights:
    """Gibbs probabilities τ_i = e^{−βE_i}/Z, descending because levels ascend."""
    if not isinstance(spec, FiniteSpectrum):
        raise ValidationError("Thermal weights are only defined for finite spectra")
    z = partition_function(spec)
    ratios = boltzmann_ratios(spec, spec.levels[0])
    if all(isinstance(r, Fraction) for r in ratios):
        weights = ProbVec([Fraction(1, len(ratios))] * len(ratios), sorted_desc=True)
        return ThermalWeights(weights=weights, Z=z)
    weights = ProbVec.normalized([float(r) for r in ratios])
    return ThermalWeights(weights=weights, Z=z)


def chebyshev_cutoff(mean: float, variance: float, eps: float) -> float:
    """
    Energy E_max = mean + sqrt(variance/eps).

    Any distribution with this mean and variance puts mass at most eps at or
    above E_max, so truncating the spectrum there costs at most eps.
    """
    if not 0 < eps < 1:
        raise ValidationError(f"Tail probability must lie in (0, 1), got {eps!r}")
    if not (math.isfinite(variance) and variance >= 0):
        raise ValidationError(f"Variance must be finite and nonnegative, got {variance!r}")
    if not math.isfinite(mean):
        raise ValidationError(f"Mean energy must be finite, got {mean!r}")
    return mean + math.sqrt(variance / eps)


def spectrum_from_json(data: Mapping[str, Any], beta: float | None = None) -> Spectrum:
    """
    Build a spectrum from its JSON description.

    ``beta`` overrides the file's value when given.
    """
    if not isinstance(data, Mapping):
        raise ValidationError("Spectrum description must be a JSON object")
    kind = data.get("kind")
    beta = beta if beta is not None else data.get("beta")
    if beta is None:
        raise ValidationError("Spectrum description has no 'beta'", suggestion="Add 'beta' or pass --beta")
    beta = float(beta)

    if kind == "finite":
        levels = data.get("levels")
        if not isinstance(levels, list):
            raise ValidationError("Finite spectrum needs a 'levels' list")
        return FiniteSpectrum(levels=tuple(float(e) for e in levels), beta=beta)

    if kind == "unbounded":
        family = data.get("family")
        params = data.get("params") or {}
        try:
            if family == "harmonic":
                spec = harmonic(float(params["hbar_omega"]), beta)
            elif family == "linear_offset":
                spec = linear_offset(float(params["spacing"]), float(params.get("offset", 0.0)), beta)
            elif family == "custom":
                spec = polynomial(list(params["coefficients"]), beta)
            else:
                raise ValidationError(
                    f"Unknown spectrum family '{family}'",
                    suggestion=f"Use one of: {', '.join(UNBOUNDED_FAMILIES)}",
                )
        except KeyError as e:
            raise ValidationError(f"Spectrum family '{family}' is missing parameter {e}") from e
        if "tail_gap" in data and data["tail_gap"] is not None:
            declared = float(data["tail_gap"])
            if declared > (spec.tail_gap or math.inf):
                raise ValidationError(
                    f"Declared tail gap {declared} exceeds the family's level spacing {spec.tail_gap}",
                )
        return spec

    raise ValidationError(
        f"Unknown spectrum kind {kind!r}",
        suggestion="Use 'finite' or 'unbounded'",
    )


def spectrum_to_dict(spec: Spectrum) -> dict[str, Any]:
    if isinstance(spec, FiniteSpectrum):
        return {"kind": "finite", "levels": list(spec.levels), "beta": spec.beta}
    return {
        "kind": "unbounded",
        "family": spec.family,
        "params": dict(spec.params),
        "beta": spec.beta,
        "tail_gap": spec.tail_gap,
    }
