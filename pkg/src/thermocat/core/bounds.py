"""
Lower bounds on the error of thermal catalysis.

Two families live here. Bounded-dimension bounds follow from the max-relative
entropy: an n-level catalyst with maximal energy E_max^C cannot amplify the
system's divergence without a trace-distance cost of at least
(A − 1)·e^{−βE_max^C}/Z_C. Energy-constrained bounds hold for unbounded
catalysts with finite mean energy E: the D_{1/2} monotone is relaxed through
a split inequality into two independent problems, one solved by the ε_C
envelope and the other by a one-variable Lagrange dual.

Every report states the error convention of the formula it implements
(``trace_distance`` = ½ℓ1, or ``l1``) and the γ convention used for ε_C;
``bound_canonical`` is always in trace-distance units.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

import numpy as np

from thermocat.core.config import get_config
from thermocat.core.divergences import log_base
from thermocat.core.exceptions import ConvergenceError, InfeasibleError, ValidationError
from thermocat.core.hamiltonians import (
    FiniteSpectrum,
    Spectrum,
    UnboundedSpectrum,
    boltzmann_ratios,
    ground_energy,
    max_energy,
    partition_function,
)
from thermocat.core.spectra import ProbVec, Scalar

logger = logging.getLogger(__name__)

BoundKind = Literal["dim_diag", "dim_arbitrary", "energy_diag", "energy_arbitrary", "energy_maintext"]
ErrorConvention = Literal["trace_distance", "l1"]
GammaConvention = Literal["exp(-beta)", "exp(-beta/2)"]
SplitForm = Literal["general", "maintext"]

MAINTEXT_SPLIT_CONSTANT = Fraction(1, 3)
MAINTEXT_AMPLIFICATION = 2
SPLIT_SLACK = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """A lower bound on catalytic error together with the quantities that produced it."""

    bound: Scalar
    kind: BoundKind
    intermediates: dict[str, Any] = field(default_factory=dict)
    error_convention: ErrorConvention = "trace_distance"
    gamma_convention: GammaConvention | None = None
    note: str | None = None

    @property
    def bound_canonical(self) -> Scalar:
        """The bound in trace-distance units."""
        if self.error_convention == "l1":
            return self.bound / 2
        return self.bound

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "bound": self.bound,
            "bound_canonical": self.bound_canonical,
            "error_convention": self.error_convention,
            "gamma_convention": self.gamma_convention,
            "intermediates": dict(self.intermediates),
            "note": self.note,
        }


@dataclass(frozen=True)
class EpsCResult:
    """Envelope value max_W W·γ^{E_{j(W)}} with the maximizing W and level index j (from 1)."""

    value: float
    witness_W: float  # noqa: N815
    witness_level: int
    gamma: float
    candidates: int


def _check_same_beta(a: Spectrum, b: Spectrum) -> None:
    if a.beta != b.beta:
        raise ValidationError(
            f"System and catalyst spectra have different inverse temperatures ({a.beta} vs {b.beta})",
            suggestion="Both Hamiltonians must be at the temperature of the same bath",
        )


def amplification(sys: FiniteSpectrum) -> Scalar:
    """A = Z_S/e^{−βE_max^S}, exact for fully degenerate spectra."""
    return sum(boltzmann_ratios(sys, max_energy(sys)), Fraction(0))


def top_weight(cat: FiniteSpectrum) -> Scalar:
    """e^{−βE_max^C}/Z_C, the smallest Gibbs weight of the catalyst."""
    return 1 / sum(boltzmann_ratios(cat, max_energy(cat)), Fraction(0))


def dim_bound_diag(sys: FiniteSpectrum, cat: FiniteSpectrum) -> BoundReport:
    """(Z_S/e^{−βE_max^S} − 1)·e^{−βE_max^C}/Z_C for finite system and catalyst."""
    _check_same_beta(sys, cat)
    a = amplification(sys)
    weight = top_weight(cat)
    bound = (a - 1) * weight
    return BoundReport(
        bound=bound,
        kind="dim_diag",
        intermediates={
            "A": a,
            "Z_S": partition_function(sys),
            "Z_C": partition_function(cat),
            "E_max_S": max_energy(sys),
            "E_max_C": max_energy(cat),
            "top_weight_C": weight,
        },
    )


def _amplification_from_kappa(kappa: Scalar) -> Scalar:
    base = log_base()
    if isinstance(kappa, int | Fraction) and Fraction(kappa).denominator == 1 and base == 2:
        return Fraction(2) ** int(kappa)
    return base ** float(kappa)


def _check_kappa(kappa: Scalar, name: str) -> None:
    if not math.isfinite(float(kappa)):
        raise ValidationError(
            f"{name} must be finite, got {kappa!r}",
            suggestion="An infinite divergence gap means the output state has support outside the thermal state",
        )


def dim_bound_arbitrary(kappa1: Scalar, cat: FiniteSpectrum) -> BoundReport:
    """[2^{κ₁} − 1]·e^{−βE_max^C}/Z_C; vacuous (0) when κ₁ ≤ 0."""
    _check_kappa(kappa1, "κ₁")
    weight = top_weight(cat)
    intermediates = {"kappa": kappa1, "Z_C": partition_function(cat), "top_weight_C": weight}
    if kappa1 <= 0:
        logger.warning("κ₁ = %s ≤ 0: the transformation does not raise D_∞, bound is vacuous", kappa1)
        return BoundReport(
            bound=Fraction(0),
            kind="dim_arbitrary",
            intermediates=intermediates,
            note="vacuous: κ₁ ≤ 0, the transformation does not increase D_∞ relative to the thermal state",
        )
    a = _amplification_from_kappa(kappa1)
    intermediates["A"] = a
    return BoundReport(bound=(a - 1) * weight, kind="dim_arbitrary", intermediates=intermediates)


def f_of(a: Scalar) -> Scalar:
    """f(a) = ½·a²/(a² + 1), defined for a ≥ 2; exact for rational a."""
    if a < 2:
        raise ValidationError(
            f"f(a) needs a ≥ 2, got {a}",
            suggestion="The split inequality is only established for a ≥ 2",
        )
    if isinstance(a, int | Fraction):
        a = Fraction(a)
        return a * a / (2 * (a * a + 1))
    a = float(a)
    return 0.5 * a * a / (a * a + 1)


def _check_split_domain(x: float, y: float, a: float) -> None:
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise ValidationError(f"Split inequality needs x, y in [0, 1], got ({x}, {y})")
    if a < 2:
        raise ValidationError(f"Split inequality needs a ≥ 2, got {a}")


def split_inequality_holds(x: float, y: float, a: float = 2.0, form: SplitForm = "general") -> bool:
    """
    Check √x − √a·√y ≤ √|x − y| − f(a)·y at one point.

    The ``maintext`` form is √x − √(2y) ≤ √|x − y| − y/3 and ignores ``a``.
    """
    _check_split_domain(x, y, a)
    return bool(split_inequality_batch(np.array([x]), np.array([y]), a, form)[0])


def split_inequality_batch(x: np.ndarray, y: np.ndarray, a: float = 2.0, form: SplitForm = "general") -> np.ndarray:
    """Vectorised split-inequality check; returns a boolean array."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if form == "maintext":
        lhs = np.sqrt(x) - np.sqrt(MAINTEXT_AMPLIFICATION * y)
        rhs = np.sqrt(np.abs(x - y)) - float(MAINTEXT_SPLIT_CONSTANT) * y
    elif form == "general":
        if a < 2:
            raise ValidationError(f"Split inequality needs a ≥ 2, got {a}")
        lhs = np.sqrt(x) - math.sqrt(a) * np.sqrt(y)
        rhs = np.sqrt(np.abs(x - y)) - float(f_of(float(a))) * y
    else:
        raise ValidationError(f"Unknown split form '{form}'", suggestion="Use 'general' or 'maintext'")
    return lhs <= rhs + SPLIT_SLACK


def _gamma(beta: float, convention: GammaConvention) -> float:
    return math.exp(-beta) if convention == "exp(-beta)" else math.exp(-beta / 2)


def eps_C(cat: Spectrum, E: float, gamma_convention: GammaConvention = "exp(-beta)") -> EpsCResult:  # noqa: N802, N803
    """
    Envelope lower bound on min Σ_j ω_j γ^{E_j} over distributions with mean energy ≤ E.

    The step function W ↦ j(W) = min{j : E_{j+1} > E/(1 − W)} has its
    breakpoints at W_j = 1 − E/E_{j+1}, so only those candidates are
    evaluated, each with value W_j·γ^{E_j}. The scan stops once γ^{E_j} drops
    below the best value seen, since no later candidate can exceed it. For a
    finite spectrum the top level contributes the candidate γ^{E_n}.
    """
    e_ground = ground_energy(cat)
    if e_ground < 0:
        raise ValidationError(
            f"Catalyst levels must be nonnegative, got ground energy {e_ground}",
            suggestion="Shift the spectrum so the ground state sits at zero or above",
        )
    if not math.isfinite(E) or E < e_ground:
        raise InfeasibleError(
            f"Infeasible energy constraint: E = {E} is below the ground energy {e_ground}",
            suggestion="No distribution has a mean energy below its lowest level",
        )
    if isinstance(cat, UnboundedSpectrum) and cat.tail_gap is None:
        raise ValidationError(
            "The ε_C envelope of an unbounded spectrum needs a declared tail gap",
            suggestion="Declare 'tail_gap' so the levels are known to diverge",
        )

    gamma = _gamma(cat.beta, gamma_convention)
    best, best_w, best_j = 0.0, 0.0, 0
    candidates = 0
    last = cat.dimension if isinstance(cat, FiniteSpectrum) else None
    max_terms = get_config().get("partition.max_terms", 1_000_000)

    j = 1
    energy = cat.level(1)
    while True:
        envelope = gamma**energy
        if best > 0 and envelope <= best:
            break
        if last is not None and j == last:
            candidates += 1
            if envelope > best:
                best, best_w, best_j = envelope, 1.0, j
            break
        next_energy = cat.level(j + 1)
        if next_energy > E:
            w = 1.0 - E / next_energy
            candidates += 1
            value = w * envelope
            if value > best:
                best, best_w, best_j = value, w, j
        if j >= max_terms:
            raise ConvergenceError(
                "ε_C envelope did not terminate",
                iterations=j,
                suggestion="Check that the levels grow without bound, or raise 'partition.max_terms'",
            )
        j += 1
        energy = next_energy

    logger.debug("eps_C=%.6g at W=%.6g, level %d after %d candidates", best, best_w, best_j, candidates)
    return EpsCResult(value=best, witness_W=best_w, witness_level=best_j, gamma=gamma, candidates=candidates)


def dual_quadratic_bound(c: float, z: float) -> float:
    """
    max_{λ≥0} (−¼λ²Z + λc) = c²/Z.

    This is the Lagrange dual of min Σx_j subject to Σ√x_j·γ^{E_j} ≥ c with
    Z = Σγ^{2E_j}, so it lower-bounds that minimum.
    """
    if not z > 0:
        raise ValidationError(f"Partition function must be positive, got {z}")
    if c < 0:
        raise ValidationError(f"Dual constraint level must be nonnegative, got {c}")
    return c * c / z


def _energy_report(
    a: Scalar,
    cat: Spectrum,
    E: float,  # noqa: N803
    kind: BoundKind,
    extra: dict[str, Any],
) -> BoundReport:
    f_a = f_of(a)
    eps = eps_C(cat, E, "exp(-beta)")
    z_c = float(partition_function(cat))
    bound = 0.5 * dual_quadratic_bound(float(f_a) * eps.value, z_c)
    intermediates = {
        **extra,
        "A": a,
        "f_A": f_a,
        "eps_C": eps.value,
        "witness_W": eps.witness_W,
        "witness_level_j": eps.witness_level,
        "Z_C": z_c,
        "E": E,
    }
    return BoundReport(bound=bound, kind=kind, intermediates=intermediates, gamma_convention="exp(-beta)")


def energy_bound(sys: FiniteSpectrum, cat: Spectrum, E: float) -> BoundReport:  # noqa: N803
    """½·f(A)²·ε_C²/Z_C with A = Z_S/e^{−βE_max^S}, for catalysts with mean energy ≤ E."""
    _check_same_beta(sys, cat)
    a = amplification(sys)
    if a < 2:
        raise ValidationError(
            f"Energy bound needs A = Z_S/e^(-βE_max) ≥ 2, got {a}",
            suggestion="A one-level system has nothing to transform",
        )
    return _energy_report(a, cat, E, "energy_diag", {"Z_S": partition_function(sys)})


def energy_bound_arbitrary(kappa2: Scalar, cat: Spectrum, E: float) -> BoundReport:  # noqa: N803
    """½·f(2^{κ₂})²·ε_C²/Z_C; vacuous (0) when 2^{κ₂} < 2."""
    _check_kappa(kappa2, "κ₂")
    a = _amplification_from_kappa(kappa2)
    if a < 2:
        # still reject infeasible energies before declaring the bound vacuous
        eps_C(cat, E)
        logger.warning("2^κ₂ = %s < 2: energy bound is vacuous", a)
        return BoundReport(
            bound=Fraction(0),
            kind="energy_arbitrary",
            intermediates={"kappa": kappa2, "A": a},
            gamma_convention="exp(-beta)",
            note="vacuous: 2^κ₂ < 2, the split inequality gives no bound",
        )
    return _energy_report(a, cat, E, "energy_arbitrary", {"kappa": kappa2})


def energy_bound_maintext(cat: Spectrum, E: float) -> BoundReport:  # noqa: N803
    """
    ε₁²/(9·Z_C) for a trivial two-level system, with ε₁ taken at γ = e^{−β/2}.

    The objective is Σ|ω_i − ω′_i| without the ½, so the bound is reported in
    ℓ1 units; ``bound_canonical`` halves it.
    """
    eps = eps_C(cat, E, "exp(-beta/2)")
    z_c = float(partition_function(cat))
    bound = dual_quadratic_bound(float(MAINTEXT_SPLIT_CONSTANT) * eps.value, z_c)
    return BoundReport(
        bound=bound,
        kind="energy_maintext",
        intermediates={
            "eps_1": eps.value,
            "witness_W": eps.witness_W,
            "witness_level_j": eps.witness_level,
            "Z_C": z_c,
            "split_constant": MAINTEXT_SPLIT_CONSTANT,
            "E": E,
        },
        error_convention="l1",
        gamma_convention="exp(-beta/2)",
    )


def _levels_for(cat: Spectrum, count: int) -> np.ndarray:
    if isinstance(cat, FiniteSpectrum) and count > cat.dimension:
        raise ValidationError(f"Vectors of length {count} exceed the catalyst dimension {cat.dimension}")
    return np.array([cat.level(j) for j in range(1, count + 1)], dtype=float)


def primal_feasible_distance(
    cat: Spectrum,
    E: float,  # noqa: N803
    omega: ProbVec,
    omega_prime: ProbVec,
    amplification_factor: float = 2.0,
) -> float | None:
    """
    ℓ1 distance Σ|ω_i − ω′_i| if (ω, ω′) is feasible for the D_{1/2}-relaxed problem, else None.

    Feasibility: Σ√ω′_i·γ^{E_i} ≥ √A·Σ√ω_i·γ^{E_i} with γ = e^{−β/2}, and mean
    energy Σ E_i·ω_i ≤ E. Both vectors are indexed against the catalyst levels.
    """
    if len(omega) != len(omega_prime):
        raise ValidationError("Catalyst vectors must have equal lengths")
    levels = _levels_for(cat, len(omega))
    w, wp = omega.as_array(), omega_prime.as_array()
    weights = np.exp(-cat.beta * levels / 2)
    tolerance = get_config().get("numerics.float_tolerance", 1e-12)

    if float(np.dot(levels, w)) > E + tolerance:
        return None
    if float(np.dot(np.sqrt(wp), weights)) < math.sqrt(amplification_factor) * float(np.dot(np.sqrt(w), weights)):
        return None
    return float(np.sum(np.abs(w - wp)))
