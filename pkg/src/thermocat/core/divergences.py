"""
Rényi divergences.

Diagonal (commuting) arguments are handled for every α ∈ [0, ∞] in log space.
Non-commuting states are supported at α = 1/2 and α = ∞ only, through the
Jacobi eigensolver. All values are in units of ``log_base()`` (bits by default).

Zero-probability conventions for D_α(p‖q):
  * entries with p_i = 0 contribute nothing for α > 0;
  * for α ≥ 1, any p_i > 0 with q_i = 0 gives +∞;
  * for α < 1, the divergence is +∞ only when p and q have disjoint supports;
  * α = 0 is −log Σ_{i: p_i > 0} q_i.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.special import logsumexp

from thermocat.core.config import get_config
from thermocat.core.eigen import hermitian_eigvalsh, hermitian_function
from thermocat.core.exceptions import ConfigurationError, ValidationError
from thermocat.core.spectra import ProbVec

logger = logging.getLogger(__name__)

MAX_MATRIX_DIM = 16
STATE_TOLERANCE = 1e-12
GRID_CAVEAT = "grid-necessary-only"

AlphaTag = Literal["zero", "interval", "one", "infinity"]


def log_base() -> float:
    base = get_config().get("numerics.log_base", 2)
    if not (isinstance(base, int | float) and base > 1):
        raise ConfigurationError(
            f"numerics.log_base must be a number greater than 1, got {base!r}",
            suggestion="Use 2 for bits or 2.718281828459045 for nats",
        )
    return float(base)


@dataclass(frozen=True)
class Alpha:
    """An order α ∈ [0, ∞], tagged by which branch of the definition applies."""

    tag: AlphaTag
    value: float

    @classmethod
    def of(cls, value: float | str) -> Alpha:
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ("inf", "infinity", "∞"):
                return cls("infinity", math.inf)
            try:
                value = float(text)
            except ValueError as e:
                raise ValidationError(
                    f"'{value}' is not a valid order α",
                    suggestion="Use a nonnegative number or 'inf'",
                ) from e
        value = float(value)
        if math.isnan(value) or value < 0:
            raise ValidationError(f"Order α must lie in [0, ∞], got {value!r}")
        if value == 0:
            return cls("zero", 0.0)
        if value == 1:
            return cls("one", 1.0)
        if math.isinf(value):
            return cls("infinity", math.inf)
        return cls("interval", value)

    def label(self) -> str:
        return "inf" if self.tag == "infinity" else repr(self.value)


@dataclass(frozen=True)
class DivergenceValue:
    """An extended-real divergence value: finite or +∞, never NaN."""

    value: float

    def __post_init__(self) -> None:
        if math.isnan(self.value):
            raise ValidationError("Divergence evaluated to NaN")
        if self.value == -math.inf:
            raise ValidationError("Divergence evaluated to −∞")

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def __float__(self) -> float:
        return self.value

    def to_json(self) -> float | str:
        return self.value if self.is_finite else "inf"


INFINITE = DivergenceValue(math.inf)


@dataclass(frozen=True, eq=False)
class HermitianState:
    """A density matrix of dimension ≤ 16: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"Density matrix must be square, got shape {m.shape}")
        if m.shape[0] > MAX_MATRIX_DIM:
            raise ValidationError(
                f"Density matrix dimension {m.shape[0]} exceeds {MAX_MATRIX_DIM}",
                suggestion="Use the diagonal path for large commuting states",
            )
        if not np.all(np.isfinite(m)):
            raise ValidationError("Density matrix has non-finite entries")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > STATE_TOLERANCE:
            raise ValidationError("Density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > STATE_TOLERANCE:
            raise ValidationError(f"Density matrix has trace {np.trace(m).real!r}, not 1")
        m = (m + m.conj().T) / 2
        if hermitian_eigvalsh(m)[0] < -STATE_TOLERANCE:
            raise ValidationError("Density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_probvec(cls, p: ProbVec) -> HermitianState:
        return cls(np.diag(p.as_array()).astype(complex))

    @classmethod
    def pure(cls, vector: np.ndarray | list[complex]) -> HermitianState:
        """|ψ⟩⟨ψ| for the normalized version of ``vector``."""
        psi = np.asarray(vector, dtype=complex)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValidationError("Cannot build a pure state from the zero vector")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()))


def dephase(state: HermitianState) -> ProbVec:
    """The diagonal of a density matrix (the dephasing channel's output)."""
    return ProbVec.normalized(list(np.clip(np.diag(state.matrix).real, 0.0, None)))


def _to_bits(natural: float) -> float:
    return natural / math.log(log_base())


def d_alpha_diag(p: ProbVec, q: ProbVec, alpha: Alpha | float | str) -> DivergenceValue:
    """D_α(p‖q) for commuting states, given their eigenvalue vectors in a common basis."""
    if not isinstance(alpha, Alpha):
        alpha = Alpha.of(alpha)
    if len(p) != len(q):
        raise ValidationError(f"Cannot compare distributions of lengths {len(p)} and {len(q)}")
    pa, qa = p.as_array(), q.as_array()
    support = pa > 0
    ps, qs = pa[support], qa[support]
    overlap = qs > 0

    if alpha.tag == "zero":
        mass = math.fsum(qs)
        return INFINITE if mass <= 0 else DivergenceValue(_to_bits(-math.log(mass)))

    if alpha.tag in ("one", "infinity") or alpha.value > 1:
        if not np.all(overlap):
            return INFINITE

    if alpha.tag == "one":
        return DivergenceValue(_to_bits(math.fsum(ps * (np.log(ps) - np.log(qs)))))
    if alpha.tag == "infinity":
        return DivergenceValue(_to_bits(float(np.max(np.log(ps) - np.log(qs)))))

    if not np.any(overlap):
        return INFINITE
    a = alpha.value
    log_terms = a * np.log(ps[overlap]) + (1 - a) * np.log(qs[overlap])
    return DivergenceValue(_to_bits(float(logsumexp(log_terms)) / (a - 1)))


def _support_tolerance() -> float:
    return get_config().get("divergences.jacobi_tolerance", 1e-12)


def d_inf_matrix(rho: HermitianState, sigma: HermitianState) -> DivergenceValue:
    """
    Max-relative entropy log min{λ : ρ ≤ λσ}.

    Computed as the log of the largest eigenvalue of σ^{−1/2} ρ σ^{−1/2}, with
    the inverse taken on the support of σ. Weight of ρ outside that support
    gives +∞.
    """
    if rho.dim != sigma.dim:
        raise ValidationError(f"States have different dimensions ({rho.dim} vs {sigma.dim})")
    tol = _support_tolerance()
    outside = hermitian_function(sigma.matrix, lambda w: (w <= tol).astype(float))
    if np.trace(outside @ rho.matrix).real > tol:
        return INFINITE
    inv_sqrt = hermitian_function(sigma.matrix, lambda w: np.where(w > tol, 1.0 / np.sqrt(np.clip(w, tol, None)), 0.0))
    sandwiched = inv_sqrt @ rho.matrix @ inv_sqrt
    sandwiched = (sandwiched + sandwiched.conj().T) / 2
    top = float(hermitian_eigvalsh(sandwiched)[-1])
    return DivergenceValue(_to_bits(math.log(top)))


def d_half_matrix(rho: HermitianState, sigma: HermitianState) -> DivergenceValue:
    """D_{1/2}(ρ‖σ) = −2 log tr[(ρ^{1/2} σ ρ^{1/2})^{1/2}]; +∞ for orthogonal supports."""
    if rho.dim != sigma.dim:
        raise ValidationError(f"States have different dimensions ({rho.dim} vs {sigma.dim})")
    sqrt_rho = hermitian_function(rho.matrix, lambda w: np.sqrt(np.clip(w, 0.0, None)))
    inner = sqrt_rho @ sigma.matrix @ sqrt_rho
    inner = (inner + inner.conj().T) / 2
    fidelity_root = math.fsum(np.sqrt(np.clip(hermitian_eigvalsh(inner), 0.0, None)))
    if fidelity_root <= _support_tolerance():
        return INFINITE
    return DivergenceValue(_to_bits(-2.0 * math.log(fidelity_root)))


def default_alpha_grid() -> list[Alpha]:
    """The configured α grid, always including the limit points 0, 1 and ∞."""
    values = [Alpha.of(a) for a in get_config().get("divergences.alpha_grid", [])]
    for limit in (0.0, 1.0, math.inf):
        if all(a.value != limit for a in values):
            values.append(Alpha.of(limit))
    return sorted(set(values), key=lambda a: a.value)


@dataclass(frozen=True)
class MonotonicityVerdict:
    """
    Outcome of checking D_α(p_in‖τ) ≥ D_α(p_out‖τ) over a finite α grid.

    A pass is only a necessary condition for the transformation; the grid
    cannot certify every α.
    """

    passed: bool
    witness_alpha: Alpha | None
    gap: float
    gaps: tuple[tuple[Alpha, float], ...] = field(default=())
    caveat: str = GRID_CAVEAT

    def to_dict(self) -> dict[str, object]:
        return {
            "pass": self.passed,
            "witness_alpha": None if self.witness_alpha is None else self.witness_alpha.label(),
            "gap": self.gap,
            "caveat": self.caveat,
            "gaps": [{"alpha": a.label(), "gap": g} for a, g in self.gaps],
        }


def _require_positive(tau: ProbVec) -> None:
    if any(t <= 0 for t in tau):
        raise ValidationError(
            "Thermal state must have strictly positive entries",
            suggestion="Use a finite temperature so every level has nonzero Gibbs weight",
        )


def monotonicity_check(
    p_in: ProbVec,
    p_out: ProbVec,
    tau: ProbVec,
    alphas: list[Alpha] | None = None,
) -> MonotonicityVerdict:
    """Evaluate D_α(p_in‖τ) − D_α(p_out‖τ) on the α grid and report the most violated order."""
    if not (len(p_in) == len(p_out) == len(tau)):
        raise ValidationError("Input, output and thermal state must have equal lengths")
    _require_positive(tau)
    grid = alphas if alphas is not None else default_alpha_grid()
    tolerance = get_config().get("numerics.divergence_tolerance", 1e-10)

    gaps = []
    for alpha in grid:
        before = d_alpha_diag(p_in, tau, alpha).value
        after = d_alpha_diag(p_out, tau, alpha).value
        gaps.append((alpha, before - after))

    witness, worst = min(gaps, key=lambda item: item[1])
    passed = worst >= -tolerance
    logger.debug("Monotonicity over %d orders: worst gap %.3e at alpha=%s", len(grid), worst, witness.label())
    return MonotonicityVerdict(
        passed=passed,
        witness_alpha=None if passed else witness,
        gap=worst,
        gaps=tuple(gaps),
    )


StateLike = HermitianState | ProbVec


def _kappa(rho_in: StateLike, rho_out: StateLike, tau: ProbVec, order: Literal["half", "inf"]) -> float:
    _require_positive(tau)
    if isinstance(rho_in, ProbVec) and isinstance(rho_out, ProbVec):
        alpha = Alpha.of(0.5 if order == "half" else math.inf)
        after = d_alpha_diag(rho_out, tau, alpha).value
        before = d_alpha_diag(rho_in, tau, alpha).value
    else:
        thermal = HermitianState.from_probvec(tau)
        states = [s if isinstance(s, HermitianState) else HermitianState.from_probvec(s) for s in (rho_in, rho_out)]
        divergence = d_half_matrix if order == "half" else d_inf_matrix
        before = divergence(states[0], thermal).value
        after = divergence(states[1], thermal).value
    return after - before


def kappa1(rho_in: StateLike, rho_out: StateLike, tau: ProbVec) -> float:
    """κ₁ = D_∞(ρ_out‖τ) − D_∞(ρ_in‖τ)."""
    return _kappa(rho_in, rho_out, tau, "inf")


def kappa2(rho_in: StateLike, rho_out: StateLike, tau: ProbVec) -> float:
    """κ₂ = D_{1/2}(ρ_out‖τ) − D_{1/2}(ρ_in‖τ)."""
    return _kappa(rho_in, rho_out, tau, "half")
