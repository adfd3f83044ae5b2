"""
Probability-vector arithmetic for thermocat.

Eigenvalue vectors of diagonal states live here as ``ProbVec`` values, in one of
two numeric modes: exact (every entry a ``Fraction``) or float. Majorization,
trace distance and the catalytic feasibility test all act on these vectors.
Comparisons are only defined on vectors already sorted in descending order;
callers sort explicitly with ``sort_desc``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

import numpy as np

from thermocat.core.config import get_config
from thermocat.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

Scalar = Fraction | float

NORMALIZATION_TOLERANCE = 1e-12


def as_scalar(value: int | float | Fraction | str) -> Scalar:
    """Convert ints and 'p/q' strings to Fraction, keep floats as floats."""
    if isinstance(value, bool):
        raise ValidationError(f"Boolean {value!r} is not a probability")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValidationError(
                f"'{value}' is not a rational number",
                suggestion="Write exact entries as 'p/q' strings, e.g. '3/8'",
            ) from e
    raise ValidationError(f"Unsupported scalar type {type(value).__name__}")


@dataclass(frozen=True)
class ProbVec:
    """A finite probability vector with exact-rational or float entries."""

    entries: tuple[Scalar, ...]
    sorted_desc: bool = False

    def __init__(self, entries: Iterable[int | float | Fraction | str], sorted_desc: bool = False) -> None:
        values = [as_scalar(v) for v in entries]
        if not values:
            raise ValidationError("A probability vector needs at least one entry")
        if any(isinstance(v, float) for v in values):
            values = [float(v) for v in values]
        object.__setattr__(self, "entries", tuple(values))
        object.__setattr__(self, "sorted_desc", sorted_desc)
        self._validate()

    def _validate(self) -> None:
        if self.exact:
            if any(v < 0 for v in self.entries):
                raise ValidationError("Probability vector has a negative entry")
            total = sum(self.entries, Fraction(0))
            if total != 1:
                raise ValidationError(
                    f"Exact probability vector sums to {total}, not 1",
                    suggestion="Check the entries or normalize the vector first",
                )
        else:
            if any(not math.isfinite(v) for v in self.entries):
                raise ValidationError("Probability vector has a non-finite entry")
            if any(v < 0 for v in self.entries):
                raise ValidationError("Probability vector has a negative entry")
            total = math.fsum(self.entries)
            if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
                raise ValidationError(f"Probability vector sums to {total!r}, not 1 within {NORMALIZATION_TOLERANCE}")
        if self.sorted_desc and not self.is_descending():
            raise ValidationError("Vector flagged as sorted is not in descending order")

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> Scalar:
        return self.entries[index]

    def is_descending(self) -> bool:
        return all(a >= b for a, b in zip(self.entries, self.entries[1:]))

    def to_float(self) -> ProbVec:
        """Float-mode copy of this vector."""
        return ProbVec([float(v) for v in self.entries], sorted_desc=self.sorted_desc)

    def as_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.entries], dtype=float)

    def to_strings(self) -> list[str]:
        """Exact entries as 'p/q' strings; float entries via repr."""
        return [str(v) if isinstance(v, Fraction) else repr(v) for v in self.entries]

    @classmethod
    def from_strings(cls, values: Sequence[str]) -> ProbVec:
        return cls([as_scalar(v) for v in values])

    @classmethod
    def normalized(cls, weights: Sequence[float | Fraction]) -> ProbVec:
        """Normalize nonnegative weights, clipping float round-off below zero."""
        if all(isinstance(w, Fraction | int) for w in weights):
            exact_weights = [Fraction(w) for w in weights]
            total = sum(exact_weights, Fraction(0))
            if total <= 0:
                raise ValidationError("Cannot normalize a vector with zero total weight")
            return cls([w / total for w in exact_weights])
        clipped = [max(float(w), 0.0) for w in weights]
        total = math.fsum(clipped)
        if total <= 0:
            raise ValidationError("Cannot normalize a vector with zero total weight")
        return cls([w / total for w in clipped])


@dataclass(frozen=True)
class CatalystPair:
    """Input and output catalyst spectra (ω, ω′) for a system of dimension m."""

    omega_in: ProbVec
    omega_out: ProbVec
    system_dim: int

    def __post_init__(self) -> None:
        if self.system_dim < 1:
            raise ValidationError(f"System dimension must be positive, got {self.system_dim}")
        if len(self.omega_in) != len(self.omega_out):
            raise ValidationError(
                f"Catalyst spectra have different lengths ({len(self.omega_in)} vs {len(self.omega_out)})",
            )
        if not (self.omega_in.is_descending() and self.omega_out.is_descending()):
            raise ValidationError(
                "Catalyst spectra must be sorted in descending order",
                suggestion="Apply sort_desc to both vectors first",
            )

    @property
    def dimension(self) -> int:
        return len(self.omega_in)

    @property
    def exact(self) -> bool:
        return self.omega_in.exact and self.omega_out.exact


def uniform(n: int, exact: bool = True) -> ProbVec:
    """The maximally mixed vector of length n."""
    if n < 1:
        raise ValidationError(f"Dimension must be positive, got {n}")
    value: Scalar = Fraction(1, n) if exact else 1.0 / n
    return ProbVec([value] * n, sorted_desc=True)


def pure(n: int, exact: bool = True) -> ProbVec:
    """The vector (1, 0, ..., 0) of length n."""
    if n < 1:
        raise ValidationError(f"Dimension must be positive, got {n}")
    one: Scalar = Fraction(1) if exact else 1.0
    zero: Scalar = Fraction(0) if exact else 0.0
    return ProbVec([one] + [zero] * (n - 1), sorted_desc=True)


def sort_desc(v: ProbVec) -> ProbVec:
    return ProbVec(sorted(v.entries, reverse=True), sorted_desc=True)


def _require_sorted(v: ProbVec, name: str) -> None:
    if not v.is_descending():
        raise ValidationError(
            f"{name} must be sorted in descending order",
            suggestion="Apply sort_desc before comparing vectors",
        )


def _check_multiplicity(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValidationError(f"Tensor factor dimension must be a positive integer, got {m!r}")


def tensor_uniform(v: ProbVec, m: int) -> ProbVec:
    """Spectrum of v ⊗ I/m: each entry replaced by m copies of entry/m."""
    _check_multiplicity(m)
    _require_sorted(v, "Vector")
    divisor: Scalar = Fraction(m) if v.exact else float(m)
    return ProbVec([x / divisor for x in v.entries for _ in range(m)], sorted_desc=True)


def pad_pure(v: ProbVec, m: int) -> ProbVec:
    """Spectrum of v ⊗ |0⟩⟨0| on an m-dimensional system."""
    _check_multiplicity(m)
    _require_sorted(v, "Vector")
    zero: Scalar = Fraction(0) if v.exact else 0.0
    return ProbVec(list(v.entries) + [zero] * (len(v) * (m - 1)), sorted_desc=True)


def tensor(p: ProbVec, q: ProbVec) -> ProbVec:
    """Spectrum of a product state p ⊗ q, sorted descending."""
    return sort_desc(ProbVec([a * b for a in p.entries for b in q.entries]))


def support_size(v: ProbVec) -> int:
    return sum(1 for x in v.entries if x > 0)


def majorizes(p: ProbVec, q: ProbVec, tolerance: float | None = None) -> bool:
    """
    Test p ≻ q on descending vectors of equal length.

    Exact vectors are compared exactly. Otherwise each prefix sum of q may
    exceed the corresponding prefix sum of p by at most ``tolerance``
    (default: ``numerics.float_tolerance``).
    """
    if len(p) != len(q):
        raise ValidationError(
            f"Cannot compare vectors of lengths {len(p)} and {len(q)}",
            suggestion="Pad the shorter vector with zeros",
        )
    _require_sorted(p, "Majorizing vector")
    _require_sorted(q, "Majorized vector")
    if p.exact and q.exact:
        return all(a >= b for a, b in zip(accumulate(p.entries), accumulate(q.entries)))
    if tolerance is None:
        tolerance = get_config().get("numerics.float_tolerance", 1e-12)
    prefix_p = np.cumsum(p.as_array())
    prefix_q = np.cumsum(q.as_array())
    return bool(np.all(prefix_p >= prefix_q - tolerance))


def trace_distance(p: ProbVec, q: ProbVec) -> Scalar:
    """½ Σ|p_i − q_i|; exact when both vectors are exact."""
    if len(p) != len(q):
        raise ValidationError(f"Cannot compare vectors of lengths {len(p)} and {len(q)}")
    if p.exact and q.exact:
        return sum((abs(a - b) for a, b in zip(p.entries, q.entries)), Fraction(0)) / 2
    return 0.5 * math.fsum(abs(float(a) - float(b)) for a, b in zip(p.entries, q.entries))


def check_transformation(pair: CatalystPair) -> bool:
    """Whether ω ⊗ I/m ≻ ω′ ⊗ |0⟩⟨0| holds for the pair."""
    lhs = tensor_uniform(pair.omega_in, pair.system_dim)
    rhs = pad_pure(pair.omega_out, pair.system_dim)
    return majorizes(lhs, rhs)


def check_catalysed(pair: CatalystPair, rho: ProbVec, sigma: ProbVec) -> bool:
    """
    Whether ω ⊗ ρ ≻ ω′ ⊗ σ holds, i.e. the pair catalyses ρ → σ for trivial Hamiltonians.
    """
    if len(rho) != pair.system_dim or len(sigma) != pair.system_dim:
        raise ValidationError(f"System states must have dimension {pair.system_dim}")
    return majorizes(tensor(pair.omega_in, rho), tensor(pair.omega_out, sigma))


def apply_doubly_stochastic(v: ProbVec, matrix: np.ndarray) -> ProbVec:
    """Image of v under a doubly-stochastic matrix, as a float vector sorted descending."""
    matrix = np.asarray(matrix, dtype=float)
    n = len(v)
    if matrix.shape != (n, n):
        raise ValidationError(f"Mixing matrix must be {n}x{n}, got {matrix.shape}")
    if np.any(matrix < 0) or not (
        np.allclose(matrix.sum(axis=0), 1.0, atol=1e-12) and np.allclose(matrix.sum(axis=1), 1.0, atol=1e-12)
    ):
        raise ValidationError("Mixing matrix is not doubly stochastic")
    return sort_desc(ProbVec.normalized(list(matrix @ v.as_array())))
