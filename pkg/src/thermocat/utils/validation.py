"""
Input validation utilities for thermocat.

This module parses and validates command-line inputs: dimensions, vectors,
Rényi orders and the compact spectrum flags accepted by ``thermocat bound``.
"""

import re

from thermocat.core.catalysts import FamilyParams, optimal_pair, vdh_state
from thermocat.core.divergences import Alpha
from thermocat.core.exceptions import ValidationError
from thermocat.core.hamiltonians import (
    FiniteSpectrum,
    Spectrum,
    harmonic,
    linear_offset,
    spectrum_from_json,
    trivial_spectrum,
)
from thermocat.core.spectra import ProbVec, as_scalar
from thermocat.utils.serialization import load_json_file

SPECTRUM_KINDS = ("trivial", "harmonic", "linear", "levels", "file")


def validate_dimension(value: int, name: str = "m", minimum: int = 2) -> int:
    """
    Validate an integer dimension.

    Args:
        value: The dimension to validate
        name: Name of the flag for error messages
        minimum: Smallest accepted value

    Returns:
        The validated dimension

    Raises:
        ValidationError: If the dimension is below the minimum
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValidationError(
            f"{name} must be at least {minimum}, got {value}",
            suggestion=f"Pass --{name} {minimum} or larger",
        )
    return value


def validate_power(value: int) -> int:
    """Validate the power a in n = m^a."""
    return validate_dimension(value, name="a", minimum=1)


def validate_positive(value: float, name: str) -> float:
    if not value > 0:
        raise ValidationError(f"{name} must be positive, got {value}")
    return value


def _parse_float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError as e:
        raise ValidationError(f"'{text}' is not a number ({what})") from e


def parse_spectrum_flag(flag: str, beta: float | None) -> Spectrum:
    """
    Parse a compact spectrum description.

    Accepted forms:
        trivial:N          N degenerate levels at zero energy
        harmonic:HW        ladder E_j = HW·(j − 1)
        linear:C,E0        ladder E_j = C·(j − 1) + E0
        levels:E1,E2,...   explicit finite levels
        file:PATH          JSON spectrum description

    Args:
        flag: The description to parse
        beta: Inverse temperature; required except for trivial spectra and
            files that carry their own ``beta``

    Returns:
        The parsed spectrum

    Raises:
        ValidationError: If the description is malformed
    """
    if not flag or ":" not in flag:
        raise ValidationError(
            f"Spectrum '{flag}' is missing its kind",
            suggestion="Use e.g. 'trivial:2', 'harmonic:1.0', 'linear:1,0.5', 'levels:0,0.69' or 'file:spec.json'",
        )
    kind, _, body = flag.partition(":")
    kind = kind.strip().lower()
    body = body.strip()

    if kind == "file":
        return spectrum_from_json(load_json_file(body), beta)
    if kind == "trivial":
        if not re.match(r"^\d+$", body):
            raise ValidationError(f"Trivial spectrum needs an integer dimension, got '{body}'")
        return trivial_spectrum(validate_dimension(int(body), "dimension", 1), 1.0 if beta is None else beta)

    if beta is None:
        raise ValidationError(f"Spectrum '{flag}' needs an inverse temperature", suggestion="Pass --beta")
    if kind == "harmonic":
        return harmonic(_parse_float(body, "level spacing"), beta)
    if kind == "linear":
        parts = [p for p in body.split(",") if p.strip()]
        if len(parts) not in (1, 2):
            raise ValidationError(f"Linear spectrum needs 'C' or 'C,E0', got '{body}'")
        offset = _parse_float(parts[1], "offset") if len(parts) == 2 else 0.0
        return linear_offset(_parse_float(parts[0], "spacing"), offset, beta)
    if kind == "levels":
        levels = [_parse_float(p, "energy level") for p in body.split(",") if p.strip()]
        return FiniteSpectrum(levels=tuple(levels), beta=beta)

    raise ValidationError(
        f"Unknown spectrum kind '{kind}'",
        suggestion=f"Use one of: {', '.join(SPECTRUM_KINDS)}",
    )


def require_finite(spec: Spectrum, flag: str) -> FiniteSpectrum:
    if not isinstance(spec, FiniteSpectrum):
        raise ValidationError(f"{flag} must be a finite spectrum", suggestion="Use 'trivial:N' or 'levels:...'")
    return spec


def parse_probvec(text: str) -> ProbVec:
    """
    Parse a comma-separated probability vector such as ``1/2,1/4,1/4``.

    Entries written as integers or fractions stay exact; any decimal entry
    switches the whole vector to float mode.
    """
    if not text or not text.strip():
        raise ValidationError("Probability vector cannot be empty")
    parts = [p.strip() for p in text.split(",")]
    if any(not p for p in parts):
        raise ValidationError(f"Probability vector '{text}' has an empty entry")
    values = []
    for p in parts:
        if re.match(r"^[+-]?\d+(/\d+)?$", p):
            values.append(as_scalar(p))
        else:
            values.append(_parse_float(p, "probability"))
    return ProbVec(values)


def parse_alpha(text: str) -> Alpha:
    """Parse a Rényi order: a nonnegative number or 'inf'."""
    return Alpha.of(text)


def parse_fixed_catalyst(text: str) -> ProbVec:
    """
    Parse a named fixed catalyst: ``vdh:N`` or ``optimal:M,A``.

    ``optimal:M,A`` selects the output catalyst ω′ of the optimal family.
    """
    kind, _, body = text.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "vdh":
            return vdh_state(validate_dimension(int(body), "N", 1))
        if kind == "optimal":
            m_text, a_text = body.split(",")
            params = FamilyParams(validate_dimension(int(m_text)), validate_power(int(a_text)))
            return optimal_pair(params).omega_out
    except ValueError as e:
        raise ValidationError(f"Malformed fixed catalyst '{text}'", suggestion="Use 'vdh:N' or 'optimal:M,A'") from e
    raise ValidationError(f"Unknown fixed catalyst '{text}'", suggestion="Use 'vdh:N' or 'optimal:M,A'")
