"""
JSON-friendly conversion and file formats for thermocat.

Exact rationals become ``"p/q"`` strings, infinities become ``"inf"``, and
numpy scalars become plain Python numbers. Files written here carry the
``schema`` tag from the configuration.
"""

import json
import math
from collections.abc import Mapping
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from thermocat.core.config import get_config
from thermocat.core.exceptions import ValidationError
from thermocat.core.hamiltonians import FiniteSpectrum, Spectrum, spectrum_from_json
from thermocat.core.spectra import CatalystPair, ProbVec, as_scalar


def schema_tag() -> str:
    return str(get_config().get("schema", "thermocat/1"))


def to_jsonable(value: Any, exact: bool = True) -> Any:
    """
    Recursively convert results into JSON-compatible values.

    With ``exact=False`` fractions are emitted as floats instead of strings.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value.numerator) if exact else float(value)
        return str(value) if exact else float(value)
    if isinstance(value, int | np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        v = float(value)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return v
    if isinstance(value, ProbVec):
        return value.to_strings() if value.exact and exact else [float(v) for v in value]
    if isinstance(value, CatalystPair):
        return pair_to_dict(value, exact)
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict(), exact)
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v, exact) for k, v in value.items()}
    if isinstance(value, list | tuple | np.ndarray):
        return [to_jsonable(v, exact) for v in value]
    raise ValidationError(f"Cannot serialize value of type {type(value).__name__}")


def pair_to_dict(pair: CatalystPair, exact: bool = True) -> dict[str, Any]:
    """CatalystPair as {"m", "omega_in", "omega_out"}."""
    return {
        "m": pair.system_dim,
        "omega_in": to_jsonable(pair.omega_in, exact),
        "omega_out": to_jsonable(pair.omega_out, exact),
    }


def probvec_from_json(values: Any, name: str = "vector") -> ProbVec:
    """Read a ProbVec from a JSON array of 'p/q' strings or numbers."""
    if not isinstance(values, list) or not values:
        raise ValidationError(f"'{name}' must be a non-empty JSON array")
    return ProbVec([as_scalar(v) for v in values])


def pair_from_dict(data: Mapping[str, Any]) -> CatalystPair:
    try:
        m = int(data["m"])
        omega_in = probvec_from_json(data["omega_in"], "omega_in")
        omega_out = probvec_from_json(data["omega_out"], "omega_out")
    except KeyError as e:
        raise ValidationError(f"Catalyst pair is missing the '{e.args[0]}' field") from e
    except (TypeError, ValueError) as e:
        raise ValidationError(f"Malformed catalyst pair: {e}") from e
    return CatalystPair(omega_in=omega_in, omega_out=omega_out, system_dim=m)


def load_json_file(path: str | Path) -> dict[str, Any]:
    """Load a JSON object, raising ValidationError on unreadable or malformed files."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ValidationError(f"File not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ValidationError(
            f"'{path}' is not valid JSON: {e.msg} (line {e.lineno})",
            suggestion="Check the file with a JSON linter",
        ) from e
    except OSError as e:
        raise ValidationError(f"Cannot read '{path}': {e}") from e
    if not isinstance(data, dict):
        raise ValidationError(f"'{path}' must hold a JSON object")
    schema = data.get("schema")
    if schema is not None and schema != schema_tag():
        raise ValidationError(
            f"Unsupported schema '{schema}' in '{path}'",
            suggestion=f"Files must declare \"schema\": \"{schema_tag()}\"",
        )
    return data


def load_transform(path: str | Path) -> tuple[ProbVec, ProbVec, FiniteSpectrum]:
    """
    Read a transformation file::

        {"schema": "thermocat/1",
         "p_in": ["1", "0"], "p_out": ["2/3", "1/3"],
         "spectrum": {"kind": "finite", "levels": [0, 0.6931], "beta": 1}}

    The spectrum must be finite and match the vectors' length.
    """
    data = load_json_file(path)
    for key in ("p_in", "p_out", "spectrum"):
        if key not in data:
            raise ValidationError(f"Transformation file is missing '{key}'")
    p_in = probvec_from_json(data["p_in"], "p_in")
    p_out = probvec_from_json(data["p_out"], "p_out")
    if not isinstance(data["spectrum"], Mapping):
        raise ValidationError("'spectrum' must be a JSON object")
    spec: Spectrum = spectrum_from_json(data["spectrum"])
    if not isinstance(spec, FiniteSpectrum):
        raise ValidationError("Transformation files need a finite spectrum")
    if not len(p_in) == len(p_out) == spec.dimension:
        raise ValidationError(
            f"Lengths disagree: p_in {len(p_in)}, p_out {len(p_out)}, spectrum {spec.dimension}",
        )
    return p_in, p_out, spec


def dump_json(data: Any, exact: bool = True) -> str:
    """Deterministic JSON text with the schema tag added to top-level objects."""
    payload = to_jsonable(data, exact)
    if isinstance(payload, dict) and "schema" not in payload:
        payload = {"schema": schema_tag(), **payload}
    return json.dumps(payload, indent=2, ensure_ascii=False)
