"""
Core functionality for thermocat.

This package contains the numerical library: probability vectors, spectra,
catalyst families, divergences, bounds, the LP oracle, configuration and
exception handling. Nothing in it prints.
"""

from thermocat.core.exceptions import (
    ConfigurationError,
    ConvergenceError,
    InfeasibleError,
    SizeCapError,
    SolverError,
    ThermocatError,
    ValidationError,
)

__all__ = [
    "ThermocatError",
    "ValidationError",
    "SizeCapError",
    "InfeasibleError",
    "ConvergenceError",
    "ConfigurationError",
    "SolverError",
]
