"""
thermocat - optimal embezzling catalysts and lower bounds on thermal catalysis.

This package constructs the optimal catalyst family for trivial Hamiltonians,
certifies its optimality with an exact rational LP, and computes lower bounds
on catalytic error under dimension and energy constraints.
"""

__version__ = "0.1.0"
__description__ = "Optimal embezzling catalysts and lower bounds on thermal catalysis"

# Package-level imports for convenience
from thermocat.core.exceptions import InfeasibleError, ThermocatError, ValidationError

__all__ = [
    "__version__",
    "__description__",
    "ThermocatError",
    "ValidationError",
    "InfeasibleError",
]
