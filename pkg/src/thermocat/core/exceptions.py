"""
Custom exceptions for thermocat.

This module defines all custom exceptions used throughout thermocat, providing
structured error handling with appropriate exit codes and user-friendly messages.
"""


class ThermocatError(Exception):
    """Base exception for all thermocat errors."""

    def __init__(
        self,
        message: str,
        exit_code: int = 1,
        suggestion: str | None = None,
    ) -> None:
        """
        Initialize a thermocat error.

        Args:
            message: The error message to display to the user
            exit_code: The exit code to use when terminating the program
            suggestion: Optional suggestion for how to resolve the error
        """
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.suggestion = suggestion

    def __str__(self) -> str:
        return self.message


class ValidationError(ThermocatError):
    """Raised when input validation fails."""

    def __init__(
        self,
        message: str,
        suggestion: str | None = None,
    ) -> None:
        super().__init__(message, exit_code=2, suggestion=suggestion)


class SizeCapError(ThermocatError):
    """Raised when an LP instance exceeds the configured size cap."""

    def __init__(
        self,
        dimension: int,
        cap: int,
        suggestion: str | None = None,
    ) -> None:
        self.dimension = dimension
        self.cap = cap
        message = f"Catalyst dimension {dimension} exceeds the LP size cap of {cap}"
        if suggestion is None:
            suggestion = "Use a smaller dimension, or raise 'lp.size_cap' in the configuration"
        super().__init__(message, exit_code=2, suggestion=suggestion)


class InfeasibleError(ThermocatError):
    """Raised when a model has no feasible point."""

    def __init__(
        self,
        message: str,
        suggestion: str | None = None,
    ) -> None:
        super().__init__(message, exit_code=3, suggestion=suggestion)


class ConvergenceError(ThermocatError):
    """Raised when an infinite sum or envelope search cannot be certified."""

    def __init__(
        self,
        message: str,
        iterations: int | None = None,
        suggestion: str | None = None,
    ) -> None:
        """
        Initialize a convergence error.

        Args:
            message: The error message
            iterations: Number of terms evaluated before giving up
            suggestion: Optional suggestion for resolution
        """
        self.iterations = iterations
        enhanced_message = f"{message} (after {iterations} terms)" if iterations else message
        super().__init__(enhanced_message, exit_code=3, suggestion=suggestion)


class ConfigurationError(ThermocatError):
    """Raised when there's an issue with configuration."""

    def __init__(
        self,
        message: str,
        suggestion: str | None = None,
    ) -> None:
        super().__init__(message, exit_code=2, suggestion=suggestion)


class SolverError(ThermocatError):
    """Raised when the exact LP solver returns an inconsistent result."""

    def __init__(
        self,
        message: str,
        suggestion: str | None = None,
    ) -> None:
        super().__init__(message, exit_code=1, suggestion=suggestion)
