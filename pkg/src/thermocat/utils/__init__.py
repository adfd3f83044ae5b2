"""
Utility modules for thermocat.

This package contains utility functions for output formatting, validation,
serialization and other common operations.
"""
