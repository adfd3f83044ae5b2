"""
Test package for thermocat.

This package contains all unit and integration tests for the thermocat application.
"""
