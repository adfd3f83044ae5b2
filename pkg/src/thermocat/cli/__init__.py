"""
CLI command modules for thermocat.

This package contains all the command-line interface modules organized by functionality.
"""
