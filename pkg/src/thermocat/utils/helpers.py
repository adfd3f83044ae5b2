"""
General utility functions for thermocat.

This module contains helpers shared by the commands and the test suite:
seeded random generators and random probability objects.
"""

import numpy as np

from thermocat.core.config import get_config
from thermocat.core.spectra import ProbVec, sort_desc


def make_rng(seed: int | None = None) -> np.random.Generator:
    """
    Create a deterministic numpy generator.

    Args:
        seed: Explicit seed; defaults to the configured ``run.seed``

    Returns:
        A ``numpy.random.Generator``
    """
    if seed is None:
        seed = int(get_config().get("run.seed", 0))
    return np.random.default_rng(seed)


def random_probvec(rng: np.random.Generator, n: int, sorted_desc: bool = True) -> ProbVec:
    """Float probability vector drawn from the flat Dirichlet distribution."""
    v = ProbVec.normalized(rng.dirichlet(np.ones(n)).tolist())
    return sort_desc(v) if sorted_desc else v


def random_doubly_stochastic(rng: np.random.Generator, n: int, terms: int = 6) -> np.ndarray:
    """A random convex combination of permutation matrices."""
    weights = rng.dirichlet(np.ones(terms))
    matrix = np.zeros((n, n))
    for w in weights:
        matrix += w * np.eye(n)[rng.permutation(n)]
    return matrix


def pluralize(count: int, singular: str, plural: str | None = None) -> str:
    """
    Return the singular or plural form of a word based on count.

    Args:
        count: The count to check
        singular: Singular form of the word
        plural: Plural form (defaults to singular + 's')

    Returns:
        Appropriate form of the word
    """
    if count == 1:
        return singular

    if plural is None:
        plural = singular + "s"

    return plural
