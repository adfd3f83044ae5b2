"""
Tests for random helpers and small utilities.
"""

import numpy as np

from thermocat.core.config import Config, get_config
from thermocat.utils.helpers import make_rng, pluralize, random_doubly_stochastic, random_probvec


class TestHelpers:
    """Test cases for helper functions."""

    def setup_method(self):
        """Reset singleton before each test."""
        Config.reset_singleton()

    def teardown_method(self):
        """Clean up after each test."""
        Config.reset_singleton()

    def test_make_rng_is_deterministic(self):
        """Test that equal seeds give equal streams."""
        assert make_rng(7).random() == make_rng(7).random()
        assert make_rng(7).random() != make_rng(8).random()

    def test_make_rng_uses_configured_seed(self):
        """Test the run.seed default."""
        get_config().set("run.seed", 42)
        assert make_rng().random() == make_rng(42).random()

    def test_random_probvec(self):
        """Test sorted and unsorted draws."""
        rng = make_rng(1)

        v = random_probvec(rng, 6)
        w = random_probvec(rng, 6, sorted_desc=False)

        assert len(v) == 6
        assert v.is_descending()
        assert not v.exact
        assert abs(sum(w) - 1.0) < 1e-12

    def test_random_doubly_stochastic(self):
        """Test row and column sums."""
        matrix = random_doubly_stochastic(make_rng(2), 5)

        np.testing.assert_allclose(matrix.sum(axis=0), np.ones(5))
        np.testing.assert_allclose(matrix.sum(axis=1), np.ones(5))
        assert (matrix >= 0).all()

    def test_pluralize(self):
        """Test singular and plural forms."""
        assert pluralize(1, "violation") == "violation"
        assert pluralize(0, "violation") == "violations"
        assert pluralize(3, "matrix", "matrices") == "matrices"
