"""
Tests for Rényi divergences and the monotonicity check.
"""

import math

import numpy as np
import pytest

from thermocat.core.config import Config, get_config
from thermocat.core.divergences import (
    INFINITE,
    Alpha,
    DivergenceValue,
    HermitianState,
    d_alpha_diag,
    d_half_matrix,
    d_inf_matrix,
    default_alpha_grid,
    dephase,
    kappa1,
    kappa2,
    monotonicity_check,
)
from thermocat.core.exceptions import ValidationError
from thermocat.core.spectra import ProbVec, pure, uniform
from thermocat.utils.helpers import make_rng, random_probvec

ORDERS = [0, 0.25, 0.5, 0.9, 1, 1.5, 2, 10, math.inf]


class TestAlpha:
    """Test cases for Rényi orders and divergence values."""

    def test_tags(self):
        """Test the branch tag of each order."""
        assert Alpha.of(0).tag == "zero"
        assert Alpha.of(0.3).tag == "interval"
        assert Alpha.of(1).tag == "one"
        assert Alpha.of(7).tag == "interval"
        assert Alpha.of(math.inf).tag == "infinity"
        assert Alpha.of("Infinity").tag == "infinity"

    def test_labels(self):
        """Test order labels used in reports."""
        assert Alpha.of(2).label() == "2.0"
        assert Alpha.of("inf").label() == "inf"

    def test_invalid_orders(self):
        """Test negative and NaN orders."""
        with pytest.raises(ValidationError):
            Alpha.of(-0.5)

        with pytest.raises(ValidationError):
            Alpha.of(float("nan"))

    def test_divergence_value(self):
        """Test the extended-real value type."""
        assert INFINITE.to_json() == "inf"
        assert not INFINITE.is_finite
        assert DivergenceValue(1.5).to_json() == 1.5
        assert float(DivergenceValue(1.5)) == 1.5

        with pytest.raises(ValidationError):
            DivergenceValue(float("nan"))

        with pytest.raises(ValidationError):
            DivergenceValue(-math.inf)


class TestDiagonalDivergence:
    """Test cases for commuting arguments."""

    def setup_method(self):
        """Reset singleton before each test."""
        Config.reset_singleton()

    def teardown_method(self):
        """Clean up after each test."""
        Config.reset_singleton()

    @pytest.mark.parametrize("alpha", ORDERS)
    def test_self_divergence_is_zero(self, alpha):
        """Test D_α(p‖p) = 0."""
        p = ProbVec(["1/2", "1/3", "1/6"])
        assert d_alpha_diag(p, p, alpha).value == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("alpha", ORDERS)
    def test_pure_against_uniform_is_one_bit(self, alpha):
        """Test that a pure qubit is one bit away from the maximally mixed state at every order."""
        assert d_alpha_diag(pure(2), uniform(2), alpha).value == pytest.approx(1.0)

    def test_support_conventions(self):
        """Test +∞ and finite values when q vanishes on the support of p."""
        p = ProbVec(["1/2", "1/2"])
        q = ProbVec(["1", "0"])

        assert d_alpha_diag(p, q, 0).value == pytest.approx(0.0)
        assert d_alpha_diag(p, q, 0.5).value == pytest.approx(1.0)
        assert d_alpha_diag(p, q, 1) == INFINITE
        assert d_alpha_diag(p, q, 2) == INFINITE
        assert d_alpha_diag(p, q, math.inf) == INFINITE

    def test_disjoint_supports(self):
        """Test that disjoint supports give +∞ for every order."""
        p = ProbVec(["1", "0"])
        q = ProbVec(["0", "1"])

        for alpha in ORDERS:
            assert d_alpha_diag(p, q, alpha) == INFINITE

    def test_nondecreasing_in_alpha(self):
        """Test that D_α grows with α on random vectors."""
        rng = make_rng(5)
        for _ in range(10):
            p = random_probvec(rng, 5, sorted_desc=False)
            q = random_probvec(rng, 5, sorted_desc=False)
            values = [d_alpha_diag(p, q, a).value for a in ORDERS]
            assert all(x <= y + 1e-9 for x, y in zip(values, values[1:]))

    def test_length_mismatch(self):
        """Test that vectors must have equal lengths."""
        with pytest.raises(ValidationError):
            d_alpha_diag(uniform(2), uniform(3), 1)

    def test_nats(self):
        """Test the natural-log base."""
        get_config().set("numerics.log_base", math.e)
        assert d_alpha_diag(pure(2), uniform(2), math.inf).value == pytest.approx(math.log(2))

    def test_default_grid_includes_limits(self):
        """Test that the configured grid always includes 0, 1 and ∞."""
        get_config().set("divergences.alpha_grid", [0.5, 2])

        grid = default_alpha_grid()

        assert [a.value for a in grid] == [0.0, 0.5, 1.0, 2.0, math.inf]


class TestMatrixDivergence:
    """Test cases for non-commuting states."""

    def test_state_validation(self):
        """Test density-matrix checks."""
        with pytest.raises(ValidationError):
            HermitianState(np.array([[1.0, 1.0], [0.0, 0.0]]))  # Not Hermitian

        with pytest.raises(ValidationError):
            HermitianState(np.eye(2))  # Trace 2

        with pytest.raises(ValidationError):
            HermitianState(np.diag([1.5, -0.5]))  # Negative eigenvalue

        with pytest.raises(ValidationError):
            HermitianState(np.eye(17) / 17)

        with pytest.raises(ValidationError):
            HermitianState.pure([0, 0])

    def test_dephase(self):
        """Test the diagonal of a coherent state."""
        plus = HermitianState.pure([1, 1])
        assert list(dephase(plus)) == pytest.approx([0.5, 0.5])

    def test_matrix_matches_diagonal(self):
        """Test that commuting states reproduce the diagonal formulas."""
        p = ProbVec(["1/2", "1/3", "1/6"])
        q = ProbVec(["1/4", "1/4", "1/2"])
        rho, sigma = HermitianState.from_probvec(p), HermitianState.from_probvec(q)

        assert d_inf_matrix(rho, sigma).value == pytest.approx(d_alpha_diag(p, q, math.inf).value, abs=1e-6)
        assert d_half_matrix(rho, sigma).value == pytest.approx(d_alpha_diag(p, q, 0.5).value, abs=1e-6)

    def test_coherent_state_against_maximally_mixed(self):
        """Test |+⟩ against I/2, one bit at both orders."""
        plus = HermitianState.pure([1, 1])
        mixed = HermitianState.from_probvec(uniform(2))

        assert d_inf_matrix(plus, mixed).value == pytest.approx(1.0, abs=1e-6)
        assert d_half_matrix(plus, mixed).value == pytest.approx(1.0, abs=1e-6)

    def test_support_outside(self):
        """Test +∞ when ρ has weight outside the support of σ."""
        plus = HermitianState.pure([1, 1])
        zero = HermitianState.pure([1, 0])
        one = HermitianState.pure([0, 1])

        assert d_inf_matrix(plus, zero) == INFINITE
        assert d_half_matrix(zero, one) == INFINITE

    def test_dimension_mismatch(self):
        """Test that states must share a dimension."""
        with pytest.raises(ValidationError):
            d_inf_matrix(HermitianState.pure([1, 0]), HermitianState.pure([1, 0, 0]))


class TestMonotonicity:
    """Test cases for the monotonicity check and divergence gaps."""

    def setup_method(self):
        """Reset singleton before each test."""
        Config.reset_singleton()

    def teardown_method(self):
        """Clean up after each test."""
        Config.reset_singleton()

    def test_thermalizing_passes(self):
        """Test that moving towards the thermal state passes."""
        verdict = monotonicity_check(pure(2), uniform(2), uniform(2))

        assert verdict.passed
        assert verdict.witness_alpha is None
        assert verdict.gap == pytest.approx(1.0)
        assert verdict.caveat == "grid-necessary-only"

    def test_purifying_fails(self):
        """Test that moving away from the thermal state fails with a witness."""
        verdict = monotonicity_check(uniform(2), pure(2), uniform(2))

        assert not verdict.passed
        assert verdict.witness_alpha is not None
        assert verdict.gap == pytest.approx(-1.0)

    def test_to_dict(self):
        """Test the report form of a verdict."""
        data = monotonicity_check(uniform(2), pure(2), uniform(2)).to_dict()

        assert data["pass"] is False
        assert data["caveat"] == "grid-necessary-only"
        assert {"alpha", "gap"} <= set(data["gaps"][0])

    def test_thermal_state_must_be_positive(self):
        """Test that a thermal state with a zero entry is rejected."""
        with pytest.raises(ValidationError):
            monotonicity_check(pure(2), pure(2), pure(2))

        with pytest.raises(ValidationError):
            monotonicity_check(pure(2), pure(3), uniform(2))

    def test_kappa_gaps(self):
        """Test κ₁ and κ₂ for preparing a pure qubit from the thermal state."""
        tau = uniform(2)

        assert kappa1(tau, pure(2), tau) == pytest.approx(1.0)
        assert kappa2(tau, pure(2), tau) == pytest.approx(1.0)
        assert kappa1(pure(2), tau, tau) == pytest.approx(-1.0)

    def test_kappa_with_coherent_state(self):
        """Test κ for a coherent output through the matrix path."""
        tau = uniform(2)
        plus = HermitianState.pure([1, 1])

        assert kappa1(tau, plus, tau) == pytest.approx(1.0, abs=1e-6)
        assert kappa2(tau, plus, tau) == pytest.approx(1.0, abs=1e-6)


def _product(p: ProbVec, q: ProbVec) -> ProbVec:
    """p ⊗ q in the product basis, unsorted so both arguments stay aligned."""
    return ProbVec.normalized([a * b for a in p for b in q])


def _random_state(rng: np.random.Generator, dim: int) -> HermitianState:
    b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = b @ b.conj().T
    return HermitianState(rho / np.trace(rho).real)


class TestDivergenceProperties:
    """Test cases for additivity, limits in α and data processing under dephasing."""

    def setup_method(self):
        """Reset singleton before each test."""
        Config.reset_singleton()

    def teardown_method(self):
        """Clean up after each test."""
        Config.reset_singleton()

    @pytest.mark.parametrize("alpha", [0, 0.5, 1, 2, math.inf])
    def test_additive_under_tensor_product(self, alpha):
        """Test D_α(p1⊗p2‖q1⊗q2) = D_α(p1‖q1) + D_α(p2‖q2)."""
        rng = make_rng(21)

        for trial in range(50):
            p1 = random_probvec(rng, 3, sorted_desc=False)
            if trial % 2:
                # zero entry so that D_0 is not identically 0
                p1 = ProbVec.normalized([*p1.entries[:2], 0.0])
            p2 = random_probvec(rng, 3, sorted_desc=False)
            q1 = random_probvec(rng, 3, sorted_desc=False)
            q2 = random_probvec(rng, 3, sorted_desc=False)

            joint = d_alpha_diag(_product(p1, p2), _product(q1, q2), alpha).value
            separate = d_alpha_diag(p1, q1, alpha).value + d_alpha_diag(p2, q2, alpha).value

            assert joint == pytest.approx(separate, abs=1e-9)

    def test_limits_in_alpha(self):
        """Test that orders next to 1 and very large orders meet the limiting formulas."""
        rng = make_rng(22)

        for _ in range(20):
            p = random_probvec(rng, 4, sorted_desc=False)
            q = random_probvec(rng, 4, sorted_desc=False)
            kl = d_alpha_diag(p, q, 1).value

            assert d_alpha_diag(p, q, 1 - 1e-6).value == pytest.approx(kl, abs=1e-4)
            assert d_alpha_diag(p, q, 1 + 1e-6).value == pytest.approx(kl, abs=1e-4)
            assert d_alpha_diag(p, q, 1e6).value == pytest.approx(d_alpha_diag(p, q, math.inf).value, abs=1e-4)

    def test_dephasing_never_increases_matrix_divergences(self):
        """Test D(Δρ‖σ) ≤ D(ρ‖σ) at orders ½ and ∞ for diagonal σ."""
        rng = make_rng(23)

        for _ in range(30):
            rho = _random_state(rng, 3)
            sigma = HermitianState.from_probvec(random_probvec(rng, 3, sorted_desc=False))
            dephased = HermitianState.from_probvec(dephase(rho))

            assert d_inf_matrix(dephased, sigma).value <= d_inf_matrix(rho, sigma).value + 1e-6
            assert d_half_matrix(dephased, sigma).value <= d_half_matrix(rho, sigma).value + 1e-6
