"""
Tests for the optimal catalyst family and the dimension reduction.
"""

from fractions import Fraction

import pytest

from thermocat.core.catalysts import (
    FamilyParams,
    family_table,
    harmonic_number,
    is_power_of,
    optimal_error,
    optimal_first_entry,
    optimal_out,
    optimal_pair,
    pile_slack,
    reduce_pair,
    vdh_state,
)
from thermocat.core.exceptions import InfeasibleError, ValidationError
from thermocat.core.lp import solve_lp
from thermocat.core.oracle import build_embezzle_lp, pair_from_solution
from thermocat.core.spectra import CatalystPair, ProbVec, check_transformation, trace_distance, uniform

F = Fraction


class TestOptimalFamily:
    """Test cases for the closed-form optimal family."""

    def test_family_params(self):
        """Test parameter validation and the catalyst dimension."""
        assert FamilyParams(3, 2).n == 9

        with pytest.raises(ValidationError):
            FamilyParams(1, 3)

        with pytest.raises(ValidationError):
            FamilyParams(2, 0)

    def test_closed_form_error(self):
        """Test d = (m − 1)/(1 + (m − 1)a)."""
        assert optimal_error(FamilyParams(2, 3)) == F(1, 4)
        assert optimal_error(FamilyParams(2, 1)) == F(1, 2)
        assert optimal_error(FamilyParams(3, 3)) == F(2, 7)
        assert optimal_first_entry(FamilyParams(3, 3)) == F(1, 7)

    def test_output_catalyst_m2_a3(self):
        """Test ω′ for m = 2, n = 8."""
        assert list(optimal_out(FamilyParams(2, 3))) == [F(1, 4), F(1, 4), F(1, 8), F(1, 8)] + [F(1, 16)] * 4

    def test_pair_m2_a3(self):
        """Test ω for m = 2, n = 8: m·ω′_1 up front, ω′ up to n/m, zero beyond."""
        pair = optimal_pair(FamilyParams(2, 3))
        assert list(pair.omega_in) == [F(1, 2), F(1, 4), F(1, 8), F(1, 8), 0, 0, 0, 0]
        assert pair.system_dim == 2

    @pytest.mark.parametrize("m,a", [(2, 1), (2, 2), (2, 3), (2, 5), (3, 1), (3, 2), (3, 3), (4, 2), (5, 2)])
    def test_pair_is_feasible_with_closed_form_distance(self, m, a):
        """Test feasibility and trace distance across the family."""
        params = FamilyParams(m, a)
        pair = optimal_pair(params)

        assert pair.exact
        assert pair.dimension == params.n
        assert check_transformation(pair)
        assert trace_distance(pair.omega_in, pair.omega_out) == optimal_error(params)

    def test_error_decreases_with_power(self):
        """Test that the error vanishes as a grows."""
        errors = [optimal_error(FamilyParams(2, a)) for a in range(1, 8)]
        assert all(x > y for x, y in zip(errors, errors[1:]))

    def test_vdh_state(self):
        """Test the harmonic-weighted embezzling vector."""
        assert harmonic_number(4) == F(25, 12)
        v = vdh_state(4)
        assert list(v) == [F(12, 25), F(6, 25), F(4, 25), F(3, 25)]

        with pytest.raises(ValidationError):
            vdh_state(0)

    def test_family_table(self):
        """Test the side-by-side eigenvalue table."""
        rows = family_table(2, 3)
        assert len(rows) == 8
        assert rows[0] == {"index": 1, "omega_prime_ours": F(1, 4), "omega_vdh": vdh_state(8)[0]}
        assert rows[-1]["index"] == 8


class TestReduction:
    """Test cases for slack piling and one reduction step."""

    def test_pile_slack_keeps_distance_and_feasibility(self):
        """Test that piling slack onto ω_1 changes neither feasibility nor distance."""
        pair = CatalystPair(uniform(4), uniform(4), 1)
        piled = pile_slack(pair)

        assert list(piled.omega_in) == [F(1, 4)] * 4
        assert trace_distance(piled.omega_in, piled.omega_out) == 0

        pair = CatalystPair(ProbVec(["1/2", "1/2", "0", "0"], sorted_desc=True), uniform(4), 2)
        piled = pile_slack(pair)
        assert list(piled.omega_in) == [F(3, 4), F(1, 4), 0, 0]
        assert check_transformation(piled)
        assert trace_distance(piled.omega_in, piled.omega_out) == trace_distance(pair.omega_in, pair.omega_out)

    def test_reduce_optimal_pair_equality(self):
        """Test that reducing the m=2, n=8 pair gives the n=4 optimal pair."""
        result = reduce_pair(optimal_pair(FamilyParams(2, 3)))

        assert result.delta == F(1, 4)
        assert result.split_index == 2
        assert result.branch == "sigma"
        assert result.relation == "equality"
        assert result.distance_in == F(1, 4)
        assert result.distance_out == F(1, 3)
        assert result.pair == optimal_pair(FamilyParams(2, 2))

    def test_reduce_to_base_case(self):
        """Test the step from n = 4 down to n = 2."""
        result = reduce_pair(optimal_pair(FamilyParams(2, 2)))

        assert result.split_index == 1
        assert result.pair == optimal_pair(FamilyParams(2, 1))
        assert result.distance_out * (1 - result.delta) == result.distance_in

    def test_reduce_block_averaging_branch(self):
        """Test a pair whose split index lands inside ω_1 on the averaged branch."""
        pair = CatalystPair(ProbVec(["1/2", "1/2", "0", "0"], sorted_desc=True), uniform(4), 2)
        result = reduce_pair(pair)

        assert result.branch == "zeta"
        assert result.split_index == 1
        assert result.split_value == F(1, 2)
        assert result.delta == F(1, 2)
        assert result.relation == "inequality"
        assert list(result.pair.omega_in) == [F(1), F(0)]
        assert list(result.pair.omega_out) == [F(1, 2), F(1, 2)]
        assert check_transformation(result.pair)

    def test_reduce_to_dict(self):
        """Test the serializable form of a reduction."""
        data = reduce_pair(optimal_pair(FamilyParams(2, 3))).to_dict()

        assert data["m"] == 2
        assert data["omega_in"] == ["2/3", "1/3", "0", "0"]
        assert data["omega_out"] == ["1/3", "1/3", "1/6", "1/6"]
        assert data["delta"] == "1/4"
        assert data["relation"] == "equality"

    @pytest.mark.parametrize("m,a", [(2, 4), (3, 2), (3, 3), (4, 2)])
    def test_reduction_never_increases_scaled_distance(self, m, a):
        """Test d_out·(1 − δ) ≤ d_in and feasibility of every reduced pair."""
        result = reduce_pair(optimal_pair(FamilyParams(m, a)))

        assert check_transformation(result.pair)
        assert result.pair.dimension == m ** (a - 1)
        assert result.distance_out * (1 - result.delta) <= result.distance_in

    def test_reduce_rejects_bad_pairs(self):
        """Test float, indivisible, base-case and infeasible pairs."""
        float_pair = CatalystPair(uniform(4, exact=False), uniform(4, exact=False), 2)
        with pytest.raises(ValidationError):
            reduce_pair(float_pair)

        with pytest.raises(ValidationError):
            reduce_pair(CatalystPair(uniform(3), uniform(3), 2))

        with pytest.raises(ValidationError):
            reduce_pair(optimal_pair(FamilyParams(2, 1)))

        infeasible = CatalystPair(uniform(4), ProbVec(["1/2", "1/2", "0", "0"], sorted_desc=True), 2)
        with pytest.raises(InfeasibleError):
            reduce_pair(infeasible)

    def test_reduce_rejects_dimension_not_power_of_m(self):
        """Test that k divisible by m but not a power of m is a validation error."""
        pair = CatalystPair(
            ProbVec(["1/2", "1/2", "0", "0", "0", "0"], sorted_desc=True),
            ProbVec(["1/4", "1/4", "1/4", "1/4", "0", "0"], sorted_desc=True),
            2,
        )

        with pytest.raises(ValidationError) as exc_info:
            reduce_pair(pair)
        assert exc_info.value.exit_code == 2
        assert "power" in str(exc_info.value)

        with pytest.raises(ValidationError):
            reduce_pair(CatalystPair(uniform(12), uniform(12), 3))

    @pytest.mark.parametrize(
        "k,m,expected",
        [(2, 2, True), (8, 2, True), (27, 3, True), (6, 2, False), (12, 3, False), (1, 2, False), (3, 9, False)],
    )
    def test_is_power_of(self, k, m, expected):
        """Test the dimension precondition of reduce_pair."""
        assert is_power_of(k, m) is expected

    def test_reduce_lp_optimizer_pair(self):
        """Test one reduction step on the LP optimizer for m = 2, n = 8."""
        pair = pair_from_solution(solve_lp(build_embezzle_lp(2, 8)), 2, 8)

        result = reduce_pair(pair)

        assert result.distance_in == F(1, 4)
        assert result.distance_out == F(1, 3)
        assert result.pair.dimension == 4
        assert check_transformation(result.pair)
        assert result.distance_out * (1 - result.delta) <= result.distance_in
        if result.relation == "equality":
            assert result.distance_out * (1 - result.delta) == result.distance_in
