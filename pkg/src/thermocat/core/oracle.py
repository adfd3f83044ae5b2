"""
LP oracle for minimum-distance catalyst pairs.

With both catalyst spectra sorted in a common descending order, the
condition ω ⊗ I/m ≻ ω′ ⊗ |0⟩⟨0| becomes the linear prefix constraints

    Σ_{i≤q} ω_i + (r/m)·ω_{q+1} ≥ Σ_{i≤k} ω′_i,   k = q·m + r, 0 ≤ r < m,

and the trace distance is linearized with one auxiliary t_i ≥ |ω_i − ω′_i|
per index. The exact optimum at n = m^a certifies the closed-form error of
the optimal family.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Literal

from thermocat.core.catalysts import FamilyParams, optimal_error
from thermocat.core.config import get_config
from thermocat.core.exceptions import InfeasibleError, SizeCapError, SolverError, ValidationError
from thermocat.core.lp import LpProblem, LpSolution, Mode, solve_lp
from thermocat.core.spectra import (
    CatalystPair,
    ProbVec,
    Scalar,
    check_transformation,
    sort_desc,
    support_size,
    trace_distance,
)

logger = logging.getLogger(__name__)

Side = Literal["input", "output"]


def _size_cap() -> int:
    return int(get_config().get("lp.size_cap", 256))


def _check_dims(m: int, n: int) -> None:
    if not isinstance(m, int) or m < 2:
        raise ValidationError(f"System dimension m must be an integer ≥ 2, got {m!r}")
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"Catalyst dimension n must be a positive integer, got {n!r}")
    cap = _size_cap()
    if n > cap:
        raise SizeCapError(n, cap)


def _prefix_lhs(k: int, m: int, n: int, omega_col: int = 0) -> dict[int, Fraction]:
    """Coefficients of Σ_{i≤q} ω_i + (r/m)·ω_{q+1}, with ω_i for i > n absent."""
    q, r = divmod(k, m)
    coeffs = {omega_col + i: Fraction(1) for i in range(min(q, n))}
    if r and q < n:
        coeffs[omega_col + q] = Fraction(r, m)
    return coeffs


def build_embezzle_lp(m: int, n: int, include_redundant: bool = False) -> LpProblem:
    """
    The minimum-trace-distance LP over sorted catalyst pairs in dimension n.

    Variables are ω_1..ω_n, ω′_1..ω′_n and t_1..t_n; the objective is ½Σt_i.
    Prefix constraints are generated for k = 1..n; ``include_redundant``
    adds k = n+1..n·m as well, which never changes the optimum.
    """
    _check_dims(m, n)
    names = [f"w{i}" for i in range(1, n + 1)] + [f"wp{i}" for i in range(1, n + 1)] + [f"t{i}" for i in range(1, n + 1)]
    w, wp, t = 0, n, 2 * n
    problem = LpProblem(variable_names=names, name=f"embezzle_m{m}_n{n}")
    problem.objective = {t + i: Fraction(1, 2) for i in range(n)}

    for i in range(n):
        problem.add_constraint({t + i: 1, w + i: -1, wp + i: 1}, ">=", 0, f"abs_pos_{i + 1}")
        problem.add_constraint({t + i: 1, w + i: 1, wp + i: -1}, ">=", 0, f"abs_neg_{i + 1}")
    for i in range(n - 1):
        problem.add_constraint({w + i: 1, w + i + 1: -1}, ">=", 0, f"order_w_{i + 1}")
        problem.add_constraint({wp + i: 1, wp + i + 1: -1}, ">=", 0, f"order_wp_{i + 1}")
    problem.add_constraint({w + i: 1 for i in range(n)}, "==", 1, "norm_w")
    problem.add_constraint({wp + i: 1 for i in range(n)}, "==", 1, "norm_wp")

    last_k = n * m if include_redundant else n
    for k in range(1, last_k + 1):
        coeffs = _prefix_lhs(k, m, n, w)
        for i in range(min(k, n)):
            coeffs[wp + i] = coeffs.get(wp + i, Fraction(0)) - 1
        problem.add_constraint(coeffs, ">=", 0, f"prefix_{k}")
    return problem


def pair_from_solution(solution: LpSolution, m: int, n: int) -> CatalystPair:
    """The (ω, ω′) part of an optimal embezzlement-LP solution."""
    if not solution.optimal:
        raise SolverError(f"Cannot extract a catalyst pair from a {solution.status} LP")
    x = list(solution.x)
    if solution.mode == "float":
        omega = sort_desc(ProbVec.normalized(x[:n]))
        omega_p = sort_desc(ProbVec.normalized(x[n : 2 * n]))
    else:
        omega = ProbVec(x[:n], sorted_desc=True)
        omega_p = ProbVec(x[n : 2 * n], sorted_desc=True)
    return CatalystPair(omega_in=omega, omega_out=omega_p, system_dim=m)


def lp_optimum(m: int, n: int, mode: Mode = "exact") -> Scalar:
    """Optimal trace distance over all sorted catalyst pairs of dimension n."""
    solution = solve_lp(build_embezzle_lp(m, n), mode)
    if not solution.optimal:
        raise SolverError(f"Embezzlement LP for m={m}, n={n} is {solution.status}")
    return solution.value


def certify_optimality(m: int, a: int) -> bool:
    """
    Whether the exact LP optimum at n = m^a equals (m − 1)/(1 + (m − 1)a).

    The LP's optimizer must also pass the majorization check exactly.
    """
    params = FamilyParams(m, a)
    n = params.n
    cap = _size_cap()
    if n > cap:
        raise SizeCapError(n, cap)
    solution = solve_lp(build_embezzle_lp(m, n), "exact")
    if not solution.optimal:
        raise SolverError(f"Embezzlement LP for m={m}, n={n} is {solution.status}")
    if not check_transformation(pair_from_solution(solution, m, n)):
        raise SolverError(f"LP optimizer for m={m}, n={n} fails the majorization check")
    expected = optimal_error(params)
    logger.debug("Certified m=%d a=%d: LP %s vs closed form %s (%d pivots)", m, a, solution.value, expected, solution.pivots)
    return solution.value == expected


def partner_lp(fixed_out: ProbVec, m: int) -> LpProblem:
    """
    Reduced LP for the best input partner of a fixed output catalyst ω′.

    Free variables are ω_2..ω_L with L = ⌊n/m⌋ (ω vanishes beyond L), in the
    slack-piled normal form ω_i ≤ ω′_i with ω_1 = 1 − Σ_{i≥2} ω_i. The
    distance is then (1 − ω′_1) − Σ_{i≥2} ω_i, so the LP maximizes Σ ω_i
    (minimizes its negative). Every constraint has the form ``≤ b`` with
    b ≥ 0 whenever m·ω′_1 ≤ 1.
    """
    n = len(fixed_out)
    big_l = n // m
    count = max(big_l - 1, 0)
    names = [f"w{i}" for i in range(2, big_l + 1)]
    problem = LpProblem(variable_names=names, name=f"partner_m{m}_n{n}")
    problem.objective = {j: Fraction(-1) for j in range(count)}
    omega_p = list(fixed_out.entries)

    def col(i: int) -> int:
        # column of ω_i for 2 ≤ i ≤ L
        return i - 2

    for i in range(2, big_l + 1):
        problem.add_constraint({col(i): 1}, "<=", omega_p[i - 1], f"cap_{i}")
    for i in range(2, big_l):
        problem.add_constraint({col(i + 1): 1, col(i): -1}, "<=", 0, f"order_{i}")
    if count:
        # ω_1 ≥ ω_2
        coeffs = {j: Fraction(1) for j in range(count)}
        coeffs[col(2)] += 1
        problem.add_constraint(coeffs, "<=", 1, "order_1")
    # ω_1 ≥ m·ω′_1 dominates every prefix constraint with k < m
    problem.add_constraint({j: 1 for j in range(count)}, "<=", 1 - m * omega_p[0], "head")

    tail = Fraction(1) if fixed_out.exact else 1.0
    for k in range(1, n + 1):
        tail -= omega_p[k - 1]
        q, r = divmod(k, m)
        if q == 0:
            continue
        coeffs: dict[int, Fraction] = {}
        for i in range(q + 1, big_l + 1):
            coeffs[col(i)] = Fraction(1)
        if r and 2 <= q + 1 <= big_l:
            coeffs[col(q + 1)] = coeffs.get(col(q + 1), Fraction(0)) - Fraction(r, m)
        if coeffs:
            problem.add_constraint(coeffs, "<=", tail if fixed_out.exact else max(tail, 0.0), f"prefix_{k}")
    return problem


def _partner_for_output(fixed: ProbVec, m: int, mode: Mode) -> tuple[ProbVec, Scalar]:
    n = len(fixed)
    if n < m:
        raise InfeasibleError(
            f"No input catalyst of dimension {n} < m = {m} can emit a pure system state",
            suggestion="Use a catalyst dimension of at least m",
        )
    if m * fixed[0] > 1:
        raise InfeasibleError(
            f"Fixed output catalyst has ω′_1 = {fixed[0]} > 1/m; no input partner exists",
            suggestion="The input catalyst would need ω_1 ≥ m·ω′_1 > 1",
        )
    if not fixed.exact and mode == "exact":
        raise ValidationError("Exact partner search needs an exact fixed vector", suggestion="Use --mode float")

    problem = partner_lp(fixed, m)
    solution = solve_lp(problem, mode)
    if solution.status == "infeasible":
        raise InfeasibleError("No feasible input catalyst exists for the fixed output catalyst")
    if not solution.optimal:
        raise SolverError(f"Partner LP is {solution.status}")

    big_l = n // m
    x = list(solution.x)
    if mode == "exact":
        head = 1 - sum(x, Fraction(0))
        omega = ProbVec([head, *x] + [Fraction(0)] * (n - big_l), sorted_desc=True)
    else:
        x = [min(max(v, 0.0), float(fixed[i + 1])) for i, v in enumerate(x)]
        omega = sort_desc(ProbVec.normalized([max(1.0 - sum(x), 0.0), *x] + [0.0] * (n - big_l)))
        fixed = fixed.to_float()
    pair = CatalystPair(omega_in=omega, omega_out=fixed, system_dim=m)
    if mode == "exact" and not check_transformation(pair):
        raise SolverError("Partner LP optimizer fails the majorization check")
    return omega, trace_distance(omega, fixed)


def _partner_for_input(fixed: ProbVec, m: int, mode: Mode) -> tuple[ProbVec, Scalar]:
    n = len(fixed)
    if support_size(fixed) > n // m:
        raise InfeasibleError(
            f"Fixed input catalyst has rank {support_size(fixed)} > n/m = {n // m}",
            suggestion="An input catalyst must have rank at most n/m; fix the output side instead",
        )
    _check_dims(m, n)
    omega = [Fraction(v) for v in fixed.entries] if fixed.exact else [float(v) for v in fixed.entries]
    names = [f"wp{i}" for i in range(1, n + 1)] + [f"t{i}" for i in range(1, n + 1)]
    problem = LpProblem(variable_names=names, name=f"partner_in_m{m}_n{n}")
    wp, t = 0, n
    problem.objective = {t + i: Fraction(1, 2) for i in range(n)}
    for i in range(n):
        problem.add_constraint({t + i: 1, wp + i: 1}, ">=", Fraction(omega[i]), f"abs_pos_{i + 1}")
        problem.add_constraint({t + i: 1, wp + i: -1}, ">=", -Fraction(omega[i]), f"abs_neg_{i + 1}")
    for i in range(n - 1):
        problem.add_constraint({wp + i: 1, wp + i + 1: -1}, ">=", 0, f"order_wp_{i + 1}")
    problem.add_constraint({wp + i: 1 for i in range(n)}, "==", 1, "norm_wp")
    for k in range(1, n + 1):
        lhs = sum((c * Fraction(omega[i]) for i, c in _prefix_lhs(k, m, n).items()), Fraction(0))
        problem.add_constraint({wp + i: 1 for i in range(k)}, "<=", lhs, f"prefix_{k}")

    solution = solve_lp(problem, mode)
    if solution.status == "infeasible":
        raise InfeasibleError("No feasible output catalyst exists for the fixed input catalyst")
    if not solution.optimal:
        raise SolverError(f"Partner LP is {solution.status}")
    x = list(solution.x[:n])
    partner = ProbVec(x, sorted_desc=True) if mode == "exact" else sort_desc(ProbVec.normalized(x))
    return partner, trace_distance(fixed if mode == "exact" else fixed.to_float(), partner)


def nearest_feasible_partner(fixed: ProbVec, side: Side, m: int, mode: Mode = "exact") -> tuple[ProbVec, Scalar]:
    """
    Best partner for a fixed catalyst and its trace distance.

    ``side="output"`` fixes ω′ and optimizes the input ω; ``side="input"``
    fixes ω and optimizes ω′. A fixed input of rank above n/m has no
    feasible partner.
    """
    if not fixed.is_descending():
        raise ValidationError("Fixed catalyst must be sorted in descending order", suggestion="Apply sort_desc first")
    if not isinstance(m, int) or m < 2:
        raise ValidationError(f"System dimension m must be an integer ≥ 2, got {m!r}")
    cap = _size_cap()
    if len(fixed) > cap:
        raise SizeCapError(len(fixed), cap)
    if side == "output":
        return _partner_for_output(fixed, m, mode)
    if side == "input":
        return _partner_for_input(fixed, m, mode)
    raise ValidationError(f"Unknown side '{side}'", suggestion="Use 'input' or 'output'")
