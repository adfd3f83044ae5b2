"""
Linear programs with exact rational data.

``solve_lp`` runs a two-phase primal simplex on sparse rows of ``Fraction``
entries with Bland's rule, and re-substitutes the optimizer into every
original constraint before returning. A float backend on scipy's HiGHS is
available for sweeps too large for rational pivoting; its results are
verified to a fixed tolerance instead of exactly.

All variables are nonnegative and the objective is minimized.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np
from scipy.optimize import linprog

from thermocat.core.exceptions import SolverError, ValidationError

logger = logging.getLogger(__name__)

Sense = Literal["<=", ">=", "=="]
Status = Literal["optimal", "infeasible", "unbounded"]
Mode = Literal["exact", "float"]

FLOAT_FEASIBILITY_TOLERANCE = 1e-7


@dataclass(frozen=True)
class LpConstraint:
    """Σ_j coeffs[j]·x_j (sense) rhs."""

    coeffs: Mapping[int, Fraction]
    sense: Sense
    rhs: Fraction
    name: str = ""

    def lhs(self, x: list[Fraction] | list[float]) -> Fraction | float:
        return sum((c * x[j] for j, c in self.coeffs.items()), Fraction(0))

    def satisfied(self, x: list[Fraction] | list[float], tolerance: float = 0) -> bool:
        excess = self.lhs(x) - self.rhs
        if self.sense == "<=":
            return excess <= tolerance
        if self.sense == ">=":
            return excess >= -tolerance
        return abs(excess) <= tolerance


@dataclass
class LpProblem:
    """Minimize objective·x subject to the constraints and x ≥ 0."""

    variable_names: list[str]
    objective: dict[int, Fraction] = field(default_factory=dict)
    constraints: list[LpConstraint] = field(default_factory=list)
    name: str = "lp"

    @property
    def num_variables(self) -> int:
        return len(self.variable_names)

    def add_constraint(
        self,
        coeffs: Mapping[int, Fraction | int],
        sense: Sense,
        rhs: Fraction | int,
        name: str = "",
    ) -> None:
        if sense not in ("<=", ">=", "=="):
            raise ValidationError(f"Unknown constraint sense '{sense}'")
        cleaned = {j: Fraction(c) for j, c in coeffs.items() if c != 0}
        if any(not 0 <= j < self.num_variables for j in cleaned):
            raise ValidationError(f"Constraint '{name}' references an unknown variable")
        self.constraints.append(LpConstraint(cleaned, sense, Fraction(rhs), name or f"c{len(self.constraints) + 1}"))

    def objective_value(self, x: list[Fraction] | list[float]) -> Fraction | float:
        return sum((c * x[j] for j, c in self.objective.items()), Fraction(0))


@dataclass(frozen=True)
class LpSolution:
    status: Status
    value: Fraction | float | None = None
    x: tuple[Fraction | float, ...] = ()
    pivots: int = 0
    mode: Mode = "exact"

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Sparse simplex tableau: each row maps column -> coefficient, with a basic variable per row."""

    def __init__(self, rows: list[dict[int, Fraction]], rhs: list[Fraction], basis: list[int]) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.cost: dict[int, Fraction] = {}
        self.value = Fraction(0)
        self.pivots = 0

    def set_objective(self, objective: Mapping[int, Fraction]) -> None:
        """Install an objective and price out the current basis."""
        cost = {j: Fraction(c) for j, c in objective.items() if c != 0}
        value = Fraction(0)
        for r, b in enumerate(self.basis):
            cb = objective.get(b, 0)
            if cb:
                for j, a in self.rows[r].items():
                    new = cost.get(j, Fraction(0)) - cb * a
                    if new:
                        cost[j] = new
                    else:
                        cost.pop(j, None)
                value += cb * self.rhs[r]
        self.cost = cost
        self.value = value

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        piv = row[j]
        if piv != 1:
            row = {k: a / piv for k, a in row.items()}
            self.rows[r] = row
            self.rhs[r] /= piv
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            factor = other.get(j)
            if factor:
                for k, a in row.items():
                    new = other.get(k, Fraction(0)) - factor * a
                    if new:
                        other[k] = new
                    else:
                        other.pop(k, None)
                self.rhs[i] -= factor * self.rhs[r]
        factor = self.cost.get(j)
        if factor:
            for k, a in row.items():
                new = self.cost.get(k, Fraction(0)) - factor * a
                if new:
                    self.cost[k] = new
                else:
                    self.cost.pop(k, None)
            self.value += factor * self.rhs[r]
        self.basis[r] = j
        self.pivots += 1

    def run(self, banned: frozenset[int] = frozenset()) -> Status:
        """Minimize the installed objective with Bland's rule."""
        while True:
            entering = min((j for j, d in self.cost.items() if d < 0 and j not in banned), default=None)
            if entering is None:
                return "optimal"
            best: tuple[Fraction, int, int] | None = None
            for r, row in enumerate(self.rows):
                a = row.get(entering)
                if a is not None and a > 0:
                    candidate = (self.rhs[r] / a, self.basis[r], r)
                    if best is None or candidate < best:
                        best = candidate
            if best is None:
                return "unbounded"
            self.pivot(best[2], entering)


def _solve_exact(problem: LpProblem) -> LpSolution:
    n = problem.num_variables
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    artificial_rows: list[int] = []
    next_col = n

    for con in problem.constraints:
        coeffs = dict(con.coeffs)
        sense, b = con.sense, con.rhs
        if sense == ">=":
            coeffs = {j: -a for j, a in coeffs.items()}
            sense, b = "<=", -b
        if b < 0:
            coeffs = {j: -a for j, a in coeffs.items()}
            b = -b
            sense = ">=" if sense == "<=" else "=="
        if sense == "<=":
            coeffs[next_col] = Fraction(1)
            basis.append(next_col)
            next_col += 1
        else:
            if sense == ">=":
                coeffs[next_col] = Fraction(-1)
                next_col += 1
            artificial_rows.append(len(rows))
            basis.append(-1)
        rows.append(coeffs)
        rhs.append(b)

    first_artificial = next_col
    for r in artificial_rows:
        rows[r][next_col] = Fraction(1)
        basis[r] = next_col
        next_col += 1
    artificials = frozenset(range(first_artificial, next_col))

    tableau = _Tableau(rows, rhs, basis)
    if artificials:
        tableau.set_objective({j: Fraction(1) for j in artificials})
        tableau.run()
        if tableau.value > 0:
            logger.debug("Phase I ended with infeasibility %s after %d pivots", tableau.value, tableau.pivots)
            return LpSolution(status="infeasible", pivots=tableau.pivots)
        _drive_out_artificials(tableau, artificials)
        for row in tableau.rows:
            for j in artificials:
                row.pop(j, None)

    tableau.set_objective(problem.objective)
    status = tableau.run(banned=artificials)
    if status == "unbounded":
        return LpSolution(status="unbounded", pivots=tableau.pivots)

    x = [Fraction(0)] * n
    for r, b in enumerate(tableau.basis):
        if b < n:
            x[b] = tableau.rhs[r]
    logger.debug("Exact simplex optimal after %d pivots: %s", tableau.pivots, tableau.value)
    return LpSolution(status="optimal", value=tableau.value, x=tuple(x), pivots=tableau.pivots)


def _drive_out_artificials(tableau: _Tableau, artificials: frozenset[int]) -> None:
    """Pivot zero-valued artificials out of the basis; drop rows that are redundant."""
    r = 0
    while r < len(tableau.rows):
        if tableau.basis[r] in artificials:
            column = min((j for j, a in tableau.rows[r].items() if j not in artificials and a != 0), default=None)
            if column is None:
                del tableau.rows[r]
                del tableau.rhs[r]
                del tableau.basis[r]
                continue
            tableau.pivot(r, column)
        r += 1


def _dense(problem: LpProblem) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    n = problem.num_variables
    c = np.zeros(n)
    for j, v in problem.objective.items():
        c[j] = float(v)
    ub_rows, ub_rhs, eq_rows, eq_rhs = [], [], [], []
    for con in problem.constraints:
        row = np.zeros(n)
        for j, v in con.coeffs.items():
            row[j] = float(v)
        if con.sense == "<=":
            ub_rows.append(row)
            ub_rhs.append(float(con.rhs))
        elif con.sense == ">=":
            ub_rows.append(-row)
            ub_rhs.append(-float(con.rhs))
        else:
            eq_rows.append(row)
            eq_rhs.append(float(con.rhs))
    a_ub = np.array(ub_rows) if ub_rows else np.zeros((0, n))
    a_eq = np.array(eq_rows) if eq_rows else np.zeros((0, n))
    return c, a_ub, np.array(ub_rhs), a_eq, np.array(eq_rhs)


def _solve_float(problem: LpProblem) -> LpSolution:
    c, a_ub, b_ub, a_eq, b_eq = _dense(problem)
    result = linprog(
        c,
        A_ub=a_ub if len(b_ub) else None,
        b_ub=b_ub if len(b_ub) else None,
        A_eq=a_eq if len(b_eq) else None,
        b_eq=b_eq if len(b_eq) else None,
        bounds=(0, None),
        method="highs",
    )
    if result.status == 2:
        return LpSolution(status="infeasible", mode="float")
    if result.status == 3:
        return LpSolution(status="unbounded", mode="float")
    if result.status != 0:
        raise SolverError(f"Float LP backend failed: {result.message}")
    x = tuple(float(v) for v in result.x)
    return LpSolution(status="optimal", value=float(result.fun), x=x, pivots=int(getattr(result, "nit", 0)), mode="float")


def verify_solution(problem: LpProblem, solution: LpSolution) -> None:
    """Re-substitute an optimal solution into every constraint; raise SolverError on any violation."""
    if not solution.optimal:
        return
    tolerance = 0 if solution.mode == "exact" else FLOAT_FEASIBILITY_TOLERANCE
    x = list(solution.x)
    if any(v < -tolerance for v in x):
        raise SolverError(f"LP '{problem.name}' returned a negative variable")
    for con in problem.constraints:
        if not con.satisfied(x, tolerance):
            raise SolverError(f"LP '{problem.name}' solution violates constraint '{con.name}'")
    value = problem.objective_value(x)
    if abs(value - solution.value) > tolerance * max(1.0, abs(float(value))):
        raise SolverError(f"LP '{problem.name}' objective mismatch: {value} vs {solution.value}")


def solve_lp(problem: LpProblem, mode: Mode = "exact") -> LpSolution:
    """Solve a minimization LP over x ≥ 0; optimal results are verified before returning."""
    if mode == "exact":
        solution = _solve_exact(problem)
    elif mode == "float":
        solution = _solve_float(problem)
    else:
        raise ValidationError(f"Unknown LP mode '{mode}'", suggestion="Use 'exact' or 'float'")
    verify_solution(problem, solution)
    return solution


def _format_terms(coeffs: Iterable[tuple[int, Fraction]], names: list[str]) -> str:
    parts = []
    for j, c in sorted(coeffs):
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {abs(c)} {names[j]}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def export_lp(problem: LpProblem) -> str:
    """
    Plain-text rendering of an LP, one constraint per line.

    Format::

        # thermocat LP <name>
        variables <count>
        minimize: <terms>
        <name>: <terms> <sense> <rhs>
        ...
        bounds: all variables >= 0
        end

    Terms are ``± p/q var`` with exact rational coefficients.
    """
    names = problem.variable_names
    lines = [
        f"# thermocat LP {problem.name}",
        f"variables {problem.num_variables}",
        f"minimize: {_format_terms(problem.objective.items(), names)}",
    ]
    for con in problem.constraints:
        lines.append(f"{con.name}: {_format_terms(con.coeffs.items(), names)} {con.sense} {con.rhs}")
    lines.append("bounds: all variables >= 0")
    lines.append("end")
    return "\n".join(lines) + "\n"
