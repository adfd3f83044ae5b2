"""
Catalyst families and the dimension-reduction construction.

The optimal family for a system of dimension m and catalyst dimension
n = m^a is built with integer block indices: block 0 is the single entry
i = 1, block b ≥ 1 covers m^{b−1} < i ≤ m^b. All values are exact rationals.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Literal

from thermocat.core.exceptions import InfeasibleError, SolverError, ValidationError
from thermocat.core.spectra import CatalystPair, ProbVec, check_transformation, trace_distance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamilyParams:
    """System dimension m ≥ 2 and power a ≥ 1; the catalyst has dimension n = m^a."""

    m: int
    a: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 2:
            raise ValidationError(f"System dimension m must be an integer ≥ 2, got {self.m!r}")
        if not isinstance(self.a, int) or self.a < 1:
            raise ValidationError(f"Power a must be an integer ≥ 1, got {self.a!r}")

    @property
    def n(self) -> int:
        return self.m**self.a


def optimal_first_entry(params: FamilyParams) -> Fraction:
    """ω′_1 = 1/(1 + (m − 1)a)."""
    return Fraction(1, 1 + (params.m - 1) * params.a)


def optimal_out(params: FamilyParams) -> ProbVec:
    """The output catalyst ω′ of the optimal family."""
    m, a = params.m, params.a
    head = optimal_first_entry(params)
    entries = [head]
    for b in range(1, a + 1):
        block_value = head / m ** (b - 1)
        entries.extend([block_value] * (m**b - m ** (b - 1)))
    return ProbVec(entries, sorted_desc=True)


def optimal_pair(params: FamilyParams) -> CatalystPair:
    """
    The exact optimal catalyst pair (ω, ω′) for system dimension m and n = m^a.

    ω agrees with ω′ on 2 ≤ i ≤ n/m, vanishes beyond n/m, and carries
    ω_1 = m·ω′_1.
    """
    omega_out = optimal_out(params)
    cutoff = params.n // params.m
    zero = Fraction(0)
    omega_in_entries = [params.m * omega_out[0]]
    omega_in_entries.extend(omega_out[i] if i < cutoff else zero for i in range(1, params.n))
    omega_in = ProbVec(omega_in_entries, sorted_desc=True)
    return CatalystPair(omega_in=omega_in, omega_out=omega_out, system_dim=params.m)


def optimal_error(params: FamilyParams) -> Fraction:
    """d_{m,n} = (m − 1)/(1 + (m − 1)a)."""
    return Fraction(params.m - 1, 1 + (params.m - 1) * params.a)


def harmonic_number(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def vdh_state(n: int) -> ProbVec:
    """The harmonic-weighted embezzling vector (1/C(n))·(1/i), C(n) = Σ_{i≤n} 1/i."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"Dimension must be a positive integer, got {n!r}")
    c = harmonic_number(n)
    return ProbVec([Fraction(1, i) / c for i in range(1, n + 1)], sorted_desc=True)


def family_table(m: int, a: int) -> list[dict[str, int | Fraction]]:
    """Rows (index, ω′_i of the optimal family, vdH_i) at n = m^a."""
    params = FamilyParams(m, a)
    ours = optimal_out(params)
    vdh = vdh_state(params.n)
    return [
        {"index": i + 1, "omega_prime_ours": ours[i], "omega_vdh": vdh[i]}
        for i in range(params.n)
    ]


def pile_slack(pair: CatalystPair) -> CatalystPair:
    """
    Move all majorization advantage of ω onto its first entry.

    ω̃_i = min(ω_i, ω′_i) for i ≥ 2 and ω̃_1 absorbs the rest. Feasibility
    and trace distance are unchanged.
    """
    omega, omega_p = pair.omega_in, pair.omega_out
    tail = [min(w, wp) for w, wp in zip(omega.entries[1:], omega_p.entries[1:])]
    head = 1 - sum(tail, Fraction(0)) if pair.exact else 1.0 - math.fsum(tail)
    piled = ProbVec([head, *tail], sorted_desc=True)
    return CatalystPair(omega_in=piled, omega_out=omega_p, system_dim=pair.system_dim)


@dataclass(frozen=True)
class ReductionResult:
    """
    Output of one inductive reduction step.

    ``relation`` is ``"equality"`` when d_out·(1 − δ) = d_in and
    ``"inequality"`` when only d_out·(1 − δ) ≤ d_in holds (split index 1 on
    the block-averaged branch).
    """

    pair: CatalystPair
    delta: Fraction
    split_index: int
    split_value: Fraction
    branch: Literal["sigma", "zeta"]
    distance_in: Fraction
    distance_out: Fraction
    relation: Literal["equality", "inequality"]

    def to_dict(self) -> dict[str, object]:
        return {
            "m": self.pair.system_dim,
            "omega_in": self.pair.omega_in.to_strings(),
            "omega_out": self.pair.omega_out.to_strings(),
            "delta": str(self.delta),
            "split_index": self.split_index,
            "split_value": str(self.split_value),
            "branch": self.branch,
            "distance_in": str(self.distance_in),
            "distance_out": str(self.distance_out),
            "relation": self.relation,
        }


def is_power_of(k: int, m: int) -> bool:
    """True when k = m^b for some b ≥ 1."""
    if k < m:
        return False
    while k % m == 0:
        k //= m
    return k == 1


def reduce_pair(pair: CatalystPair) -> ReductionResult:
    """
    Cut a feasible pair in dimension k down to dimension k/m.

    The pair is first put in slack-piled normal form. With
    δ = Σ_{i>k/m} ω′_i, the split index s is the first index where the prefix
    sums of ω reach 1 − δ, and ω̂_s is the part of ω_s needed to get there.
    Both sides are truncated and renormalized by 1/(1 − δ); when ω̂_s ≠ ω_s
    the output block (s−1)m+1..sm is replaced by its average.
    """
    if not pair.exact:
        raise ValidationError(
            "Dimension reduction needs an exact catalyst pair",
            suggestion="Build the pair from 'p/q' rationals",
        )
    m, k = pair.system_dim, pair.dimension
    if not is_power_of(k, m):
        raise ValidationError(
            f"Catalyst dimension {k} is not a power of m = {m}",
            suggestion="Reduction only applies to catalysts of dimension m^(a+1)",
        )
    n = k // m
    if n < m:
        raise ValidationError(
            f"Catalyst dimension {k} has no smaller dimension to reduce to for m = {m}",
            suggestion="The base case k = m cannot be reduced further",
        )
    if not check_transformation(pair):
        raise InfeasibleError(
            "Catalyst pair does not satisfy ω ⊗ I/m ≻ ω′ ⊗ |0⟩⟨0|",
            suggestion="Only feasible pairs can be reduced",
        )

    piled = pile_slack(pair)
    omega = list(piled.omega_in.entries)
    omega_p = list(piled.omega_out.entries)
    distance_in = trace_distance(pair.omega_in, pair.omega_out)

    delta = sum(omega_p[n:], Fraction(0))
    target = 1 - delta
    if target <= 0:
        raise InfeasibleError("Output catalyst has no weight on its first k/m entries")

    prefix = list(accumulate(omega))
    s = next(i for i, total in enumerate(prefix, start=1) if total >= target)
    before = prefix[s - 2] if s >= 2 else Fraction(0)
    split_value = target - before
    if s * m > n:
        raise SolverError(f"Split index {s} leaves no room for an averaged block in dimension {n}")

    reduced_in = [x / target for x in omega[: s - 1]] + [split_value / target] + [Fraction(0)] * (n - s)
    reduced_out = omega_p[:n]

    if split_value == omega[s - 1]:
        branch: Literal["sigma", "zeta"] = "sigma"
    else:
        branch = "zeta"
        lo, hi = (s - 1) * m, s * m
        level = sum(reduced_out[lo:hi], Fraction(0)) / m
        c_in = before
        c_out = sum(reduced_out[:lo], Fraction(0))
        for j in range(1, m + 1):
            if c_in + Fraction(j, m) * split_value < c_out + j * level:
                raise SolverError(f"Block-averaging interpolation fails at j = {j}")
        reduced_out = reduced_out[:lo] + [level] * m + reduced_out[hi:]
    reduced_out = [x / target for x in reduced_out]

    result_pair = CatalystPair(
        omega_in=ProbVec(reduced_in, sorted_desc=True),
        omega_out=ProbVec(reduced_out, sorted_desc=True),
        system_dim=m,
    )
    if not check_transformation(result_pair):
        raise SolverError("Reduced catalyst pair is not feasible")

    distance_out = trace_distance(result_pair.omega_in, result_pair.omega_out)
    scaled = distance_out * target
    if scaled == distance_in:
        relation: Literal["equality", "inequality"] = "equality"
    elif scaled < distance_in:
        relation = "inequality"
    else:
        raise SolverError(f"Reduced distance {distance_out} exceeds d_in/(1 − δ) = {distance_in / target}")

    logger.debug("Reduced k=%d to n=%d via %s branch, s=%d, delta=%s", k, n, branch, s, delta)
    return ReductionResult(
        pair=result_pair,
        delta=delta,
        split_index=s,
        split_value=split_value,
        branch=branch,
        distance_in=distance_in,
        distance_out=distance_out,
        relation=relation,
    )
