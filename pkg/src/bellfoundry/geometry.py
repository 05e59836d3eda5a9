"""Shared geometry, outcome, counting and statistics primitives.

All measurement directions are coplanar with a fixed z reference, so an
axis is a single angle.  Outcomes are spin projections +-1/2, stored as
exact rationals so counting stays exact; floating point enters only when
counts are aggregated into expectation values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

TAU = 2.0 * math.pi

#: Largest outcome magnitude for a spin projection.
V_MAX = 0.5

#: Bell bound on the CHSH combination for factorizable models: 2 * V_MAX**2.
BELL_BOUND = 2.0 * V_MAX**2

#: Quantum (Tsirelson) bound on the CHSH combination: 2 * sqrt(2) * V_MAX**2.
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0) * V_MAX**2


@dataclass(frozen=True)
class Axis:
    """A coplanar measurement direction, one angle in radians.

    The canonical representative is stored in [0, 2*pi).
    """

    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError("axis angle must be finite")
        theta = self.theta % TAU
        if theta >= TAU:  # % can round up to TAU for tiny negative inputs
            theta = 0.0
        object.__setattr__(self, "theta", theta)

    @property
    def unit_vector(self) -> np.ndarray:
        """Unit vector in the x-z plane; theta = 0 is the z axis."""
        return np.array([math.sin(self.theta), 0.0, math.cos(self.theta)])


def wrap_angle(delta: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    wrapped = math.fmod(delta, TAU)
    if wrapped > math.pi:
        wrapped -= TAU
    elif wrapped <= -math.pi:
        wrapped += TAU
    return wrapped


def wrap_delta(a: Axis, b: Axis) -> float:
    """Signed angle theta_b - theta_a wrapped to (-pi, pi]."""
    return wrap_angle(b.theta - a.theta)


@dataclass(frozen=True)
class Outcome:
    """A spin-projection result, exactly +1/2 or -1/2."""

    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        if value not in (Fraction(1, 2), Fraction(-1, 2)):
            raise ValueError(f"outcome must be +-1/2, got {value}")
        object.__setattr__(self, "value", value)

    @property
    def sign(self) -> int:
        return 1 if self.value > 0 else -1


PLUS = Outcome(Fraction(1, 2))
MINUS = Outcome(Fraction(-1, 2))


def outcome_from_sign(sign) -> Outcome:
    return PLUS if sign > 0 else MINUS


@dataclass(frozen=True)
class PairCounts:
    """Trial counts for the four outcome pairs (first sign, second sign).

    Merging is associative and commutative, so counts accumulated from
    independent batches can be combined in any order.
    """

    n_pp: int
    n_pm: int
    n_mp: int
    n_mm: int

    def __post_init__(self):
        for n in (self.n_pp, self.n_pm, self.n_mp, self.n_mm):
            if n < 0:
                raise ValueError("counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.n_pp + self.n_pm + self.n_mp + self.n_mm

    def __add__(self, other: "PairCounts") -> "PairCounts":
        return PairCounts(
            self.n_pp + other.n_pp,
            self.n_pm + other.n_pm,
            self.n_mp + other.n_mp,
            self.n_mm + other.n_mm,
        )

    def frequencies(self) -> dict:
        """Observed frequencies keyed by the outcome-sign pair."""
        if self.total == 0:
            raise ValueError("empty counts")
        t = float(self.total)
        return {
            (1, 1): self.n_pp / t,
            (1, -1): self.n_pm / t,
            (-1, 1): self.n_mp / t,
            (-1, -1): self.n_mm / t,
        }


def counts_from_signs(s1: np.ndarray, s2: np.ndarray) -> PairCounts:
    """Tally arrays of +-1 outcome signs into PairCounts."""
    p1 = s1 > 0
    p2 = s2 > 0
    n_pp = int(np.count_nonzero(p1 & p2))
    n_pm = int(np.count_nonzero(p1 & ~p2))
    n_mp = int(np.count_nonzero(~p1 & p2))
    n_mm = int(np.count_nonzero(~p1 & ~p2))
    return PairCounts(n_pp, n_pm, n_mp, n_mm)


@dataclass(frozen=True)
class ExpectationEstimate:
    """An estimate of E(a, b) with its Monte Carlo standard error.

    ``std_error`` is NaN when it cannot be estimated (fewer than 2 trials).
    """

    value: float
    std_error: float
    n: int

    def __post_init__(self):
        if abs(self.value) > V_MAX**2 + 1e-15:
            raise ValueError("expectation magnitude exceeds V_MAX**2")


def empirical_expectation(counts: PairCounts) -> ExpectationEstimate:
    """Outcome-product average E = sum A1*B2*F(A1, B2) over the four cells.

    The per-trial product is +-1/4; the standard error is the sample
    standard deviation of that product divided by sqrt(n).
    """
    n = counts.total
    if n == 0:
        raise ValueError("empty counts")
    same = counts.n_pp + counts.n_mm
    diff = counts.n_pm + counts.n_mp
    value = (same - diff) / (4.0 * n)
    if n < 2:
        std_error = math.nan
    else:
        # per-trial products are +-1/4, so var = 1/16 - mean**2 (plug-in)
        variance = max(V_MAX**4 - value * value, 0.0)
        std_error = math.sqrt(variance / (n - 1))
    return ExpectationEstimate(value=value, std_error=std_error, n=n)
