"""Hidden-variable models, the CHSH bounds, and Wigner set measures.

A hidden-variable model supplies a sampler over its variable space and
factorized per-particle response probabilities.  Response methods take an
outcome sign (+1 or -1), an axis, and an array of sampled variables, and
return the probability of that outcome for each variable; responses must
be normalized over the two outcomes for each particle separately, which
is exactly the factorization structure p(A1, B2, lam) = p(A1, lam) p(B2, lam).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .geometry import (
    Axis,
    BELL_BOUND,
    ExpectationEstimate,
    PairCounts,
    TAU,
    V_MAX,
    counts_from_signs,
    empirical_expectation,
    wrap_angle,
    wrap_delta,
)

_OUTCOME_SIGNS = (1, -1)


class HVModel(Protocol):
    """Contract for a factorizable hidden-variable model."""

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n i.i.d. hidden variables from the model's distribution."""

    def response1(self, sign: int, a: Axis, lam: np.ndarray) -> np.ndarray:
        """P(first particle yields outcome sign/2 | lam) along axis a."""

    def response2(self, sign: int, b: Axis, lam: np.ndarray) -> np.ndarray:
        """P(second particle yields outcome sign/2 | lam) along axis b."""


class DeterministicSignModel:
    """Deterministic model: lam is an angle uniform on the circle.

    Particle 1 answers +1/2 exactly when cos(lam - theta_a) >= 0, particle
    2 answers the opposite sign of the same rule, so same-axis outcomes are
    perfectly anticorrelated for every lam.  The boundary cos = 0 counts as
    + (measure zero, but determinism needs a fixed rule).
    """

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(0.0, TAU, size=n)

    @staticmethod
    def _sign1(a: Axis, lam: np.ndarray) -> np.ndarray:
        return np.where(np.cos(lam - a.theta) >= 0.0, 1, -1)

    def response1(self, sign: int, a: Axis, lam: np.ndarray) -> np.ndarray:
        return (self._sign1(a, lam) == sign).astype(float)

    def response2(self, sign: int, b: Axis, lam: np.ndarray) -> np.ndarray:
        return (self._sign1(b, lam) == -sign).astype(float)


class ConstantResponseModel:
    """Stochastic model answering +1/2 with a fixed probability p on both sides."""

    def __init__(self, p: float = 0.5):
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must be a probability")
        self.p = p

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(0.0, TAU, size=n)

    def response1(self, sign: int, a: Axis, lam: np.ndarray) -> np.ndarray:
        p = self.p if sign > 0 else 1.0 - self.p
        return np.full(lam.shape, p)

    response2 = response1


def _check_normalized(model: HVModel, a: Axis, b: Axis, lam: np.ndarray) -> None:
    for response, axis in ((model.response1, a), (model.response2, b)):
        total = response(1, axis, lam) + response(-1, axis, lam)
        if np.abs(total - 1.0).max() > 1e-12:
            raise ValueError("model responses are not normalized over outcomes")


def sample_model_counts(
    model: HVModel, a: Axis, b: Axis, n: int, rng: np.random.Generator
) -> PairCounts:
    """Draw n trials: sample lam, then outcomes from the factorized responses."""
    lam = model.sample(rng, n)
    _check_normalized(model, a, b, lam[: min(n, 1024)])
    p1 = model.response1(1, a, lam)
    p2 = model.response2(1, b, lam)
    s1 = np.where(rng.random(n) < p1, 1, -1)
    s2 = np.where(rng.random(n) < p2, 1, -1)
    return counts_from_signs(s1, s2)


def model_expectation(
    model: HVModel, a: Axis, b: Axis, n: int, rng: np.random.Generator
) -> ExpectationEstimate:
    """Monte Carlo estimate of E(a, b) = integral A1bar B2bar rho dlam."""
    if n <= 0:
        raise ValueError("trial count must be positive")
    return empirical_expectation(sample_model_counts(model, a, b, n, rng))


def sign_model_expectation_analytic(a: Axis, b: Axis) -> float:
    """Closed form for DeterministicSignModel: -V_MAX^2 (1 - 2|d|/pi).

    Obtained from the overlap of the two half-circles; serves as the
    independent oracle for model_expectation on the built-in model.
    """
    d = abs(wrap_delta(a, b))
    return -V_MAX**2 * (1.0 - 2.0 * d / math.pi)


def chsh_value(e_ab: float, e_abp: float, e_apb: float, e_apbp: float, sign_choice: int = 1) -> float:
    """|E(a,b) -+ E(a,b')| + |E(a',b) +- E(a',b')| for one sign pattern."""
    if sign_choice not in (1, -1):
        raise ValueError("sign_choice must be +1 or -1")
    for e in (e_ab, e_abp, e_apb, e_apbp):
        if abs(e) > V_MAX**2 + 1e-12:
            raise ValueError("expectation magnitude exceeds V_MAX**2")
    return abs(e_ab - sign_choice * e_abp) + abs(e_apb + sign_choice * e_apbp)


@dataclass(frozen=True)
class BellCheckReport:
    """Worst-case CHSH margin for a model over an axis grid."""

    worst_value: float
    worst_axes: tuple
    worst_sign: int
    tolerance: float

    @property
    def holds(self) -> bool:
        return self.worst_value <= BELL_BOUND + self.tolerance


def check_bell_theorem(
    model: HVModel,
    axis_grid: Sequence[Axis],
    n: int,
    rng: np.random.Generator,
) -> BellCheckReport:
    """CHSH over every grid quadruple and both sign choices stays bounded.

    Expectations are estimated once per grid pair and reused across
    quadruples; the statistical tolerance is five combined standard errors.
    """
    grid = list(axis_grid)
    estimates = {}
    for a in grid:
        for b in grid:
            estimates[(a.theta, b.theta)] = model_expectation(model, a, b, n, rng)
    worst = (-math.inf, None, 0, 0.0)
    for a, ap, b, bp in itertools.product(grid, repeat=4):
        es = [
            estimates[(a.theta, b.theta)],
            estimates[(a.theta, bp.theta)],
            estimates[(ap.theta, b.theta)],
            estimates[(ap.theta, bp.theta)],
        ]
        tol = 5.0 * math.sqrt(sum(e.std_error**2 for e in es))
        for sign in _OUTCOME_SIGNS:
            value = chsh_value(*(e.value for e in es), sign_choice=sign)
            if value - tol > worst[0] - worst[3]:
                worst = (value, (a, ap, b, bp), sign, tol)
    return BellCheckReport(
        worst_value=worst[0], worst_axes=worst[1], worst_sign=worst[2], tolerance=worst[3]
    )


def joint_distribution_chsh(f: np.ndarray) -> float:
    """CHSH from a joint distribution over (A1, A1', B2, B2'); always <= 1/2.

    ``f`` has shape (2, 2, 2, 2) with index 0 meaning +1/2 and 1 meaning
    -1/2.  The four pair expectations are recovered by marginalization and
    the larger of the two sign patterns is returned.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (2, 2, 2, 2):
        raise ValueError("joint distribution must have shape (2, 2, 2, 2)")
    if (f < -1e-15).any() or abs(f.sum() - 1.0) > 1e-12:
        raise ValueError("joint distribution must be nonnegative and normalized")
    v = np.array([V_MAX, -V_MAX])
    e_ab = np.einsum("i,k,ijkl->", v, v, f)
    e_abp = np.einsum("i,l,ijkl->", v, v, f)
    e_apb = np.einsum("j,k,ijkl->", v, v, f)
    e_apbp = np.einsum("j,l,ijkl->", v, v, f)
    return float(max(chsh_value(e_ab, e_abp, e_apb, e_apbp, s) for s in _OUTCOME_SIGNS))


def vertex_distributions():
    """The 16 deterministic point masses over (A1, A1', B2, B2')."""
    for idx in itertools.product((0, 1), repeat=4):
        f = np.zeros((2, 2, 2, 2))
        f[idx] = 1.0
        yield idx, f


def stochastic_defect(model: HVModel, a: Axis, n: int, rng: np.random.Generator) -> float:
    """Diagnostic for the stochastic ruling-out argument.

    Estimates E_lam[p(A1=+, lam)(1 - p(A2=-, lam)) + p(A1=-, lam)(1 - p(A2=+, lam))]
    at the same axis for both particles; it vanishes exactly when the model
    can reproduce the perfect same-axis anticorrelation.
    """
    lam = model.sample(rng, n)
    p1_plus = model.response1(1, a, lam)
    p1_minus = model.response1(-1, a, lam)
    p2_plus = model.response2(1, a, lam)
    p2_minus = model.response2(-1, a, lam)
    defect = p1_plus * (1.0 - p2_minus) + p1_minus * (1.0 - p2_plus)
    return float(defect.mean())


@dataclass(frozen=True)
class SubsetSpec:
    """An intersection of outcome subsets, e.g. (+a) & (-a').

    Each clause is (axis, sign); lam belongs to the clause when the
    model's deterministic particle-1 response for that signed outcome is 1.
    """

    clauses: tuple

    def __init__(self, clauses):
        clauses = tuple((axis, int(sign)) for axis, sign in clauses)
        if not clauses:
            raise ValueError("subset spec needs at least one clause")
        for _, sign in clauses:
            if sign not in (1, -1):
                raise ValueError("clause sign must be +1 or -1")
        object.__setattr__(self, "clauses", clauses)


def _arc_intersection_length(clauses) -> float:
    """Length of the intersection of half-circle arcs, one per clause.

    The clause (axis, s) selects the closed half-circle centered at
    theta_axis for s = +1 and at theta_axis + pi for s = -1.  Intersecting
    a connected arc of width <= pi with a half-circle stays connected, so
    the clauses can be folded in one at a time.
    """
    first_axis, first_sign = clauses[0]
    center = first_axis.theta + (0.0 if first_sign > 0 else math.pi)
    lo, hi = -math.pi / 2.0, math.pi / 2.0  # arc relative to center
    for axis, sign in clauses[1:]:
        c = wrap_angle(axis.theta + (0.0 if sign > 0 else math.pi) - center)
        lo = max(lo, c - math.pi / 2.0)
        hi = min(hi, c + math.pi / 2.0)
        if hi <= lo:
            return 0.0
    return hi - lo


def _require_deterministic(model: HVModel, lam: np.ndarray, axes) -> None:
    for axis in axes:
        p = model.response1(1, axis, lam)
        if not np.isin(p, (0.0, 1.0)).all():
            raise ValueError("measure undefined for stochastic models")


def wigner_measure(
    model: HVModel,
    spec: SubsetSpec,
    mode: str = "analytic",
    n: int = 0,
    rng: np.random.Generator | None = None,
) -> float:
    """Measure of the intersection subset defined by a deterministic model.

    Analytic mode is the exact half-circle arc overlap, supported for
    DeterministicSignModel only; MC mode estimates membership frequency by
    sampling lam from any deterministic model.
    """
    if mode == "analytic":
        if not isinstance(model, DeterministicSignModel):
            raise ValueError("analytic measure supported for DeterministicSignModel only")
        return _arc_intersection_length(spec.clauses) / TAU
    if mode == "mc":
        if rng is None or n <= 0:
            raise ValueError("MC mode needs a positive n and an rng")
        lam = model.sample(rng, n)
        _require_deterministic(model, lam[: min(n, 1024)], [axis for axis, _ in spec.clauses])
        member = np.ones(n, dtype=bool)
        for axis, sign in spec.clauses:
            member &= model.response1(sign, axis, lam) == 1.0
        return float(member.mean())
    raise ValueError(f"unknown mode {mode!r}")


def measure_std_error(measure: float, n: int) -> float:
    """Binomial standard error of an MC subset-measure estimate."""
    return math.sqrt(max(measure * (1.0 - measure), 0.0) / n)


def wigner_inequality_check(
    model: HVModel,
    a: Axis,
    ap: Axis,
    b: Axis,
    mode: str = "analytic",
    n: int = 0,
    rng: np.random.Generator | None = None,
    tolerance: float = 0.0,
) -> tuple:
    """Set-measure inequality M(+a' & +b) >= M(+a & +b) - M(+a & -a').

    Holds for every deterministic factorizable model; returns
    (lhs, rhs, holds).
    """
    lhs = wigner_measure(model, SubsetSpec([(ap, 1), (b, 1)]), mode, n, rng)
    rhs = wigner_measure(model, SubsetSpec([(a, 1), (b, 1)]), mode, n, rng) - wigner_measure(
        model, SubsetSpec([(a, 1), (ap, -1)]), mode, n, rng
    )
    return lhs, rhs, lhs >= rhs - tolerance


def quantum_wigner_violation(a: Axis, ap: Axis, b: Axis) -> tuple:
    """Evaluate the set-measure inequality with singlet probabilities.

    lhs = cos((theta_b - theta_a')/2)**2,
    rhs = cos((theta_b - theta_a)/2)**2 - sin((theta_a - theta_a')/2)**2.
    Returns (lhs, rhs, violated); the inequality fails e.g. for coplanar
    angles 0 <= theta_b < theta_a < theta_a' <= pi/2.
    """
    lhs = math.cos((b.theta - ap.theta) / 2.0) ** 2
    rhs = (
        math.cos((b.theta - a.theta) / 2.0) ** 2
        - math.sin((a.theta - ap.theta) / 2.0) ** 2
    )
    return lhs, rhs, lhs < rhs
