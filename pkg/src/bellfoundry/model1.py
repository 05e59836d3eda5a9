"""Model 1: classical angular momenta with ensemble-attached probabilities.

A source emits two unit angular momenta with J1 + J2 = 0, J1 uniform on
the sphere.  Measurement probabilities attach to a hemisphere ensemble as
a whole, not to the individual vector: under the ensemble centered on axis
a (positive side), the outcome along b is +1/2 with probability
(cos(theta_b - theta_a) + 1) / 2, so the outcome average equals the mean
projection over the ensemble.  Measuring fixes the ensemble of both
particles, which is where the singlet correlation comes from.

The underlying stochastic motion inside the ensemble is not simulated as
a time process; only the ensemble-level probability law is observable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    Axis,
    PairCounts,
    V_MAX,
    counts_from_signs,
    outcome_from_sign,
    wrap_delta,
)


@dataclass(frozen=True)
class AngularMomentum:
    """A unit angular-momentum vector (J = 1)."""

    direction: np.ndarray

    def __post_init__(self):
        direction = np.asarray(self.direction, dtype=float)
        if direction.shape != (3,):
            raise ValueError("direction must be a 3-vector")
        if abs(np.linalg.norm(direction) - 1.0) > 1e-12:
            raise ValueError("direction must be a unit vector")
        direction.setflags(write=False)
        object.__setattr__(self, "direction", direction)


@dataclass(frozen=True)
class EnsembleLabel:
    """Either the uniform pair distribution or one hemisphere ensemble."""

    kind: str
    axis: Axis | None = None
    sign: int = 0

    def __post_init__(self):
        if self.kind not in ("uniform", "hemisphere"):
            raise ValueError("kind must be 'uniform' or 'hemisphere'")
        if self.kind == "hemisphere":
            if self.axis is None or self.sign not in (1, -1):
                raise ValueError("hemisphere label needs an axis and a sign")


def uniform_label() -> EnsembleLabel:
    return EnsembleLabel(kind="uniform")


def hemisphere(axis: Axis, sign: int) -> EnsembleLabel:
    return EnsembleLabel(kind="hemisphere", axis=axis, sign=sign)


@dataclass(frozen=True)
class PairConfiguration:
    """Two angular momenta with exact total-momentum conservation."""

    j1: AngularMomentum
    j2: AngularMomentum

    def __post_init__(self):
        if np.abs(self.j1.direction + self.j2.direction).max() > 1e-12:
            raise ValueError("angular momenta must sum to zero")


def _sample_unit_vectors(rng: np.random.Generator, n: int) -> np.ndarray:
    """n points uniform on the unit sphere (normalized Gaussians)."""
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def sample_pair(rng: np.random.Generator) -> PairConfiguration:
    """Draw one pair: J1 uniform on the sphere, J2 = -J1."""
    j1 = _sample_unit_vectors(rng, 1)[0]
    return PairConfiguration(AngularMomentum(j1), AngularMomentum(-j1))


def _effective_angle(label: EnsembleLabel) -> float:
    # the negative hemisphere of axis a is the positive hemisphere of a + pi
    return label.axis.theta + (0.0 if label.sign > 0 else math.pi)


def single_measure_prob(label: EnsembleLabel, b: Axis) -> tuple:
    """(P_plus, P_minus) for an outcome along b under a hemisphere ensemble.

    P(R_b = +1/2) = (cos(theta_b - theta_ensemble) + 1) / 2, the unique
    law whose outcome average matches the mean projection of the ensemble.
    """
    if label.kind != "hemisphere":
        raise ValueError("single-particle law needs a hemisphere ensemble")
    p_plus = (math.cos(b.theta - _effective_angle(label)) + 1.0) / 2.0
    return p_plus, 1.0 - p_plus


def measure_single(
    rng: np.random.Generator, label: EnsembleLabel, b: Axis
) -> tuple:
    """Sample one outcome along b; subsequent measurements see the b ensemble."""
    p_plus, _ = single_measure_prob(label, b)
    sign = 1 if rng.random() < p_plus else -1
    return outcome_from_sign(sign), hemisphere(b, sign)


def epr_trial(
    rng: np.random.Generator, a: Axis, b: Axis, first_particle: int = 1
) -> tuple:
    """One two-particle trial: particle `first_particle` along a, the other along b.

    The first outcome is the hemisphere of the measured particle's vector
    (boundary J.a = 0 counts as +); the partner collapses to the opposite
    hemisphere ensemble along a and is measured along b by the
    single-particle law.
    """
    if first_particle not in (1, 2):
        raise ValueError("first_particle must be 1 or 2")
    pair = sample_pair(rng)
    measured = pair.j1 if first_particle == 1 else pair.j2
    s1 = 1 if float(measured.direction @ a.unit_vector) >= 0.0 else -1
    p_plus, _ = single_measure_prob(hemisphere(a, -s1), b)
    s2 = 1 if rng.random() < p_plus else -1
    r_first = outcome_from_sign(s1)
    r_second = outcome_from_sign(s2)
    if first_particle == 1:
        return r_first, r_second
    return r_second, r_first


def sample_trial_counts(
    rng: np.random.Generator, a: Axis, b: Axis, n: int, first_particle: int = 1
) -> PairCounts:
    """Vectorized batch of epr_trial outcomes tallied into PairCounts."""
    if first_particle not in (1, 2):
        raise ValueError("first_particle must be 1 or 2")
    j = _sample_unit_vectors(rng, n)
    s1 = np.where(j @ a.unit_vector >= 0.0, 1, -1)
    # partner ensemble is hemisphere(a, -s1): P(+) = (1 - s1 * cos d) / 2
    d = wrap_delta(a, b)
    p_plus = (1.0 - s1 * math.cos(d)) / 2.0
    s2 = np.where(rng.random(n) < p_plus, 1, -1)
    if first_particle == 1:
        return counts_from_signs(s1, s2)
    return counts_from_signs(s2, s1)


def model1_expectation_analytic(a: Axis, b: Axis) -> float:
    """E(a, b) = -cos(theta_b - theta_a) / 4, the singlet result."""
    return -V_MAX**2 * math.cos(wrap_delta(a, b))


def pointwise_rule_expectation(a: Axis, b: Axis) -> float:
    """Outcome average if a fixed pointwise rule R_b = sign(J.b)/2 held.

    Conditioning the deterministic hemisphere rule on the ensemble along a
    gives an expectation linear in the angle difference, distinguishable
    from the ensemble law's cos(d)/2 average; used by the
    no-elementary-probability check.
    """
    d = abs(wrap_delta(a, b))
    return V_MAX * (1.0 - 2.0 * d / math.pi)


def sample_pointwise_rule_counts(
    rng: np.random.Generator, a: Axis, b: Axis, n: int
) -> PairCounts:
    """Single-particle trials under ensemble +a with the pointwise sign rule.

    The first sign is the a-hemisphere membership (always +, by
    construction), the second is sign(J.b); only the second is physical.
    """
    j = _sample_unit_vectors(rng, n)
    j = np.where((j @ a.unit_vector >= 0.0)[:, None], j, -j)  # restrict to +a
    s_b = np.where(j @ b.unit_vector >= 0.0, 1, -1)
    return counts_from_signs(np.ones(n, dtype=int), s_b)
