"""Closed-form singlet predictions and operator-algebra CHSH bounds.

This module is the ground-truth oracle the hidden-variable models are
checked against.  Spin operators are realized in the x-z plane (matching
the coplanar axis convention): S(theta) = (cos(theta) sz + sin(theta) sx)/2.
The representation choice is arbitrary but fixed; every exported quantity
depends only on angle differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Axis, Outcome, PairCounts, TSIRELSON_BOUND, V_MAX, wrap_delta
from .linalg import jacobi_eigenvalues, spectral_norm
from .rng import substream

_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class HermitianOperator:
    """A 2x2 or 4x4 Hermitian matrix."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("entries must be a square matrix")
        if entries.shape[0] not in (2, 4):
            raise ValueError("dimension must be 2 or 4")
        residual = np.abs(entries - entries.conj().T).max()
        if residual > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian (residual {residual:.3e})")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def singlet_joint_probability(a1: Outcome, a: Axis, b2: Outcome, b: Axis) -> float:
    """Joint singlet probability for outcomes (a1, b2) along axes (a, b).

    Opposite signs occur with probability cos(d/2)**2 / 2 and same signs
    with sin(d/2)**2 / 2, d = theta_b - theta_a.
    """
    half = wrap_delta(a, b) / 2.0
    if a1.sign != b2.sign:
        return 0.5 * math.cos(half) ** 2
    return 0.5 * math.sin(half) ** 2


def singlet_expectation(a: Axis, b: Axis) -> float:
    """E(a, b) = -cos(theta_b - theta_a) / 4 for the singlet state."""
    return -V_MAX**2 * math.cos(wrap_delta(a, b))


def singlet_joint_table(a: Axis, b: Axis) -> np.ndarray:
    """2x2 table of singlet joint probabilities; index 0 = +1/2, 1 = -1/2."""
    half = wrap_delta(a, b) / 2.0
    same = 0.5 * math.sin(half) ** 2
    opposite = 0.5 * math.cos(half) ** 2
    return np.array([[same, opposite], [opposite, same]])


def sample_singlet_counts(rng: np.random.Generator, a: Axis, b: Axis, n: int) -> PairCounts:
    """Draw n outcome pairs directly from the singlet joint law."""
    table = singlet_joint_table(a, b).ravel()
    n_pp, n_pm, n_mp, n_mm = rng.multinomial(n, table)
    return PairCounts(int(n_pp), int(n_pm), int(n_mp), int(n_mm))


def spin_operator(a: Axis) -> HermitianOperator:
    """Spin projection operator along a coplanar axis; eigenvalues +-1/2."""
    matrix = 0.5 * (math.cos(a.theta) * _SIGMA_Z + math.sin(a.theta) * _SIGMA_X)
    return HermitianOperator(matrix)


def _chsh_matrix(a: Axis, ap: Axis, b: Axis, bp: Axis, sign: int) -> np.ndarray:
    if sign not in (1, -1):
        raise ValueError("sign_choice must be +1 or -1")
    s1a = spin_operator(a).entries
    s1ap = spin_operator(ap).entries
    s2b = spin_operator(b).entries
    s2bp = spin_operator(bp).entries
    return (
        np.kron(s1a, s2b)
        - sign * np.kron(s1a, s2bp)
        + np.kron(s1ap, s2b)
        + sign * np.kron(s1ap, s2bp)
    )


def chsh_operator(a: Axis, ap: Axis, b: Axis, bp: Axis, sign_choice: int = 1) -> HermitianOperator:
    """The 4x4 CHSH combination of tensor-product spin operators.

    ``sign_choice`` selects which of the two sign patterns is built:
    S1a S2b -+ S1a S2b' + S1a' S2b +- S1a' S2b' with the upper pattern
    for +1.
    """
    return HermitianOperator(_chsh_matrix(a, ap, b, bp, sign_choice))


def operator_norm(h: HermitianOperator) -> float:
    """Spectral norm (max absolute eigenvalue) via cyclic Jacobi."""
    return float(spectral_norm(h.entries))


def operator_eigenvalues(h: HermitianOperator) -> np.ndarray:
    return jacobi_eigenvalues(h.entries)


def verify_operator_identity(a: Axis, ap: Axis, b: Axis, bp: Axis) -> float:
    """Residual of the squared-CHSH commutator identity, both sign choices.

    (CHSH)^2 equals 4 V_MAX^4 I plus/minus the tensor product of the two
    single-particle commutators; the identity is exact, so the returned
    entrywise-max residual should sit at rounding level.
    """
    s1a = spin_operator(a).entries
    s1ap = spin_operator(ap).entries
    s2b = spin_operator(b).entries
    s2bp = spin_operator(bp).entries
    comm1 = s1a @ s1ap - s1ap @ s1a
    comm2 = s2b @ s2bp - s2bp @ s2b
    identity = np.eye(4, dtype=complex)
    worst = 0.0
    for sign in (1, -1):
        chsh = _chsh_matrix(a, ap, b, bp, sign)
        expected = 4.0 * V_MAX**4 * identity + sign * np.kron(comm1, comm2)
        residual = float(np.abs(chsh @ chsh - expected).max())
        worst = max(worst, residual)
    return worst


def chsh_norm_grid(resolution: int, a_theta: float = 0.0) -> tuple:
    """Max CHSH operator norm over a coplanar (a', b, b') grid with a fixed.

    Returns (best_axes, best_norm).  The grid steps are 2*pi/resolution, so
    the exact optimum lies on the grid whenever resolution is a multiple
    of 8.  Matrices are built for the whole grid and diagonalized with the
    batched Jacobi sweep; the result never exceeds the Tsirelson bound.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    thetas = np.arange(resolution) * (2.0 * math.pi / resolution)
    cos_t = np.cos(thetas)
    sin_t = np.sin(thetas)
    # real x-z representation: S(theta) = (cos sz + sin sx) / 2
    ops = 0.5 * (
        cos_t[:, None, None] * _SIGMA_Z.real + sin_t[:, None, None] * _SIGMA_X.real
    )
    s1a = 0.5 * (math.cos(a_theta) * _SIGMA_Z.real + math.sin(a_theta) * _SIGMA_X.real)

    def kron_batch(x, y):
        return np.einsum("...ij,...kl->...ikjl", x, y).reshape(*x.shape[:-2], 4, 4)

    m = resolution
    best_norm = -1.0
    best = None
    t_ab = kron_batch(np.broadcast_to(s1a, (m, 2, 2)), ops)  # (b, 4, 4)
    t_apb = kron_batch(
        np.broadcast_to(ops[:, None], (m, m, 2, 2)),
        np.broadcast_to(ops[None, :], (m, m, 2, 2)),
    )  # (a', b, 4, 4)
    for sign in (1, -1):
        # batch over (a', b) for each b' slice to bound memory
        for ibp in range(m):
            s2bp = ops[ibp]
            t_abp = np.kron(s1a, s2bp)
            t_apbp = kron_batch(ops, np.broadcast_to(s2bp, (m, 2, 2)))  # (a', 4, 4)
            batch = (
                t_ab[None, :]
                - sign * t_abp[None, None]
                + t_apb
                + sign * t_apbp[:, None]
            )
            norms = spectral_norm(batch)
            idx = np.unravel_index(int(np.argmax(norms)), norms.shape)
            if norms[idx] > best_norm:
                best_norm = float(norms[idx])
                best = (
                    Axis(a_theta),
                    Axis(thetas[idx[0]]),
                    Axis(thetas[idx[1]]),
                    Axis(thetas[ibp]),
                    sign,
                )
    return best, best_norm


def identity_residual_scan(n_quadruples: int, seed: int) -> float:
    """Worst commutator-identity residual over random axis quadruples."""
    rng = substream(seed, stream=9)
    worst = 0.0
    for _ in range(n_quadruples):
        axes = [Axis(t) for t in rng.uniform(0.0, 2.0 * math.pi, size=4)]
        worst = max(worst, verify_operator_identity(*axes))
    return worst


def tsirelson_margin(norm: float) -> float:
    """Signed margin of a CHSH operator norm below the quantum bound."""
    return TSIRELSON_BOUND - norm
