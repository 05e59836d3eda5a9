import math

import numpy as np
import pytest

from bellfoundry.geometry import Axis, BELL_BOUND, MINUS, PLUS, empirical_expectation
from bellfoundry.lhv import (
    ConstantResponseModel,
    DeterministicSignModel,
    SubsetSpec,
    check_bell_theorem,
    chsh_value,
    joint_distribution_chsh,
    measure_std_error,
    model_expectation,
    quantum_wigner_violation,
    sample_model_counts,
    sign_model_expectation_analytic,
    stochastic_defect,
    vertex_distributions,
    wigner_inequality_check,
    wigner_measure,
)
from bellfoundry.oracles import (
    half_circle_overlap_quadrature,
    sign_model_expectation_quadrature,
)
from bellfoundry.quantum import singlet_expectation, singlet_joint_probability
from bellfoundry.rng import substream

OPTIMAL = [Axis(0.0), Axis(math.pi / 2), Axis(math.pi / 4), Axis(3 * math.pi / 4)]


class TestDeterministicSignModel:
    def test_responses_are_zero_one(self):
        model = DeterministicSignModel()
        lam = substream(31).uniform(0, 2 * math.pi, 1000)
        for sign in (1, -1):
            p = model.response1(sign, Axis(0.7), lam)
            assert np.isin(p, (0.0, 1.0)).all()

    def test_same_axis_anticorrelated_every_trial(self):
        model = DeterministicSignModel()
        a = Axis(1.1)
        counts = sample_model_counts(model, a, a, 100_000, substream(32))
        assert counts.n_pp == 0 and counts.n_mm == 0
        assert empirical_expectation(counts).value == -0.25

    def test_expectation_matches_analytic(self):
        # oracle: direct angular quadrature of the sign rule
        model = DeterministicSignModel()
        rng = substream(33)
        for delta in (math.pi / 2, math.pi / 4):
            a, b = Axis(0.0), Axis(delta)
            est = model_expectation(model, a, b, 1_000_000, rng)
            analytic = sign_model_expectation_analytic(a, b)
            assert analytic == pytest.approx(
                sign_model_expectation_quadrature(delta), abs=1e-5
            )
            assert abs(est.value - analytic) < 5 * est.std_error

    def test_analytic_endpoints(self):
        assert sign_model_expectation_analytic(Axis(0.0), Axis(0.0)) == -0.25
        assert sign_model_expectation_analytic(Axis(0.0), Axis(math.pi)) == pytest.approx(0.25)
        assert sign_model_expectation_analytic(Axis(0.0), Axis(math.pi / 2)) == pytest.approx(0.0)


class TestChshValue:
    def test_saturated_bound(self):
        assert chsh_value(-0.25, -0.25, -0.25, -0.25, 1) == pytest.approx(0.5)

    def test_singlet_violates(self):
        es = [
            singlet_expectation(OPTIMAL[i], OPTIMAL[j])
            for i, j in ((0, 2), (0, 3), (1, 2), (1, 3))
        ]
        value = chsh_value(*es, sign_choice=1)
        assert value == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
        assert value > BELL_BOUND

    def test_sign_model_respects(self):
        es = [
            sign_model_expectation_analytic(OPTIMAL[i], OPTIMAL[j])
            for i, j in ((0, 2), (0, 3), (1, 2), (1, 3))
        ]
        assert chsh_value(*es, sign_choice=1) == pytest.approx(0.5, abs=1e-12)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            chsh_value(0.3, 0.0, 0.0, 0.0, 1)


class TestBellTheorem:
    def test_sign_model_on_grid(self):
        model = DeterministicSignModel()
        grid = [Axis(k * math.pi / 4) for k in range(8)]
        report = check_bell_theorem(model, grid, 100_000, substream(34))
        assert report.holds

    def test_degenerate_grid(self):
        model = DeterministicSignModel()
        grid = [Axis(0.0), Axis(0.0)]
        report = check_bell_theorem(model, grid, 50_000, substream(35))
        assert report.worst_value <= 0.5 + report.tolerance

    def test_constant_model_all_zero(self):
        report = check_bell_theorem(
            ConstantResponseModel(0.5), [Axis(0.0), Axis(1.0)], 50_000, substream(36)
        )
        assert report.worst_value < 10 * report.tolerance


class TestJointDistribution:
    def test_uniform_distribution(self):
        assert joint_distribution_chsh(np.full((2, 2, 2, 2), 1 / 16)) == pytest.approx(0.0)

    def test_point_mass(self):
        f = np.zeros((2, 2, 2, 2))
        f[0, 0, 1, 1] = 1.0
        assert joint_distribution_chsh(f) <= 0.5 + 1e-12

    def test_all_vertices_exact(self):
        for _, f in vertex_distributions():
            assert joint_distribution_chsh(f) <= 0.5 + 1e-15

    def test_random_dirichlet_bounded(self):
        rng = substream(37)
        draws = rng.dirichlet(np.ones(16), size=10_000).reshape(-1, 2, 2, 2, 2)
        worst = max(joint_distribution_chsh(f) for f in draws)
        assert worst <= 0.5 + 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            joint_distribution_chsh(np.full((2, 2, 2, 2), 1 / 8))


class TestStochasticDefect:
    def test_deterministic_model_zero(self):
        model = DeterministicSignModel()
        assert stochastic_defect(model, Axis(0.3), 100_000, substream(38)) == 0.0

    def test_constant_half_model(self):
        value = stochastic_defect(ConstantResponseModel(0.5), Axis(0.3), 10_000, substream(39))
        assert value == pytest.approx(0.5)

    def test_empirical_anticorrelation_implies_small_defect(self):
        # a model whose same-axis counts show exact anticorrelation also has
        # a defect statistically indistinguishable from zero
        model = DeterministicSignModel()
        a = Axis(2.2)
        counts = sample_model_counts(model, a, a, 100_000, substream(40))
        assert counts.n_pp + counts.n_mm == 0
        defect = stochastic_defect(model, a, 100_000, substream(41))
        assert defect < 5 * measure_std_error(0.5, 100_000)


class TestWignerMeasures:
    def test_single_clause_half(self):
        model = DeterministicSignModel()
        assert wigner_measure(model, SubsetSpec([(Axis(0.7), 1)])) == pytest.approx(0.5)

    def test_two_clause_overlap(self):
        # oracle: angular quadrature of the half-circle overlap
        model = DeterministicSignModel()
        a, b = Axis(0.0), Axis(math.pi / 2)
        analytic = wigner_measure(model, SubsetSpec([(a, 1), (b, 1)]))
        assert analytic == pytest.approx(0.25)
        assert analytic == pytest.approx(
            half_circle_overlap_quadrature(a.theta, b.theta), abs=1e-5
        )
        mc = wigner_measure(model, SubsetSpec([(a, 1), (b, 1)]), "mc", 1_000_000, substream(42))
        assert abs(mc - analytic) < 5 * measure_std_error(analytic, 1_000_000)

    def test_additivity(self):
        model = DeterministicSignModel()
        rng = substream(43)
        for _ in range(25):
            a, ap = (Axis(t) for t in rng.uniform(0, 2 * math.pi, size=2))
            total = wigner_measure(model, SubsetSpec([(a, 1)]))
            split = wigner_measure(model, SubsetSpec([(a, 1), (ap, 1)])) + wigner_measure(
                model, SubsetSpec([(a, 1), (ap, -1)])
            )
            assert split == pytest.approx(total, abs=1e-12)

    def test_monotone_under_clause_addition(self):
        model = DeterministicSignModel()
        rng = substream(44)
        for _ in range(25):
            a, b, c = (Axis(t) for t in rng.uniform(0, 2 * math.pi, size=3))
            two = wigner_measure(model, SubsetSpec([(a, 1), (b, 1)]))
            three = wigner_measure(model, SubsetSpec([(a, 1), (b, 1), (c, 1)]))
            assert 0.0 <= three <= two <= 1.0

    def test_stochastic_model_rejected(self):
        with pytest.raises(ValueError, match="measure undefined"):
            wigner_measure(
                ConstantResponseModel(0.5),
                SubsetSpec([(Axis(0.0), 1)]),
                "mc",
                1000,
                substream(45),
            )

    def test_analytic_mode_requires_builtin(self):
        with pytest.raises(ValueError):
            wigner_measure(ConstantResponseModel(0.5), SubsetSpec([(Axis(0.0), 1)]))


class TestWignerInequality:
    def test_specific_triple_holds(self):
        model = DeterministicSignModel()
        lhs, rhs, holds = wigner_inequality_check(
            model, Axis(math.pi / 4), Axis(math.pi / 2), Axis(0.0)
        )
        assert holds

    def test_equal_axes_trivial(self):
        model = DeterministicSignModel()
        a = Axis(1.3)
        lhs, rhs, holds = wigner_inequality_check(model, a, a, Axis(0.4))
        assert holds
        assert lhs >= rhs

    def test_random_triples_analytic_and_mc(self):
        model = DeterministicSignModel()
        rng = substream(46)
        n = 200_000
        for _ in range(30):
            a, ap, b = (Axis(t) for t in rng.uniform(0, 2 * math.pi, size=3))
            lhs, rhs, holds = wigner_inequality_check(model, a, ap, b)
            assert holds or lhs >= rhs - 1e-12
            tol = 5 * math.sqrt(3) * measure_std_error(0.5, n)
            lhs_mc, rhs_mc, _ = wigner_inequality_check(
                model, a, ap, b, mode="mc", n=n, rng=substream(47)
            )
            assert lhs_mc >= rhs_mc - tol


class TestQuantumWignerViolation:
    def test_violated_in_ordered_region(self):
        lhs, rhs, violated = quantum_wigner_violation(
            Axis(math.pi / 4), Axis(math.pi / 2), Axis(0.0)
        )
        assert lhs == pytest.approx(0.5, abs=1e-12)
        assert rhs == pytest.approx(math.cos(math.pi / 4), abs=1e-12)
        assert violated

    def test_equal_primed_axes_not_violated(self):
        a = Axis(0.8)
        lhs, rhs, violated = quantum_wigner_violation(a, a, Axis(0.1))
        assert lhs == pytest.approx(rhs, abs=1e-12)
        assert not violated

    def test_all_zero_not_violated(self):
        lhs, rhs, violated = quantum_wigner_violation(Axis(0.0), Axis(0.0), Axis(0.0))
        assert lhs == 1.0 and rhs == 1.0 and not violated

    def test_terms_match_singlet_conditionals(self):
        # the lhs/rhs terms are scaled singlet joint probabilities
        rng = substream(48)
        for _ in range(100):
            a, ap, b = (Axis(t) for t in rng.uniform(0, 2 * math.pi, size=3))
            lhs, rhs, _ = quantum_wigner_violation(a, ap, b)
            lhs_q = 2 * singlet_joint_probability(PLUS, ap, MINUS, b)
            rhs_q = 2 * singlet_joint_probability(PLUS, a, MINUS, b) - 2 * singlet_joint_probability(
                PLUS, a, PLUS, ap
            )
            assert lhs == pytest.approx(lhs_q, abs=1e-12)
            assert rhs == pytest.approx(rhs_q, abs=1e-12)
