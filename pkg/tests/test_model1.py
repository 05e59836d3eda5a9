import math

import numpy as np
import pytest

from bellfoundry.geometry import Axis, empirical_expectation
from bellfoundry.model1 import (
    AngularMomentum,
    PairConfiguration,
    epr_trial,
    hemisphere,
    measure_single,
    model1_expectation_analytic,
    pointwise_rule_expectation,
    sample_pair,
    sample_pointwise_rule_counts,
    sample_trial_counts,
    single_measure_prob,
    uniform_label,
)
from bellfoundry.oracles import hemi_average_quadrature, hemisphere_conditional_fraction
from bellfoundry.quantum import singlet_expectation
from bellfoundry.rng import substream


class TestConfiguration:
    def test_angular_momentum_must_be_unit(self):
        with pytest.raises(ValueError):
            AngularMomentum(np.array([0.0, 0.0, 2.0]))

    def test_pair_must_conserve(self):
        j = AngularMomentum(np.array([0.0, 0.0, 1.0]))
        with pytest.raises(ValueError):
            PairConfiguration(j, j)

    def test_sample_pair_conserves_and_is_unit(self):
        rng = substream(50)
        for _ in range(20):
            pair = sample_pair(rng)
            assert np.allclose(pair.j1.direction + pair.j2.direction, 0.0)
            assert np.linalg.norm(pair.j1.direction) == pytest.approx(1.0)

    def test_sample_pair_uniform_mean(self):
        rng = substream(51)
        dirs = np.array([sample_pair(rng).j1.direction for _ in range(20_000)])
        assert np.abs(dirs.mean(axis=0)).max() < 5.0 / math.sqrt(3 * 20_000)


class TestEnsembleLaw:
    def test_prob_normalized_and_bounded(self):
        rng = substream(52)
        for _ in range(100):
            t1, t2 = rng.uniform(0, 2 * math.pi, size=2)
            p_plus, p_minus = single_measure_prob(hemisphere(Axis(t1), 1), Axis(t2))
            assert p_plus + p_minus == pytest.approx(1.0)
            assert 0.0 <= p_plus <= 1.0

    def test_same_axis_certain(self):
        a = Axis(1.2)
        assert single_measure_prob(hemisphere(a, 1), a) == (1.0, 0.0)
        p_plus, _ = single_measure_prob(hemisphere(a, -1), a)
        assert p_plus == pytest.approx(0.0)

    def test_outcome_average_matches_field_average(self):
        # oracle: quadrature of the projection field over the hemisphere;
        # the integrated field equals cos(offset), twice the outcome average
        for offset in (0.0, math.pi / 4, math.pi / 2, 2.3):
            p_plus, p_minus = single_measure_prob(hemisphere(Axis(0.0), 1), Axis(offset))
            average = 0.5 * p_plus - 0.5 * p_minus
            assert 2.0 * average == pytest.approx(hemi_average_quadrature(offset), abs=1e-10)

    def test_uniform_label_rejected(self):
        with pytest.raises(ValueError):
            single_measure_prob(uniform_label(), Axis(0.0))

    def test_measure_single_updates_ensemble(self):
        rng = substream(53)
        outcome, label = measure_single(rng, hemisphere(Axis(0.0), 1), Axis(0.7))
        assert label.kind == "hemisphere"
        assert label.axis.theta == pytest.approx(0.7)
        assert label.sign == outcome.sign


class TestEprTrials:
    def test_same_axis_perfectly_anticorrelated(self):
        a = Axis(0.9)
        counts = sample_trial_counts(substream(54), a, a, 50_000)
        assert counts.n_pp == 0 and counts.n_mm == 0

    def test_expectation_matches_singlet(self):
        for delta in (math.pi / 4, math.pi / 2, 1.9):
            n = 400_000
            counts = sample_trial_counts(substream(55), Axis(0.0), Axis(delta), n)
            est = empirical_expectation(counts)
            analytic = model1_expectation_analytic(Axis(0.0), Axis(delta))
            assert analytic == singlet_expectation(Axis(0.0), Axis(delta))
            assert abs(est.value - analytic) < 5 * est.std_error

    def test_order_independence(self):
        # measuring particle 2 first gives the same joint law
        a, b = Axis(0.0), Axis(math.pi / 3)
        n = 400_000
        first = empirical_expectation(sample_trial_counts(substream(56), a, b, n, 1))
        second = empirical_expectation(sample_trial_counts(substream(57), a, b, n, 2))
        tol = 5 * math.sqrt(first.std_error**2 + second.std_error**2)
        assert abs(first.value - second.value) < tol

    def test_scalar_trial_agrees_with_batch(self):
        a, b = Axis(0.0), Axis(math.pi / 4)
        rng = substream(58)
        n = 20_000
        signs = np.array([[o1.sign, o2.sign] for o1, o2 in (epr_trial(rng, a, b) for _ in range(n))])
        value = (signs[:, 0] * signs[:, 1]).mean() / 4.0
        est = empirical_expectation(sample_trial_counts(substream(59), a, b, n))
        tol = 5 * math.sqrt(2) * est.std_error
        assert abs(value - est.value) < tol

    def test_epr_trial_validates_particle(self):
        with pytest.raises(ValueError):
            epr_trial(substream(60), Axis(0.0), Axis(0.0), first_particle=3)


class TestPointwiseRuleCheck:
    def test_rule_disagrees_with_ensemble_law(self):
        # the deterministic pointwise rule predicts a piecewise-linear
        # average; the ensemble law predicts cos(d)/2 -- they split at pi/4
        a, b = Axis(0.0), Axis(math.pi / 4)
        linear = pointwise_rule_expectation(a, b)
        ensemble = math.cos(math.pi / 4) / 2.0
        assert abs(linear - ensemble) > 0.09

    def test_sampled_rule_matches_linear_form(self):
        # oracle: brute-force conditional hemisphere fraction on the sphere
        a, b = Axis(0.0), Axis(math.pi / 4)
        n = 400_000
        counts = sample_pointwise_rule_counts(substream(61), a, b, n)
        frac_plus = counts.n_pp / n
        linear = pointwise_rule_expectation(a, b)  # = (2 frac_plus - 1) / 2
        se = math.sqrt(frac_plus * (1 - frac_plus) / n)
        assert abs(frac_plus - (2 * linear + 1) / 2) < 5 * se
        oracle = hemisphere_conditional_fraction(400_000, substream(62))
        assert abs(frac_plus - oracle) < 10 * se

    def test_endpoints(self):
        assert pointwise_rule_expectation(Axis(0.0), Axis(0.0)) == 0.5
        assert pointwise_rule_expectation(Axis(0.0), Axis(math.pi)) == pytest.approx(-0.5)
        assert pointwise_rule_expectation(Axis(0.0), Axis(math.pi / 2)) == pytest.approx(0.0)
