"""Closed Selberg products against hand values and the integration oracle."""

import numpy as np
import pytest

from selberglab.selberg import (
    ChaosParams,
    IntegralSpec,
    MomentDivergenceError,
    mass_moment_neg,
    mass_moment_pos,
    multiscaling_exponent,
    selberg_closed,
    selberg_oracle,
    selberg_quadrature_2d,
)
from selberglab.specfun import DomainError


class TestChaosParams:
    def test_tau(self):
        assert ChaosParams(0.5).tau == 4.0

    def test_validation(self):
        with pytest.raises(DomainError):
            ChaosParams(2.5)
        with pytest.raises(DomainError):
            ChaosParams(0.5, lambda1=-0.3)


class TestClosedForms:
    def test_first_moment_is_one(self):
        for mu in (0.2, 0.5, 1.0, 1.5):
            assert selberg_closed(1, ChaosParams(mu)) == pytest.approx(1.0, abs=1e-14)

    def test_second_moment(self):
        assert selberg_closed(2, ChaosParams(0.5)) == pytest.approx(8.0 / 3.0, rel=1e-13)
        assert mass_moment_pos(2, ChaosParams(0.3)) == pytest.approx(
            2.0 / (0.7 * 1.7), rel=1e-13
        )

    def test_small_mu_limit_with_weights(self):
        # mu -> 0 gives x^n with x = B(2, 1) = 1/2
        p = ChaosParams(1e-10, lambda1=1.0, lambda2=0.0)
        assert selberg_closed(3, p) == pytest.approx(0.125, rel=1e-8)

    def test_plain_equals_selberg_at_zero_weights(self):
        for mu in (0.2, 0.4, 0.6):
            p = ChaosParams(mu)
            for n in (1, 2, 3):
                if n >= p.tau:
                    continue
                assert mass_moment_pos(n, p, "plain") == pytest.approx(
                    selberg_closed(n, p), rel=1e-12
                )

    def test_self_weighted_first_moment(self):
        # n=1: Gamma(1-1/tau) Gamma(1+2/tau) Gamma(1) / (Gamma(1-1/tau) Gamma(3/tau + 2))
        from scipy.special import gamma

        tau = 4.0
        expected = gamma(1 + 2 / tau) / gamma(2 + 2 / tau)
        assert mass_moment_pos(1, ChaosParams(0.5), "self-weighted") == pytest.approx(
            expected, rel=1e-12
        )

    def test_negative_first_moment(self):
        from scipy.special import gamma

        expected = gamma(2.75) * gamma(0.75) / gamma(1.25) ** 2
        assert mass_moment_neg(1, ChaosParams(0.5)) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(2.399, abs=5e-4)

    def test_negative_moment_small_mu(self):
        assert mass_moment_neg(1, ChaosParams(1e-9)) == pytest.approx(1.0, rel=1e-6)

    def test_divergence_guard(self):
        with pytest.raises(MomentDivergenceError):
            selberg_closed(4, ChaosParams(0.5))
        with pytest.raises(MomentDivergenceError):
            mass_moment_neg(3, ChaosParams(0.5), "self-weighted")  # (tau+1)/2 = 2.5


class TestMultiscalingExponent:
    def test_values(self):
        p = ChaosParams(0.5)
        assert multiscaling_exponent(1.0, p) == 1.0
        assert multiscaling_exponent(0.0, p) == 0.0
        assert multiscaling_exponent(0.0, p, "self-weighted") == 0.0
        assert multiscaling_exponent(2.0, p) == pytest.approx(1.5)

    def test_concavity_and_pinning(self):
        for mu in (0.2, 0.7, 1.3):
            p = ChaosParams(mu)
            q = np.linspace(-2, 3, 41)
            z = np.array([multiscaling_exponent(t, p) for t in q])
            assert np.all(np.diff(z, 2) < 1e-12)  # concave
            assert multiscaling_exponent(0.0, p) == 0.0
            assert multiscaling_exponent(1.0, p) == 1.0


class TestOracle:
    def test_unit_box_dimension_one(self):
        p = ChaosParams(0.3)
        spec = IntegralSpec(blocks=(((0.0, 1.0), 1),))
        est, se = selberg_oracle(spec, p, budget=40_000, seed=1)
        assert est == pytest.approx(1.0, abs=1e-12)
        assert se < 1e-12

    def test_product_of_lengths_at_zero_kernel(self):
        p = ChaosParams(0.3)
        spec = IntegralSpec(blocks=(((0.0, 0.5), 1), ((0.5, 1.0), 1)))
        est, _ = selberg_oracle(spec, p, budget=40_000, seed=1)
        assert est == pytest.approx(0.25, abs=1e-12)

    def test_two_point_matches_closed_form(self):
        p = ChaosParams(0.3)
        spec = IntegralSpec(blocks=(((0.0, 1.0), 2),), kernel_exponent=-p.mu)
        est, se = selberg_oracle(spec, p, budget=2_000_000, seed=3)
        target = 2.0 / (0.7 * 1.7)
        assert abs(est - target) < 3 * se
        assert abs(est - target) / target < 0.01

    @pytest.mark.parametrize("mu,n", [(0.2, 2), (0.3, 3), (0.5, 2)])
    def test_closed_vs_oracle_grid(self, mu, n):
        p = ChaosParams(mu)
        if n >= p.tau:
            pytest.skip("moment diverges")
        spec = IntegralSpec(blocks=(((0.0, 1.0), n),), kernel_exponent=-mu)
        est, se = selberg_oracle(spec, p, budget=2_000_000, seed=11)
        target = selberg_closed(n, p)
        assert abs(est - target) < 3 * se
        assert abs(est - target) / target < 0.01

    def test_block_relabeling_invariance(self):
        p = ChaosParams(0.3)
        s1 = IntegralSpec(blocks=(((0.0, 0.4), 1), ((0.6, 1.0), 1)), kernel_exponent=-p.mu)
        s2 = IntegralSpec(blocks=(((0.6, 1.0), 1), ((0.0, 0.4), 1)), kernel_exponent=-p.mu)
        e1, _ = selberg_oracle(s1, p, budget=500_000, seed=5)
        e2, _ = selberg_oracle(s2, p, budget=500_000, seed=5)
        assert e1 == pytest.approx(e2, rel=2e-3)

    def test_determinism(self):
        p = ChaosParams(0.3)
        spec = IntegralSpec(blocks=(((0.0, 1.0), 2),), kernel_exponent=-p.mu)
        a = selberg_oracle(spec, p, budget=100_000, seed=9)
        b = selberg_oracle(spec, p, budget=100_000, seed=9)
        assert a == b

    def test_guards(self):
        with pytest.raises(DomainError):
            IntegralSpec(blocks=(((0.0, 0.6), 1), ((0.5, 1.0), 1)))  # overlap
        with pytest.raises(DomainError):
            IntegralSpec(blocks=(((0.0, 1.0), 5),))  # dimension cap
        p = ChaosParams(1.5)
        spec = IntegralSpec(blocks=(((0.0, 1.0), 3),), kernel_exponent=-1.5)
        with pytest.raises(DomainError):
            selberg_oracle(spec, p, budget=1000, seed=0)  # non-integrable clustering


class TestQuadrature2D:
    @pytest.mark.parametrize("mu", [0.2, 0.3, 0.5])
    def test_matches_closed_form(self, mu):
        p = ChaosParams(mu)
        assert abs(selberg_quadrature_2d(p) - selberg_closed(2, p)) < 1e-8
