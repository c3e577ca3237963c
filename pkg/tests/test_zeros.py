"""Zero-table ingestion, bump profile, scalar products, and the counting
statistic at desk scale (real 100k table where available)."""

import numpy as np
import pytest

from selberglab.specfun import DomainError
from selberglab.zeros import (
    CoverageError,
    StatisticConfig,
    ZeroTableError,
    bkr_statistic,
    empirical_field,
    exp_functional_moment,
    finite_t_mean_offset,
    load_zeros,
    make_bump,
    predicted_cov,
    scalar_product,
    smoothed_indicator,
    truncated_scalar_product,
)

from oracles import kappa_oracle


class TestLoadZeros:
    def test_three_zero_file(self, tiny_table):
        assert tiny_table.count == 3
        assert tiny_table.count_in(0.0, 22.0) == 2
        assert tiny_table.heights[0] == pytest.approx(14.134725)

    def test_comments_ignored(self, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text("# header\n14.134725\n# middle\n21.022040\n")
        assert load_zeros(p).count == 2

    def test_empty_rejected(self, tmp_path):
        p = tmp_path / "e.txt"
        p.write_text("")
        with pytest.raises(ZeroTableError):
            load_zeros(p)

    def test_non_monotone_rejected(self, tmp_path):
        p = tmp_path / "m.txt"
        p.write_text("14.1\n13.9\n")
        with pytest.raises(ZeroTableError):
            load_zeros(p)

    def test_parse_error_names_line(self, tmp_path):
        p = tmp_path / "b.txt"
        p.write_text("14.1\nnot-a-number\n")
        with pytest.raises(ZeroTableError, match=":2"):
            load_zeros(p)

    def test_genuine_gate(self, tiny_table, tmp_path):
        tiny_table.validate_genuine()
        p = tmp_path / "s.txt"
        p.write_text("10.0\n20.0\n30.0\n")
        with pytest.raises(ZeroTableError):
            load_zeros(p).validate_genuine()


class TestBump:
    def test_normalization_constant(self, bump):
        assert bump.normalization == pytest.approx(4.5046, abs=2e-4)

    def test_unit_mass(self, bump):
        from scipy.integrate import quad

        total, _ = quad(lambda x: float(bump.density(np.array([x]))[0]), -0.5, 0.5,
                        limit=200)
        assert abs(total - 1.0) < 1e-10

    def test_kappa_against_2d_oracle(self, bump):
        assert bump.kappa == pytest.approx(kappa_oracle(bump.normalization), abs=1e-6)

    def test_kappa_stable_across_refinements(self, bump):
        finer = make_bump(quadrature_level=2)
        assert abs(bump.kappa - finer.kappa) < 1e-6

    def test_cdf_limits(self, bump):
        assert bump.cdf(-0.6) == 0.0
        assert bump.cdf(0.6) == 1.0
        assert bump.cdf(0.0) == pytest.approx(0.5, abs=1e-10)


class TestSmoothedIndicator:
    def test_plateau(self, bump):
        u, eps = 0.5, 0.05
        x = np.linspace(eps / 2, u - eps / 2, 20)
        assert np.allclose(smoothed_indicator(x, u, eps, 1, bump), 1.0, atol=1e-12)

    def test_outside_support(self, bump):
        u, eps = 0.5, 0.05
        assert smoothed_indicator(u + eps / 2 + 1e-12, u, eps, 1, bump) == 0.0
        assert smoothed_indicator(-eps / 2 - 1e-12, u, eps, 1, bump) == 0.0

    def test_variant2_plateau(self, bump):
        u, eps = 0.5, 0.1
        x = np.array([-1 / eps + eps / 2 + 0.01, 0.0, u - eps / 2 - 0.01])
        assert np.allclose(smoothed_indicator(x, u, eps, 2, bump), 1.0, atol=1e-12)

    def test_derivative_is_bump_difference(self, bump):
        u, eps = 0.5, 0.1
        xs = np.linspace(-0.1, 0.7, 200)
        h = 1e-6
        num = (
            smoothed_indicator(xs + h, u, eps, 1, bump)
            - smoothed_indicator(xs - h, u, eps, 1, bump)
        ) / (2 * h)
        ref = (bump.density(xs / eps) - bump.density((xs - u) / eps)) / eps
        assert np.max(np.abs(num - ref)) < 1e-5

    def test_requires_eps_below_u(self, bump):
        with pytest.raises(DomainError):
            smoothed_indicator(0.1, 0.05, 0.1, 1, bump)


class TestScalarProduct:
    def test_symmetry(self, bump):
        f, g = (0.5, 0.05, 1), (0.3, 0.05, 1)
        a = scalar_product(f, g, bump)
        b = scalar_product(g, f, bump)
        assert a == pytest.approx(b, abs=1e-10)

    def test_diagonal_against_asymptotic_formula(self, bump):
        # <f, f> = -(1/pi^2)(log eps - kappa - log u) + O(eps)
        u, eps = 0.5, 0.05
        val = scalar_product((u, eps, 1), (u, eps, 1), bump)
        pred = -(1 / np.pi**2) * (np.log(eps) - bump.kappa - np.log(u))
        assert abs(val - pred) < 2 * eps * abs(pred)

    def test_offdiagonal_against_asymptotic_formula(self, bump):
        u, v, eps = 0.3, 0.7, 0.05
        val = scalar_product((u, eps, 1), (v, eps, 1), bump)
        pred = -(1 / (2 * np.pi**2)) * (
            np.log(eps) - bump.kappa + np.log(abs(u - v)) - np.log(u) - np.log(v)
        )
        assert abs(val - pred) < 2 * eps * abs(pred) + 1e-3

    def test_variant2_diagonal(self, bump):
        u, eps = 0.5, 0.1
        val = scalar_product((u, eps, 2), (u, eps, 2), bump)
        pred = -(1 / (2 * np.pi**2)) * (4 * np.log(eps) - 2 * bump.kappa)
        assert abs(val - pred) / abs(pred) < 0.02

    @pytest.mark.parametrize("eps", [0.1, 0.05])
    def test_fourier_matches_log_kernel(self, bump, eps):
        for u, v in [(0.5, 0.5), (0.3, 0.7), (0.25, 0.4)]:
            a = scalar_product((u, eps, 1), (v, eps, 1), bump, "log-kernel")
            b = scalar_product((u, eps, 1), (v, eps, 1), bump, "fourier", cutoff=1e3 / eps)
            assert abs(a - b) / abs(a) < 0.01

    def test_fourier_requires_cutoff(self, bump):
        with pytest.raises(DomainError):
            scalar_product((0.5, 0.05, 1), (0.5, 0.05, 1), bump, "fourier")


class TestPredictedCov:
    def test_diagonal_formula(self, bump):
        u, eps, mu = 0.5, 0.05, 0.5
        val = predicted_cov(u, u, eps, mu, bump.kappa, 1)
        assert val == pytest.approx(-1.0 * (np.log(eps) - bump.kappa - np.log(u)), rel=1e-14)

    def test_symmetry(self, bump):
        a = predicted_cov(0.3, 0.7, 0.05, 0.4, bump.kappa, 1)
        b = predicted_cov(0.7, 0.3, 0.05, 0.4, bump.kappa, 1)
        assert a == b

    def test_variant2_diagonal_u_free(self, bump):
        a = predicted_cov(0.3, 0.3, 0.05, 0.4, bump.kappa, 2)
        b = predicted_cov(0.8, 0.8, 0.05, 0.4, bump.kappa, 2)
        assert a == b

    def test_out_of_regime_flag(self, bump):
        with pytest.raises(DomainError):
            predicted_cov(0.5, 0.52, 0.05, 0.4, bump.kappa, 1)


class TestStatisticSynthetic:
    def _table(self, tmp_path):
        p = tmp_path / "synthetic.txt"
        p.write_text("10.0\n20.0\n30.0\n")
        return load_zeros(p)

    def test_pure_density_term_when_no_zero_in_support(self, bump, tmp_path):
        table = self._table(tmp_path)
        cfg = StatisticConfig(mu=0.5, t0=12.0, epsilon=0.05,
                              u_grid=np.array([0.5]), omega_samples=1, seed=0)
        val = bkr_statistic(table, cfg, omega=1.5, u=0.5, bump=bump)
        expected = -cfg.prefactor * cfg.log_t / (2 * np.pi * cfg.lambda_t) * 0.5
        assert val == pytest.approx(expected, rel=1e-12)

    def test_single_plateau_zero_counts_once(self, bump, tmp_path):
        table = self._table(tmp_path)
        cfg = StatisticConfig(mu=0.5, t0=12.0, epsilon=0.05,
                              u_grid=np.array([0.5]), omega_samples=1, seed=0)
        omega = 19.8 / 12.0
        val = bkr_statistic(table, cfg, omega, 0.5, bump)
        expected = cfg.prefactor * (1.0 - cfg.log_t / (2 * np.pi * cfg.lambda_t) * 0.5)
        assert val == pytest.approx(expected, rel=1e-12)

    def test_coverage_error(self, bump, tmp_path):
        table = self._table(tmp_path)
        cfg = StatisticConfig(mu=0.5, t0=25.0, epsilon=0.05,
                              u_grid=np.array([0.5]), omega_samples=1, seed=0)
        with pytest.raises(CoverageError):
            bkr_statistic(table, cfg, 1.9, 0.5, bump)


class TestStatisticRealTable:
    def _cfg(self, **kw):
        base = dict(mu=0.3, t0=3.0e4, epsilon=0.05,
                    u_grid=np.linspace(0.1, 0.9, 16), omega_samples=4000, seed=3)
        base.update(kw)
        return StatisticConfig(**base)

    def test_mean_matches_finite_height_offset(self, zero_table, bump):
        # the omega-mean sits at the predictable density-mismatch offset
        cfg = self._cfg()
        mean, _, stderr = empirical_field(zero_table, cfg, bump)
        i = 8
        off = finite_t_mean_offset(zero_table, cfg, float(np.asarray(cfg.u_grid)[i]))
        assert abs(mean[i] - off) < 4 * stderr[i] + 0.02

    def test_covariance_psd_within_noise(self, zero_table, bump):
        cfg = self._cfg()
        _, cov, _ = empirical_field(zero_table, cfg, bump)
        w = np.linalg.eigvalsh(0.5 * (cov + cov.T))
        assert w.min() > -1e-8 * w.max()

    def test_empirical_variance_between_regimes(self, zero_table, bump):
        # finite height: above the truncated prediction, below the full kernel
        cfg = self._cfg(u_grid=np.array([0.5]), omega_samples=10_000)
        _, cov, _ = empirical_field(zero_table, cfg, bump)
        var = float(cov[0, 0])
        lo = 2 * np.pi**2 * cfg.mu * truncated_scalar_product(
            (0.5, 0.05, 1), (0.5, 0.05, 1), bump, cutoff=cfg.log_t / cfg.lambda_t
        )
        hi = 2 * np.pi**2 * cfg.mu * scalar_product((0.5, 0.05, 1), (0.5, 0.05, 1), bump)
        assert lo < var < hi

    def test_covariance_regression_slope(self, zero_table, bump):
        cfg = self._cfg(u_grid=np.linspace(0.15, 0.85, 8), omega_samples=10_000)
        us = np.asarray(cfg.u_grid)
        _, cov, _ = empirical_field(zero_table, cfg, bump)
        xs, ys = [], []
        for i in range(len(us)):
            for j in range(i + 1, len(us)):
                if abs(us[i] - us[j]) > 4 * cfg.epsilon_t:
                    xs.append(predicted_cov(us[i], us[j], cfg.epsilon_t, cfg.mu,
                                            bump.kappa, 1))
                    ys.append(cov[i, j])
        A = np.vstack([xs, np.ones(len(xs))]).T
        slope = np.linalg.lstsq(A, np.array(ys), rcond=None)[0][0]
        assert abs(slope - 1.0) <= 0.3

    def test_count_consistency(self, zero_table, bump):
        cfg = self._cfg()
        lam, eps, u = cfg.lambda_t, cfg.epsilon_t, 0.5
        rng = np.random.default_rng(0)
        for om in 1.0 + rng.random(50):
            c = om * cfg.t0
            x = lam * (zero_table.slice(c - 1.0, c + 1.0) - c)
            ssum = float(np.sum(smoothed_indicator(
                x[(x > -eps) & (x < u + eps)], u, eps, 1, bump)))
            raw = zero_table.count_in(c, c + u / lam)
            ramp = zero_table.count_in(c - eps / (2 * lam), c + eps / (2 * lam))
            ramp += zero_table.count_in(c + (u - eps / 2) / lam, c + (u + eps / 2) / lam)
            assert abs(ssum - raw) <= ramp + 1e-9

    def test_fujii_variance_growth(self, zero_table):
        # unsmoothed indicator: variance increases with height like log(log t / lambda)
        u = 0.5
        variances = []
        for t0 in (1.0e4, 3.0e4):
            lam = np.log(t0) ** 0.5
            rng = np.random.default_rng(5)
            n = 30_000
            om = 1.0 + (np.arange(n) + rng.random(n)) / n
            counts = np.array(
                [zero_table.count_in(o * t0, o * t0 + u / lam) for o in om], dtype=float
            )
            stat = counts - np.log(t0) / (2 * np.pi * lam) * u
            variances.append(stat.var())
        assert variances[1] > variances[0]

    def test_determinism(self, zero_table, bump):
        cfg = self._cfg(omega_samples=500)
        a = empirical_field(zero_table, cfg, bump)
        b = empirical_field(zero_table, cfg, bump)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


class TestExpFunctional:
    def test_weak_coupling_limit(self, zero_table, bump):
        # prefactor ~ sqrt(mu) kills the statistic; the moment approaches the
        # plain u-integral over the grid
        eps = 0.005
        cfg = StatisticConfig(mu=1e-6, t0=3.0e4, epsilon=eps,
                              u_grid=np.linspace(2 * eps, 1 - 2 * eps, 64),
                              omega_samples=200, seed=1)
        est, _ = exp_functional_moment(zero_table, cfg, bump, n=1, rescaled=True)
        assert est == pytest.approx(1.0, abs=0.03)

    def test_jensen_ordering(self, zero_table, bump):
        cfg = StatisticConfig(mu=0.3, t0=3.0e4, epsilon=0.05,
                              u_grid=np.linspace(0.1, 0.9, 64),
                              omega_samples=4000, seed=2)
        e1, s1 = exp_functional_moment(zero_table, cfg, bump, n=1)
        e2, s2 = exp_functional_moment(zero_table, cfg, bump, n=2)
        assert e2 >= e1**2 - 3 * (s2 + 2 * e1 * s1)

    def test_moment_order_guard(self, zero_table, bump):
        cfg = StatisticConfig(mu=0.5, t0=3.0e4, epsilon=0.05,
                              u_grid=np.linspace(0.1, 0.9, 8),
                              omega_samples=10, seed=0)
        with pytest.raises(DomainError):
            exp_functional_moment(zero_table, cfg, bump, n=4)
