"""Tests for the HMC chain and the Best-Fisher baseline."""

import math

import numpy as np
import pytest
from scipy.stats import chi2

from vmhmc.diagnostics import ress
from vmhmc.samplers import (
    ChainConfig,
    best_fisher_sample,
    hmc_step,
    laplace_from_uniform,
    make_stream,
    run_best_fisher_chain,
    run_hmc_chain,
    sample_laplace_momentum,
)
from vmhmc.special import VonMisesParams, mean_resultant_length, wrap_angle_array

PI = math.pi

# frozen from the extended-precision Bessel series oracle (I1/I0)
MRL_4 = 0.8635226110245506


class TestLaplaceMomentum:
    def test_median_maps_to_zero(self):
        assert laplace_from_uniform(0.5) == 0.0

    def test_inverse_cdf_value(self):
        assert laplace_from_uniform(0.75) == pytest.approx(math.log(2.0), rel=1e-15)
        assert laplace_from_uniform(0.25) == pytest.approx(-math.log(2.0), rel=1e-15)

    def test_extreme_uniform_stays_finite(self):
        assert math.isfinite(laplace_from_uniform(0.0))
        assert math.isfinite(laplace_from_uniform(1.0 - 2**-53))

    def test_mean_absolute_value(self):
        rng = make_stream(123)
        draws = np.array([sample_laplace_momentum(rng) for _ in range(1_000_000)])
        assert np.abs(draws).mean() == pytest.approx(1.0, abs=0.01)
        assert draws.mean() == pytest.approx(0.0, abs=0.01)


class TestHmcStep:
    def test_injected_momentum_reproduces_trajectory(self):
        params = VonMisesParams(kappa=1.0)
        x1 = hmc_step(0.0, None, params, PI / 2, momentum=1.0)
        assert x1 == pytest.approx(PI / 2, rel=1e-15)

    def test_zero_travel_time_is_identity(self):
        params = VonMisesParams(kappa=4.0)
        assert hmc_step(0.7, None, params, 0.0, momentum=0.3) == pytest.approx(0.7)

    def test_location_equivariance(self):
        nu = 1.1
        shifted = VonMisesParams(kappa=4.0, nu=nu)
        centered = VonMisesParams(kappa=4.0)
        for x, p in ((0.3, 0.9), (-1.0, -0.4), (2.0, 1.7)):
            lhs = hmc_step(x, None, shifted, 2.32, momentum=p)
            rhs = hmc_step(x - nu, None, centered, 2.32, momentum=p)
            assert lhs == pytest.approx(float(wrap_angle_array(np.array([rhs + nu]))[0]), abs=1e-12)


class TestRunHmcChain:
    def test_deterministic_given_seed(self):
        config = ChainConfig(params=VonMisesParams(kappa=4.0), T=2.32, n=5000, seed=9)
        a = run_hmc_chain(config)
        b = run_hmc_chain(config)
        assert np.array_equal(a.samples, b.samples)
        assert a.acceptance_rate == 1.0

    def test_samples_wrapped_and_sized(self):
        config = ChainConfig(params=VonMisesParams(kappa=0.5, nu=2.0 - PI), T=1.0, n=3000, seed=1)
        out = run_hmc_chain(config)
        assert out.samples.shape == (3000,)
        assert np.all(out.samples >= -PI)
        assert np.all(out.samples < PI)
        assert out.wall_seconds >= 0.0

    def test_moments_match_bessel_ratio(self):
        # T from the worked example; target from the series oracle
        config = ChainConfig(params=VonMisesParams(kappa=4.0), T=2.32, n=100_000, seed=31)
        out = run_hmc_chain(config)
        cos_mean = np.cos(out.samples).mean()
        se = np.cos(out.samples).std(ddof=1) / math.sqrt(out.samples.size)
        se *= math.sqrt(ress(np.cos(out.samples)).tau)
        assert abs(cos_mean - MRL_4) <= 3.0 * se
        sin_mean = np.sin(out.samples).mean()
        se_sin = np.sin(out.samples).std(ddof=1) / math.sqrt(out.samples.size)
        se_sin *= math.sqrt(ress(np.sin(out.samples)).tau)
        assert abs(sin_mean) <= 3.0 * se_sin

    def test_antithetic_lag_one(self):
        config = ChainConfig(params=VonMisesParams(kappa=4.0), T=2.32, n=100_000, seed=32)
        out = run_hmc_chain(config)
        acf = ress(np.sin(out.samples)).acf
        assert acf[1] < 0.0

    def test_location_shift_covariance_exact(self):
        nu = 0.8
        base = ChainConfig(params=VonMisesParams(kappa=2.0), T=1.7, n=4000, seed=77)
        shifted = ChainConfig(params=VonMisesParams(kappa=2.0, nu=nu), T=1.7, n=4000, seed=77)
        a = run_hmc_chain(base).samples
        b = run_hmc_chain(shifted).samples
        assert np.array_equal(b, wrap_angle_array(a + nu))

    def test_seed_isolation(self):
        config_a = ChainConfig(params=VonMisesParams(kappa=4.0), T=2.32, n=20_000, seed=1)
        config_b = ChainConfig(params=VonMisesParams(kappa=4.0), T=2.32, n=20_000, seed=2)
        sa = np.sin(run_hmc_chain(config_a).samples)
        sb = np.sin(run_hmc_chain(config_b).samples)
        r = np.corrcoef(sa, sb)[0, 1]
        assert abs(r) < 0.05

    def test_rejects_bad_config(self):
        with pytest.raises(ValueError):
            ChainConfig(params=VonMisesParams(kappa=1.0), T=-1.0, n=10)
        with pytest.raises(ValueError):
            ChainConfig(params=VonMisesParams(kappa=1.0), T=1.0, n=0)


class TestBestFisher:
    def test_single_draw_in_range(self):
        rng = make_stream(5)
        x, proposals = best_fisher_sample(rng, VonMisesParams(kappa=4.0))
        assert -PI <= x < PI
        assert proposals >= 1

    def test_acceptance_plateau_at_high_kappa(self):
        out = run_best_fisher_chain(
            ChainConfig(params=VonMisesParams(kappa=20.0), T=0.0, n=100_000, seed=3)
        )
        assert 0.60 <= out.acceptance_rate <= 0.72

    def test_acceptance_decreases_with_kappa(self):
        low = run_best_fisher_chain(
            ChainConfig(params=VonMisesParams(kappa=0.1), T=0.0, n=50_000, seed=4)
        )
        high = run_best_fisher_chain(
            ChainConfig(params=VonMisesParams(kappa=20.0), T=0.0, n=50_000, seed=4)
        )
        assert high.acceptance_rate < low.acceptance_rate

    def test_moments_match_bessel_ratio(self):
        out = run_best_fisher_chain(
            ChainConfig(params=VonMisesParams(kappa=4.0), T=0.0, n=100_000, seed=6)
        )
        cos_vals = np.cos(out.samples)
        se = cos_vals.std(ddof=1) / math.sqrt(cos_vals.size)
        assert abs(cos_vals.mean() - MRL_4) <= 3.0 * se

    def test_iid_ress_is_one(self):
        out = run_best_fisher_chain(
            ChainConfig(params=VonMisesParams(kappa=4.0), T=0.0, n=100_000, seed=7)
        )
        assert ress(np.sin(out.samples)).ress == pytest.approx(1.0, abs=0.05)

    def test_deterministic(self):
        config = ChainConfig(params=VonMisesParams(kappa=2.0, nu=0.5), T=0.0, n=2000, seed=8)
        assert np.array_equal(
            run_best_fisher_chain(config).samples, run_best_fisher_chain(config).samples
        )

    def test_two_sample_homogeneity_with_hmc(self):
        # both target the same density; 50-bin chi-square homogeneity test
        n = 100_000
        bf = run_best_fisher_chain(
            ChainConfig(params=VonMisesParams(kappa=4.0), T=0.0, n=n, seed=40)
        ).samples
        hmc = run_hmc_chain(
            ChainConfig(params=VonMisesParams(kappa=4.0), T=2.32, n=n, seed=41)
        ).samples
        edges = np.linspace(-PI, PI, 51)
        c1, _ = np.histogram(bf, edges)
        c2, _ = np.histogram(hmc, edges)
        keep = (c1 + c2) >= 10
        c1, c2 = c1[keep], c2[keep]
        total = c1 + c2
        stat = ((c1 - c2) ** 2 / total).sum()  # equal-size two-sample Pearson
        dof = keep.sum() - 1
        assert stat < chi2.ppf(0.999, dof)
