"""Synthetic oracles: fGn/fBm, the binomial cascade, and iid counts."""

import numpy as np
import pytest

import mfts
from mfts import CascadeSpec


class TestFgn:
    def test_deterministic_in_seed(self):
        a = mfts.fgn(512, 0.7, seed=3)
        b = mfts.fgn(512, 0.7, seed=3)
        c = mfts.fgn(512, 0.7, seed=4)
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, c.values)

    def test_h_half_is_white_noise(self):
        s = mfts.fgn(4096, 0.5, seed=0)
        rho = mfts.acf(s, 5)
        assert np.all(np.abs(rho[1:]) < 3.0 / np.sqrt(len(s)))

    def test_unit_variance(self):
        s = mfts.fgn(8192, 0.8, seed=2)
        assert mfts.summarize(s).variance == pytest.approx(1.0, abs=0.15)

    def test_sample_autocovariance_tracks_theory(self):
        # gamma(1) = (2**(2H) - 2) / 2 for unit-variance fGn
        hurst = 0.8
        gamma1 = 0.5 * (2.0 ** (2 * hurst) - 2.0)
        acc = []
        for seed in range(10):
            s = mfts.fgn(4096, hurst, seed=seed)
            acc.append(mfts.acf(s, 1)[1])
        assert np.mean(acc) == pytest.approx(gamma1, abs=0.05)

    def test_validation(self):
        with pytest.raises(ValueError, match="n must be"):
            mfts.fgn(1, 0.5, seed=0)
        for bad in (0.0, 1.0, -0.3, 1.7):
            with pytest.raises(ValueError, match="hurst"):
                mfts.fgn(64, bad, seed=0)

    def test_metadata(self):
        s = mfts.fgn(64, 0.6, seed=9)
        assert s.source == "synthetic"
        assert s.seed == 9
        assert "hurst=0.6" in s.name


class TestFbm:
    def test_is_cumsum_of_fgn(self):
        incr = mfts.fgn(1024, 0.7, seed=5)
        path = mfts.fbm(1024, 0.7, seed=5)
        assert np.allclose(path.values, np.cumsum(incr.values), rtol=0, atol=0)

    def test_variance_scaling_exponent(self):
        # E[B(t)^2] ~ t^(2H); ensemble regression should recover 2H roughly
        hurst = 0.7
        times = np.array([16, 32, 64, 128, 256, 512])
        second_moment = np.zeros(times.size)
        for seed in range(50):
            path = mfts.fbm(1024, hurst, seed=seed).values
            second_moment += path[times - 1] ** 2
        slope = np.polyfit(np.log2(times), np.log2(second_moment / 50), 1)[0]
        assert 1.2 <= slope <= 1.6


class TestCascade:
    def test_mass_conservation_and_positivity(self):
        s = mfts.binomial_cascade(CascadeSpec(levels=10, p=0.7))
        assert len(s) == 1024
        assert s.values.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(s.values > 0)

    def test_deterministic_is_reproducible(self):
        a = mfts.binomial_cascade(CascadeSpec(levels=9, p=0.6))
        b = mfts.binomial_cascade(CascadeSpec(levels=9, p=0.6))
        assert np.array_equal(a.values, b.values)

    def test_randomized_reproducible_and_seed_sensitive(self):
        a = mfts.binomial_cascade(CascadeSpec(levels=9, p=0.6, randomize=True, seed=1))
        b = mfts.binomial_cascade(CascadeSpec(levels=9, p=0.6, randomize=True, seed=1))
        c = mfts.binomial_cascade(CascadeSpec(levels=9, p=0.6, randomize=True, seed=2))
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, c.values)

    def test_randomization_permutes_the_same_value_multiset(self):
        det = mfts.binomial_cascade(CascadeSpec(levels=10, p=0.7))
        rnd = mfts.binomial_cascade(CascadeSpec(levels=10, p=0.7, randomize=True, seed=3))
        assert np.allclose(np.sort(det.values), np.sort(rnd.values), rtol=1e-12)

    def test_box_counting_recovers_tau_exactly(self):
        # pair-summing m times gives the level-(levels-m) cascade, so the
        # partition sum is exactly 2**(-depth * tau(q)) at every coarsening
        levels = 12
        p = 0.7
        mass = mfts.binomial_cascade(CascadeSpec(levels=levels, p=p)).values
        for q in (-2.0, -1.0, 0.5, 2.0, 3.0):
            depths = []
            log2_sums = []
            coarse = mass
            for depth in range(levels, 3, -1):
                depths.append(depth)
                log2_sums.append(np.log2((coarse**q).sum()))
                coarse = coarse.reshape(-1, 2).sum(axis=1)
            slope = np.polyfit(depths, log2_sums, 1)[0]
            assert slope == pytest.approx(-mfts.cascade_tau(q, p), abs=1e-9)

    def test_spec_validation(self):
        with pytest.raises(ValueError, match="levels"):
            CascadeSpec(levels=7, p=0.7)
        with pytest.raises(ValueError, match="levels"):
            CascadeSpec(levels=25, p=0.7)
        with pytest.raises(ValueError, match="p must"):
            CascadeSpec(levels=10, p=1.0)
        with pytest.raises(ValueError, match="seed"):
            CascadeSpec(levels=10, p=0.7, randomize=True)


class TestCascadeExponents:
    def test_tau_anchors(self):
        assert mfts.cascade_tau(0.0, 0.7) == pytest.approx(-1.0, abs=1e-15)
        assert mfts.cascade_tau(1.0, 0.7) == pytest.approx(0.0, abs=1e-15)
        # independent arithmetic for one point
        assert mfts.cascade_tau(2.0, 0.7) == pytest.approx(
            -np.log2(0.7**2 + 0.3**2), abs=1e-15
        )

    def test_tau_scalar_and_array(self):
        q = np.array([-1.0, 0.0, 2.0])
        arr = mfts.cascade_tau(q, 0.6)
        assert arr.shape == (3,)
        assert isinstance(mfts.cascade_tau(2.0, 0.6), float)
        assert arr[2] == mfts.cascade_tau(2.0, 0.6)

    def test_tau_concave(self):
        q = np.linspace(-6, 6, 61)
        tau = mfts.cascade_tau(q, 0.75)
        assert np.all(np.diff(tau, 2) < 1e-12)

    def test_leader_zeta_zero_at_origin(self):
        assert mfts.cascade_leader_zeta(0.0, 0.7) == pytest.approx(0.0, abs=1e-15)

    def test_leader_zeta_relation_to_tau(self):
        q = np.array([-3.0, -1.0, 1.0, 4.0])
        p = 0.8
        expected = 1.0 + mfts.cascade_tau(q, p) + q * np.log2(0.8)
        assert np.allclose(mfts.cascade_leader_zeta(q, p), expected, atol=1e-15)

    def test_p_validation(self):
        with pytest.raises(ValueError):
            mfts.cascade_tau(1.0, 0.0)
        with pytest.raises(ValueError):
            mfts.cascade_leader_zeta(1.0, 1.5)


class TestBinomialCounts:
    def test_integer_values_in_range(self):
        s = mfts.binomial_counts(2048, 100, 0.4, seed=0)
        assert np.array_equal(s.values, np.round(s.values))
        assert s.values.min() >= 0
        assert s.values.max() <= 100

    def test_moments(self):
        s = mfts.binomial_counts(65536, 2000, 0.4, seed=1)
        stats = mfts.summarize(s)
        assert stats.mean == pytest.approx(800.0, rel=0.01)
        assert stats.variance == pytest.approx(2000 * 0.4 * 0.6, rel=0.05)

    def test_deterministic(self):
        a = mfts.binomial_counts(128, 10, 0.5, seed=2)
        b = mfts.binomial_counts(128, 10, 0.5, seed=2)
        assert np.array_equal(a.values, b.values)

    def test_validation(self):
        with pytest.raises(ValueError):
            mfts.binomial_counts(1, 10, 0.5, seed=0)
        with pytest.raises(ValueError):
            mfts.binomial_counts(64, 0, 0.5, seed=0)
        with pytest.raises(ValueError):
            mfts.binomial_counts(64, 10, 1.5, seed=0)
