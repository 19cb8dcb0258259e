"""Detrended fluctuation analysis: windows, fluctuation functions, exponents."""

import numpy as np
import pytest

import mfts
from mfts import MfdfaConfig, QGrid


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError, match="order"):
            MfdfaConfig(order=0)
        with pytest.raises(ValueError, match="at least 3"):
            MfdfaConfig(sizes=(16, 32))
        with pytest.raises(ValueError, match="order \\+ 2"):
            MfdfaConfig(order=3, sizes=(4, 8, 16))
        with pytest.raises(ValueError, match="increasing"):
            MfdfaConfig(sizes=(16, 16, 32))


class TestDefaultWindowSizes:
    def test_bounds_and_monotonicity(self):
        sizes = mfts.default_window_sizes(4096)
        assert sizes[0] == 16
        assert sizes[-1] == 1024
        assert np.all(np.diff(sizes) > 0)
        assert sizes.size <= 16

    def test_cap_at_quarter_length(self):
        for n in (64, 100, 1000, 12345):
            assert mfts.default_window_sizes(n)[-1] <= n // 4

    def test_too_short(self):
        with pytest.raises(ValueError, match="too short"):
            mfts.default_window_sizes(63)


class TestProfile:
    def test_definition(self, fgn_series):
        profile = mfts.mfdfa_profile(fgn_series)
        x = fgn_series.values
        assert np.allclose(profile, np.cumsum(x - x.mean()), atol=0)
        assert profile.size == x.size

    def test_constant_input_zero_profile(self):
        from mfts import TimeSeries

        profile = mfts.mfdfa_profile(TimeSeries(values=np.full(64, 3.0)))
        assert np.allclose(profile, 0.0, atol=1e-12)

    def test_alternation_telescopes(self):
        profile = mfts.mfdfa_profile(np.tile([1.0, -1.0], 32))
        assert profile[-1] == pytest.approx(0.0, abs=1e-12)
        assert np.abs(profile).max() <= 1.0 + 1e-12


class TestFluctuations:
    def test_polynomial_profile_annihilated(self):
        # an order-m detrend removes an order-m polynomial profile entirely
        t = np.arange(2048) / 2048.0
        profile = 1.0 + 2.0 * t - 3.0 * t**2 + 0.5 * t**3
        config = MfdfaConfig(order=3, sizes=(16, 32, 64, 128, 256, 512))
        fluct = mfts.mfdfa_fluctuations(profile, config)
        f = 2.0**fluct.log2_f
        assert f.max() < 1e-8

    def test_both_end_segmentation_counts(self, fgn_series):
        profile = mfts.mfdfa_profile(fgn_series)
        config = MfdfaConfig(sizes=(100, 200, 400))
        fluct = mfts.mfdfa_fluctuations(profile, config)
        n = profile.size
        assert np.array_equal(fluct.segment_counts, [2 * (n // 100), 2 * (n // 200), 2 * (n // 400)])

    def test_window_cap_enforced(self, fgn_series):
        profile = mfts.mfdfa_profile(fgn_series)
        with pytest.raises(ValueError, match="n/4"):
            mfts.mfdfa_fluctuations(profile, MfdfaConfig(sizes=(16, 64, 2048)))

    def test_fluctuations_positive_and_growing(self, fgn_series):
        profile = mfts.mfdfa_profile(fgn_series)
        fluct = mfts.mfdfa_fluctuations(profile)
        i2 = fluct.qgrid.index_of(2.0)
        f2 = 2.0 ** fluct.log2_f[i2]
        assert np.all(f2 > 0)
        assert np.all(np.diff(f2) > 0)


class TestExponents:
    def test_needs_five_sizes(self, fgn_series):
        profile = mfts.mfdfa_profile(fgn_series)
        fluct = mfts.mfdfa_fluctuations(profile, MfdfaConfig(sizes=(16, 32, 64, 128)))
        with pytest.raises(ValueError, match="5 window sizes"):
            mfts.mfdfa_exponents(fluct)

    def test_exponent_identities(self, fgn_series):
        result = mfts.mfdfa_analysis(fgn_series)
        q = result.qgrid.values
        assert np.allclose(result.tau, q * result.h_values - 1.0, atol=1e-12)
        assert np.allclose(result.zeta, result.tau + 1.0, atol=0)
        assert result.zeta[result.qgrid.index_of(0.0)] == 0.0
        assert result.h_at(2.0) == result.h_values[result.qgrid.index_of(2.0)]
        assert result.c1 == result.cumulant_poly[0]

    def test_white_noise_h2(self):
        series = mfts.binomial_counts(2**15, 1000, 0.5, seed=4)
        result = mfts.mfdfa_analysis(series)
        assert result.h_at(2.0) == pytest.approx(0.5, abs=0.05)

    def test_fgn_h2_tracks_hurst(self):
        series = mfts.fgn(2**14, 0.8, seed=6)
        result = mfts.mfdfa_analysis(series)
        assert result.h_at(2.0) == pytest.approx(0.8, abs=0.07)

    def test_monofractal_curve_is_flat(self):
        series = mfts.fgn(2**14, 0.6, seed=2)
        result = mfts.mfdfa_analysis(series)
        window = np.abs(result.qgrid.values) <= 5.0
        h = result.h_values[window]
        assert h.max() - h.min() <= 0.08

    def test_cascade_curve_decreasing(self):
        series = mfts.binomial_cascade(mfts.CascadeSpec(levels=13, p=0.7))
        result = mfts.mfdfa_analysis(series)
        gap = result.h_at(2.0) - result.h_at(-2.0)
        assert gap < 0
        assert abs(gap) >= 0.2
        assert np.all(np.diff(result.h_values) < 1e-9)

    def test_q_zero_branch_continuous(self):
        series = mfts.binomial_cascade(mfts.CascadeSpec(levels=13, p=0.7))
        result = mfts.mfdfa_analysis(series)
        grid = result.qgrid
        neighbors = 0.5 * (result.h_values[grid.index_of(0.0) - 1]
                           + result.h_values[grid.index_of(0.0) + 1])
        assert result.h_values[grid.index_of(0.0)] == pytest.approx(neighbors, abs=0.05)

    def test_analysis_equals_manual_chain(self, fgn_series):
        direct = mfts.mfdfa_analysis(fgn_series)
        manual = mfts.mfdfa_exponents(
            mfts.mfdfa_fluctuations(mfts.mfdfa_profile(fgn_series))
        )
        assert np.array_equal(direct.h_values, manual.h_values)
        assert np.array_equal(direct.cumulant_poly, manual.cumulant_poly)
