"""Pre-analysis characterization: ACF, PACF, and the periodogram slope.

Slowly decaying autocorrelation and a power-law periodogram are the classic
symptoms of long memory; these estimators give a quick look before any
multiscale machinery runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TimeSeries

__all__ = [
    "SpectrumFit",
    "acf",
    "pacf",
    "periodogram",
    "power_spectrum_slope",
]


def _values(series) -> np.ndarray:
    return series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=np.float64)


def acf(series: TimeSeries, max_lag: int) -> np.ndarray:
    """Autocorrelation at lags 0..max_lag, biased estimator (denominator n).

    The biased form keeps the correlation sequence positive semidefinite,
    which the Levinson recursion in `pacf` relies on.
    """
    x = _values(series)
    n = x.size
    if not 1 <= max_lag < n:
        raise ValueError(f"max_lag must be in [1, {n - 1}], got {max_lag}")
    x = x - x.mean()
    if not np.any(x):
        raise ValueError("series has zero variance, autocorrelation undefined")
    m = 1
    while m < 2 * n:
        m *= 2
    spec = np.fft.rfft(x, m)
    acov = np.fft.irfft(spec * np.conj(spec))[: max_lag + 1] / n
    rho = acov / acov[0]
    rho[0] = 1.0
    return rho


def pacf(series: TimeSeries, max_lag: int) -> np.ndarray:
    """Partial autocorrelation at lags 0..max_lag via Levinson-Durbin.

    Entry 0 is 1 by convention and entry 1 equals acf(1) exactly. A
    numerically singular step (prediction error collapsing to zero)
    raises instead of being silently regularized.
    """
    rho = acf(series, max_lag)
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    phi = np.zeros(max_lag + 1)
    prev_err = 1.0
    for k in range(1, max_lag + 1):
        if prev_err <= 1e-14:
            raise ValueError(f"singular autocovariance system at lag {k}")
        reflect = (rho[k] - phi[1:k] @ rho[k - 1 : 0 : -1]) / prev_err
        phi[1:k] = phi[1:k] - reflect * phi[k - 1 : 0 : -1].copy()
        phi[k] = reflect
        out[k] = reflect
        prev_err *= 1.0 - reflect * reflect
    return out


def periodogram(series: TimeSeries) -> tuple:
    """All-bin periodogram |FFT(x - mean)|^2 / n and its frequency grid.

    Summing the power over every bin returns the energy of the centered
    series exactly (Parseval).
    """
    x = _values(series)
    x = x - x.mean()
    n = x.size
    power = np.abs(np.fft.fft(x)) ** 2 / n
    freqs = np.fft.fftfreq(n)
    return freqs, power


@dataclass(frozen=True)
class SpectrumFit:
    """Log-log periodogram fit over the positive-frequency band."""

    frequencies: np.ndarray
    power: np.ndarray
    slope: float
    stderr: float
    intercept: float
    r_squared: float
    band: tuple  # (f_lo, f_hi) actually used

    @property
    def low_quality(self) -> bool:
        """Heuristic: under half the log-power variance explained."""
        return self.r_squared < 0.5

    def fitted_power(self) -> np.ndarray:
        return np.exp(self.intercept + self.slope * np.log(self.frequencies))


def power_spectrum_slope(series: TimeSeries, band: tuple | None = None) -> SpectrumFit:
    """OLS slope of log periodogram power against log frequency.

    ``band`` is a pair of frequency fractions (cycles per sample, in
    (0, 0.5]); by default the whole positive range is used except the two
    lowest bins, where leakage from the mean and any trend dominates.
    """
    x = _values(series)
    n = x.size
    if n < 64:
        raise ValueError(f"need at least 64 samples for a spectrum fit, got {n}")
    freqs, power = periodogram(series)
    half = n // 2
    pos_f = freqs[1 : half + 1].copy()
    pos_p = power[1 : half + 1].copy()
    if n % 2 == 0:
        pos_f[-1] = 0.5  # fftfreq reports the Nyquist bin as -0.5
    if band is None:
        mask = np.arange(pos_f.size) >= 2
    else:
        lo, hi = float(band[0]), float(band[1])
        if not 0.0 < lo < hi <= 0.5:
            raise ValueError(f"band must satisfy 0 < lo < hi <= 0.5, got {band}")
        mask = (pos_f >= lo) & (pos_f <= hi)
    mask &= pos_p > 0.0
    if mask.sum() < 8:
        raise ValueError(f"only {int(mask.sum())} usable bins in the fit band, need >= 8")
    lf = np.log(pos_f[mask])
    lp = np.log(pos_p[mask])
    dof = lf.size - 2
    lf_c = lf - lf.mean()
    sxx = lf_c @ lf_c
    slope = lf_c @ lp / sxx
    intercept = lp.mean() - slope * lf.mean()
    resid = lp - intercept - slope * lf
    sse = resid @ resid
    sst = (lp - lp.mean()) @ (lp - lp.mean())
    stderr = float(np.sqrt(sse / dof / sxx)) if dof > 0 else float("nan")
    r2 = float(1.0 - sse / sst) if sst > 0 else 0.0
    return SpectrumFit(
        frequencies=pos_f[mask],
        power=pos_p[mask],
        slope=float(slope),
        stderr=stderr,
        intercept=float(intercept),
        r_squared=r2,
        band=(float(pos_f[mask][0]), float(pos_f[mask][-1])),
    )
