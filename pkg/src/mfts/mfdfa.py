"""Multifractal detrended fluctuation analysis, the non-wavelet cross-check.

The profile (cumulative sum of the centered series) is cut into
non-overlapping windows taken from both ends, each window is detrended by a
polynomial fit, and the q-th order fluctuation function F(s, q) aggregates
the per-window residual variances. Slopes of log F against log s give the
generalized Hurst exponents h(q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scaling import QGrid, SingularitySpectrum, legendre_spectrum
from .series import TimeSeries

__all__ = [
    "MfdfaConfig",
    "MfdfaFluctuations",
    "MfdfaResult",
    "default_window_sizes",
    "mfdfa_profile",
    "mfdfa_fluctuations",
    "mfdfa_exponents",
    "mfdfa_analysis",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class MfdfaConfig:
    """Detrending order, window sizes (None = 16 geometric in [16, n/4]), q grid."""

    order: int = 2
    sizes: tuple | None = None
    qgrid: QGrid | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"detrending order must be >= 1, got {self.order}")
        if self.sizes is not None:
            sizes = tuple(int(s) for s in self.sizes)
            if len(sizes) < 3:
                raise ValueError("need at least 3 window sizes")
            if any(s < self.order + 2 for s in sizes):
                raise ValueError(f"window sizes must be >= order + 2 = {self.order + 2}")
            if any(b <= a for a, b in zip(sizes, sizes[1:])):
                raise ValueError("window sizes must be strictly increasing")
            object.__setattr__(self, "sizes", sizes)


def default_window_sizes(n: int, count: int = 16) -> np.ndarray:
    """Geometric ladder of window sizes from 16 to n/4, deduplicated."""
    if n < 64:
        raise ValueError(f"series too short for detrended analysis, got n={n}")
    raw = np.geomspace(16.0, float(n // 4), count)
    return np.unique(np.round(raw).astype(np.int64))


def mfdfa_profile(series: TimeSeries | np.ndarray) -> np.ndarray:
    """Cumulative sum of the mean-centered series."""
    x = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=np.float64)
    return np.cumsum(x - x.mean())


@dataclass(frozen=True)
class MfdfaFluctuations:
    sizes: np.ndarray
    qgrid: QGrid
    log2_f: np.ndarray  # (len(q), len(sizes))
    segment_counts: np.ndarray


def _segment_log_variances(profile: np.ndarray, size: int, order: int) -> np.ndarray:
    """ln of residual variance for every window, both sweep directions.

    Windows from the end of the profile are realized by reversing it;
    reversing a window mirrors the fitted polynomial and leaves the
    residual variance unchanged.
    """
    n = profile.size
    nseg = n // size
    # centered/scaled abscissa keeps the Vandermonde system well conditioned
    x = (np.arange(size, dtype=np.float64) - 0.5 * (size - 1)) / size
    segs = np.concatenate(
        [
            profile[: nseg * size].reshape(nseg, size),
            profile[::-1][: nseg * size].reshape(nseg, size),
        ]
    )
    coef = np.polyfit(x, segs.T, order)
    resid = segs.T - np.polyval(coef, x[:, None])
    var = np.mean(resid * resid, axis=0)
    return np.log(np.maximum(var, 1e-300))


def mfdfa_fluctuations(
    profile: np.ndarray, config: MfdfaConfig | None = None
) -> MfdfaFluctuations:
    """F(s, q) on a log2 scale for every window size and moment order."""
    if config is None:
        config = MfdfaConfig()
    n = profile.size
    sizes = (
        default_window_sizes(n)
        if config.sizes is None
        else np.asarray(config.sizes, dtype=np.int64)
    )
    if sizes.size < 3:
        raise ValueError(f"need at least 3 distinct window sizes, got {sizes.size}")
    if sizes[-1] > n // 4:
        raise ValueError(f"largest window {sizes[-1]} exceeds n/4 = {n // 4}")
    qgrid = config.qgrid if config.qgrid is not None else QGrid.default()
    q = qgrid.values
    log2_f = np.empty((q.size, sizes.size))
    counts = np.empty(sizes.size, dtype=np.int64)
    for col, s in enumerate(sizes):
        ln_var = _segment_log_variances(profile, int(s), config.order)
        counts[col] = ln_var.size
        for row, qv in enumerate(q):
            if qv == 0.0:
                log2_f[row, col] = 0.5 * ln_var.mean() / _LN2
                continue
            terms = 0.5 * qv * ln_var
            peak = terms.max()
            ln_mean = peak + np.log(np.exp(terms - peak).mean())
            log2_f[row, col] = ln_mean / qv / _LN2
    return MfdfaFluctuations(sizes=sizes, qgrid=qgrid, log2_f=log2_f, segment_counts=counts)


@dataclass(frozen=True)
class MfdfaResult:
    qgrid: QGrid
    sizes: np.ndarray
    h_values: np.ndarray
    tau: np.ndarray
    zeta: np.ndarray  # tau + 1 = q*h(q), the leader-compatible convention
    intercepts: np.ndarray
    spectrum: SingularitySpectrum
    cumulant_poly: np.ndarray  # c1..c3 from a small-|q| expansion fit

    @property
    def c1(self) -> float:
        return float(self.cumulant_poly[0])

    def h_at(self, q: float) -> float:
        return float(self.h_values[self.qgrid.index_of(q)])


def mfdfa_exponents(fluct: MfdfaFluctuations) -> MfdfaResult:
    """h(q) slopes, tau(q) = q h(q) - 1, and the shared Legendre transform."""
    if fluct.sizes.size < 5:
        raise ValueError(f"need at least 5 window sizes for slopes, got {fluct.sizes.size}")
    logs = np.log2(fluct.sizes.astype(np.float64))
    f = fluct.log2_f
    sbar = logs.mean()
    ds = logs - sbar
    sxx = (ds * ds).sum()
    h = (f - f.mean(axis=1, keepdims=True)) @ ds / sxx
    intercepts = f.mean(axis=1) - h * sbar
    q = fluct.qgrid.values
    tau = q * h - 1.0
    zeta = tau + 1.0
    spectrum = legendre_spectrum(fluct.qgrid, zeta)
    window = np.abs(q) <= 2.0
    design = np.stack(
        [q[window], q[window] ** 2 / 2.0, q[window] ** 3 / 6.0], axis=1
    )
    coef, *_ = np.linalg.lstsq(design, zeta[window], rcond=None)
    return MfdfaResult(
        qgrid=fluct.qgrid,
        sizes=fluct.sizes,
        h_values=h,
        tau=tau,
        zeta=zeta,
        intercepts=intercepts,
        spectrum=spectrum,
        cumulant_poly=coef,
    )


def mfdfa_analysis(series: TimeSeries, config: MfdfaConfig | None = None) -> MfdfaResult:
    """Profile, fluctuation functions, and exponents in one call."""
    return mfdfa_exponents(mfdfa_fluctuations(mfdfa_profile(series), config))
