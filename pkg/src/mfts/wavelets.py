"""Daubechies extremal-phase filters and the periodized discrete wavelet transform.

Filters are built by spectral factorization: the binomial half-band
polynomial P(y) = sum_{k<N} C(N-1+k, k) y^k is rooted, each root y is mapped
to the z-plane via y = (2 - z - 1/z)/4, and the root inside the unit circle
is kept (extremal phase). Multiplying by (1+z)^N and normalizing the sum to
sqrt(2) yields the 2N-tap lowpass filter.

The forward transform uses periodic boundary extension. At each level the
current approximation is circularly filtered and downsampled at odd phase,
so length(details[j]) = floor(n / 2**j). Coefficients whose filter support
wraps around the boundary sit at the start of each scale; a fixed count of
filterlen - 1 positions per scale is flagged for exclusion downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .series import TimeSeries

__all__ = [
    "WaveletBasis",
    "CoefficientPyramid",
    "build_wavelet",
    "max_decomposition_level",
    "dwt_forward",
]

NORMALIZATIONS = ("l1", "orthonormal")


@dataclass(frozen=True)
class WaveletBasis:
    """Analysis filter pair for one Daubechies family member."""

    lowpass: np.ndarray
    highpass: np.ndarray
    vanishing_moments: int

    def __post_init__(self):
        for field in ("lowpass", "highpass"):
            arr = np.asarray(getattr(self, field), dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, field, arr)

    @property
    def length(self) -> int:
        return self.lowpass.size


def _binomial_roots(n_mom: int) -> np.ndarray:
    # roots of P(y) = sum_{k=0}^{N-1} C(N-1+k, k) y^k, polished by Newton
    coeffs = np.array(
        [math.comb(n_mom - 1 + k, k) for k in range(n_mom)], dtype=np.float64
    )
    roots = np.roots(coeffs[::-1])
    deriv = coeffs[1:] * np.arange(1, n_mom)
    for _ in range(3):
        p = np.polyval(coeffs[::-1], roots)
        dp = np.polyval(deriv[::-1], roots)
        step = np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)
        roots = roots - step
    return roots


def build_wavelet(vanishing_moments: int) -> WaveletBasis:
    """Daubechies extremal-phase basis with N vanishing moments, N in [1, 10]."""
    n_mom = vanishing_moments
    if not 1 <= n_mom <= 10:
        raise ValueError(f"vanishing_moments must be in [1, 10], got {n_mom}")
    if n_mom == 1:
        low = np.array([1.0, 1.0]) / np.sqrt(2.0)
    else:
        h = np.ones(1, dtype=np.complex128)
        for y in _binomial_roots(n_mom):
            # y = (2 - z - 1/z)/4  <=>  z**2 - (2 - 4y) z + 1 = 0
            b = 2.0 - 4.0 * y
            disc = np.sqrt(b * b - 4.0 + 0j)
            z1 = (b + disc) / 2.0
            z = z1 if abs(z1) < 1.0 else (b - disc) / 2.0
            h = np.convolve(h, np.array([1.0, -z]))
        for _ in range(n_mom):
            h = np.convolve(h, np.array([1.0, 1.0]))
        low = h.real
        low = low * (np.sqrt(2.0) / low.sum())
    high = (low[::-1] * (-1.0) ** np.arange(low.size)).copy()
    return WaveletBasis(lowpass=low, highpass=high, vanishing_moments=n_mom)


def max_decomposition_level(n: int, vanishing_moments: int) -> int:
    """Deepest level J with n / 2**J >= filter support 2N - 1."""
    support = 2 * vanishing_moments - 1
    if n < 2 * support:
        return 1 if n >= support else 0
    level = 0
    while (support << (level + 1)) <= n:
        level += 1
    return level


@dataclass(frozen=True)
class CoefficientPyramid:
    """Detail coefficients per scale plus the final approximation.

    details[j-1] holds scale j (j=1 finest), length floor(n / 2**j), in the
    tagged normalization: "orthonormal" is the unit-energy convention,
    "l1" rescales scale j by 2**(-j/2). boundary_exclusions[j-1] is the
    number of leading positions at scale j whose support wraps; downstream
    moments skip them.
    """

    details: tuple
    approx: np.ndarray
    n: int
    vanishing_moments: int
    normalization: str
    boundary_exclusions: tuple

    def __post_init__(self):
        frozen = []
        for d in self.details:
            arr = np.asarray(d, dtype=np.float64)
            arr.flags.writeable = False
            frozen.append(arr)
        object.__setattr__(self, "details", tuple(frozen))
        approx = np.asarray(self.approx, dtype=np.float64)
        approx.flags.writeable = False
        object.__setattr__(self, "approx", approx)
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(
                f"normalization must be one of {NORMALIZATIONS}, got {self.normalization!r}"
            )

    @property
    def levels(self) -> int:
        return len(self.details)


def _analysis_step(a: np.ndarray, filt: np.ndarray) -> np.ndarray:
    # circular convolution y[k] = sum_i filt[i] a[(k - i) mod n], odd-phase decimation
    taps = filt.size
    ext = np.concatenate([a[-(taps - 1) :], a]) if taps > 1 else a
    y = np.convolve(ext, filt, mode="valid")
    return y[1::2]


def dwt_forward(
    series: TimeSeries | np.ndarray,
    basis: WaveletBasis,
    max_level: int | None = None,
    normalization: str = "l1",
) -> CoefficientPyramid:
    """Periodized pyramid transform of a series.

    max_level defaults to the deepest level the filter support allows.
    Raises if the series is too short for the requested depth.
    """
    x = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=np.float64)
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")
    n = x.size
    cap = max_decomposition_level(n, basis.vanishing_moments)
    levels = cap if max_level is None else int(max_level)
    if levels < 1:
        raise ValueError(f"max_level must be >= 1, got {levels}")
    if levels > cap:
        raise ValueError(
            f"series of length {n} is too short for {levels} levels with "
            f"{basis.vanishing_moments} vanishing moments (max {cap})"
        )
    wrap = basis.length - 1
    details = []
    exclusions = []
    a = x
    for j in range(1, levels + 1):
        d = _analysis_step(a, basis.highpass)
        a = _analysis_step(a, basis.lowpass)
        if normalization == "l1":
            d = d * 2.0 ** (-0.5 * j)
        details.append(d)
        exclusions.append(min(wrap, d.size))
    if normalization == "l1":
        a = a * 2.0 ** (-0.5 * levels)
    return CoefficientPyramid(
        details=tuple(details),
        approx=a,
        n=n,
        vanishing_moments=basis.vanishing_moments,
        normalization=normalization,
        boundary_exclusions=tuple(exclusions),
    )
