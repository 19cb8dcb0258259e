"""Synthetic reference signals with known scaling behavior.

Three families are provided: fractional Brownian motion (exact-covariance
Gaussian synthesis), the deterministic/randomized binomial cascade (closed
form multifractal exponents), and iid binomial counts (a shot-noise null
model). Each generator is a pure function of its parameters and seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TimeSeries

__all__ = [
    "derive_seed",
    "fgn",
    "fbm",
    "CascadeSpec",
    "binomial_cascade",
    "cascade_tau",
    "cascade_leader_zeta",
    "binomial_counts",
]


def derive_seed(master_seed: int, index: int) -> int:
    """Per-replicate seed: master XOR index.

    Used for every ensemble in the package (synthetic replicates, bootstrap
    replicates, surrogate ensembles) so replicate i of a run is reproducible
    in isolation.
    """
    if master_seed < 0 or index < 0:
        raise ValueError("master_seed and index must be non-negative")
    return master_seed ^ index


def _fgn_autocov(n: int, hurst: float) -> np.ndarray:
    # autocovariance of unit-variance fractional Gaussian noise at lags 0..n
    k = np.arange(n + 1, dtype=np.float64)
    h2 = 2.0 * hurst
    return 0.5 * ((k + 1.0) ** h2 - 2.0 * k**h2 + np.abs(k - 1.0) ** h2)


def _fgn_circulant(n: int, hurst: float, rng: np.random.Generator) -> np.ndarray | None:
    """Exact fGn sample by circulant embedding; None if the embedding fails."""
    gamma = _fgn_autocov(n, hurst)
    # first row of the 2n circulant: gamma(0..n), then gamma(n-1..1)
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    lam = np.fft.fft(row).real
    if lam.min() < -1e-8 * lam.max():
        return None
    lam = np.maximum(lam, 0.0)
    m = 2 * n
    # Hermitian complex-normal vector with unit component variances
    a = rng.standard_normal(n + 1)
    b = rng.standard_normal(n - 1)
    z = np.empty(m, dtype=np.complex128)
    z[0] = a[0]
    z[n] = a[n]
    z[1:n] = (a[1:n] + 1j * b) / np.sqrt(2.0)
    z[n + 1 :] = np.conj(z[1:n][::-1])
    x = np.fft.fft(np.sqrt(lam) * z) / np.sqrt(m)
    return np.ascontiguousarray(x.real[:n])


def _fgn_recursive(n: int, hurst: float, rng: np.random.Generator) -> np.ndarray:
    """O(n^2) conditional (Durbin-Levinson) sampler; exact, used as fallback."""
    gamma = _fgn_autocov(n - 1, hurst)
    x = np.empty(n)
    z = rng.standard_normal(n)
    x[0] = z[0] * np.sqrt(gamma[0])
    phi = np.empty(n)
    v = gamma[0]
    for t in range(1, n):
        if t == 1:
            rho = gamma[1] / gamma[0]
        else:
            rho = (gamma[t] - phi[: t - 1] @ gamma[t - 1 : 0 : -1]) / v
            phi[: t - 1] -= rho * phi[t - 2 :: -1][: t - 1].copy()
        phi[t - 1] = rho
        v *= 1.0 - rho * rho
        if v <= 0.0:
            raise RuntimeError("conditional fGn recursion became singular")
        x[t] = phi[:t] @ x[t - 1 :: -1] + np.sqrt(v) * z[t]
    return x


def fgn(n: int, hurst: float, seed: int) -> TimeSeries:
    """Fractional Gaussian noise with exact covariance.

    Circulant embedding is attempted first; if the embedding is not
    nonnegative definite for the requested n/hurst pair the generator falls
    back to the exact conditional recursion rather than approximating.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not 0.0 < hurst < 1.0:
        raise ValueError(f"hurst must be in (0, 1), got {hurst}")
    rng = np.random.default_rng(seed)
    values = _fgn_circulant(n, hurst, rng)
    if values is None:
        values = _fgn_recursive(n, hurst, np.random.default_rng(seed))
    return TimeSeries(values=values, name=f"fgn(n={n},hurst={hurst})", source="synthetic", seed=seed)


def fbm(n: int, hurst: float, seed: int) -> TimeSeries:
    """Fractional Brownian motion path: cumulative sum of exact fGn."""
    incr = fgn(n, hurst, seed)
    return TimeSeries(
        values=np.cumsum(incr.values),
        name=f"fbm(n={n},hurst={hurst})",
        source="synthetic",
        seed=seed,
    )


@dataclass(frozen=True)
class CascadeSpec:
    """Binomial multiplicative cascade parameters.

    levels is the dyadic depth (output length 2**levels); p is the mass
    fraction given to one child of each split. randomize shuffles the
    (p, 1-p) orientation per branch; the deterministic order is left=p.
    """

    levels: int
    p: float
    randomize: bool = False
    seed: int | None = None

    def __post_init__(self):
        if not 8 <= self.levels <= 24:
            raise ValueError(f"levels must be in [8, 24], got {self.levels}")
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must be in (0, 1), got {self.p}")
        if self.randomize and self.seed is None:
            raise ValueError("randomize=True requires a seed")


def binomial_cascade(spec: CascadeSpec) -> TimeSeries:
    """Mass per dyadic cell of a binomial cascade; sums to 1, all positive."""
    rng = np.random.default_rng(spec.seed) if spec.randomize else None
    mass = np.ones(1)
    for _ in range(spec.levels):
        left = mass * spec.p
        right = mass * (1.0 - spec.p)
        if rng is not None:
            swap = rng.random(mass.size) < 0.5
            left[swap], right[swap] = right[swap], left[swap].copy()
        out = np.empty(2 * mass.size)
        out[0::2] = left
        out[1::2] = right
        mass = out
    name = f"cascade(levels={spec.levels},p={spec.p})"
    return TimeSeries(values=mass, name=name, source="synthetic", seed=spec.seed)


def cascade_tau(q, p: float):
    """Closed-form partition exponent of the binomial cascade measure.

    tau(q) = -log2(p**q + (1-p)**q). Scalar in, scalar out; array in,
    array out.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    qa = np.asarray(q, dtype=np.float64)
    tau = -np.log2(p**qa + (1.0 - p) ** qa)
    return float(tau) if np.isscalar(q) else tau


def cascade_leader_zeta(q, p: float):
    """Analytic leader scaling exponent for the cascade measure series.

    The mass series has negative local regularity (its strongest cells decay
    slower than the cell width), so wavelet leaders at scale j are dominated
    by the deepest descendant of the neighborhood, whose value scales like
    max(p, 1-p)**j times the local coarse mass. The structure-function slope
    that follows from tau(q) is

        zeta(q) = 1 + tau(q) + q * log2(max(p, 1-p))

    which pins the left edge of the singularity spectrum at h = 0.
    """
    qa = np.asarray(q, dtype=np.float64)
    z = 1.0 + cascade_tau(qa, p) + qa * np.log2(max(p, 1.0 - p))
    return float(z) if np.isscalar(q) else z


def binomial_counts(n: int, shots: int, prob: float, seed: int) -> TimeSeries:
    """iid Binomial(shots, prob) counts: the no-correlation null model."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"prob must be in [0, 1], got {prob}")
    rng = np.random.default_rng(seed)
    values = rng.binomial(shots, prob, size=n).astype(np.float64)
    name = f"binomial(n={n},shots={shots},prob={prob})"
    return TimeSeries(values=values, name=name, source="synthetic", seed=seed)
