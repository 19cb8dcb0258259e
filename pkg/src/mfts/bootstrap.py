"""Per-scale circular block bootstrap of wavelet leaders.

Leaders are dependent within a scale, so replicates resample whole blocks
(default block length n_j**(1/3), at least 2) with circular wraparound,
independently at each scale. Every derived statistic (zeta, log-cumulants,
Hurst curve, Legendre spectrum) is recomputed per replicate; percentile
intervals come from the replicate distributions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .generators import derive_seed
from .leaders import LeaderPyramid
from .scaling import (
    QGrid,
    hurst_exponents,
    legendre_spectrum,
    log_cumulants,
    scaling_exponents,
    structure_functions,
)

__all__ = [
    "BootstrapConfig",
    "BootstrapDistribution",
    "BootstrapResult",
    "CumulantTest",
    "circular_block_resample",
    "resample_leaders",
    "bootstrap_statistics",
    "two_sided_pvalue",
    "cumulant_test",
]


@dataclass(frozen=True)
class BootstrapConfig:
    """Replicate count, CI percentiles, master seed, optional fixed block length."""

    replicates: int = 2000
    ci: tuple = (5.0, 95.0)
    seed: int = 0
    block_length: int | None = None

    def __post_init__(self):
        if self.replicates < 100:
            raise ValueError(f"replicates must be >= 100, got {self.replicates}")
        lo, hi = self.ci
        if not 0.0 < lo < hi < 100.0:
            raise ValueError(f"ci percentiles must satisfy 0 < lo < hi < 100, got {self.ci}")
        if self.block_length is not None and self.block_length < 2:
            raise ValueError(f"block_length must be >= 2, got {self.block_length}")


def default_block_length(n: int) -> int:
    """Cube-root block length, at least 2, capped at the sample size."""
    return min(max(2, int(round(n ** (1.0 / 3.0)))), n)


def circular_block_resample(
    x: np.ndarray, rng: np.random.Generator, block_length: int | None = None
) -> np.ndarray:
    """One circular block bootstrap replicate of a 1-D sample."""
    n = x.size
    b = default_block_length(n) if block_length is None else min(block_length, n)
    nblocks = -(-n // b)
    starts = rng.integers(0, n, size=nblocks)
    idx = (starts[:, None] + np.arange(b)[None, :]) % n
    return x[idx].reshape(-1)[:n]


def resample_leaders(
    leaders: LeaderPyramid,
    rng: np.random.Generator | int,
    block_length: int | None = None,
) -> LeaderPyramid:
    """Block-resample the usable leaders at every scale.

    The replicate pyramid carries no boundary exclusions (the inputs are
    already the usable positions); scale flags are preserved.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    resampled = []
    for j in range(1, leaders.levels + 1):
        vals = leaders.usable(j)
        if vals.size == 0:
            raise ValueError(f"scale {j} has no usable leaders to resample")
        resampled.append(circular_block_resample(vals, rng, block_length))
    return LeaderPyramid(
        leaders=tuple(resampled),
        n=leaders.n,
        vanishing_moments=leaders.vanishing_moments,
        boundary_exclusions=tuple(0 for _ in resampled),
        flagged=leaders.flagged,
    )


@dataclass(frozen=True)
class BootstrapDistribution:
    """Point estimate plus replicate samples and percentile band for one statistic."""

    name: str
    point: np.ndarray
    samples: np.ndarray
    ci_low: np.ndarray
    ci_high: np.ndarray
    std: np.ndarray

    @classmethod
    def from_samples(cls, name: str, point: np.ndarray, samples: np.ndarray, ci: tuple):
        lo, hi = np.percentile(samples, list(ci), axis=0)
        return cls(
            name=name,
            point=np.asarray(point, dtype=np.float64),
            samples=samples,
            ci_low=lo,
            ci_high=hi,
            std=samples.std(axis=0, ddof=1),
        )

    @property
    def width(self) -> np.ndarray:
        return self.ci_high - self.ci_low


@dataclass(frozen=True)
class BootstrapResult:
    config: BootstrapConfig
    scale_range: tuple
    qgrid: QGrid
    zeta: BootstrapDistribution
    hurst: BootstrapDistribution
    cumulants: BootstrapDistribution
    spectrum_h: BootstrapDistribution
    spectrum_d: BootstrapDistribution
    block_lengths: tuple
    failures: int


def bootstrap_statistics(
    leaders: LeaderPyramid,
    qgrid: QGrid,
    scale_range: tuple,
    config: BootstrapConfig | None = None,
    max_order: int = 5,
) -> BootstrapResult:
    """Replicate every scaling statistic under the per-scale block bootstrap.

    Replicate b is a pure function of (config.seed, b). A replicate whose
    estimators fail (degenerate resample) is dropped; more than 1% dropped
    aborts the run with the failure count.
    """
    if config is None:
        config = BootstrapConfig()

    def estimate(pyr: LeaderPyramid):
        sf = structure_functions(pyr, qgrid, scale_range)
        sc = scaling_exponents(sf)
        cf = log_cumulants(pyr, scale_range, max_order=max_order)
        spec = legendre_spectrum(qgrid, sc.zeta)
        hq = hurst_exponents(sc, c1=float(cf.values[0]))
        return sc.zeta, hq, cf.values, spec.h_values, spec.d_values

    point = estimate(leaders)
    B = config.replicates
    nq = len(qgrid)
    samples = [
        np.empty((B, nq)),
        np.empty((B, nq)),
        np.empty((B, max_order)),
        np.empty((B, nq)),
        np.empty((B, nq)),
    ]
    failures = 0
    last_error = None
    kept = 0
    for b in range(B):
        rng = np.random.default_rng(derive_seed(config.seed, b))
        try:
            rep = estimate(resample_leaders(leaders, rng, config.block_length))
        except (ValueError, FloatingPointError) as exc:
            failures += 1
            last_error = exc
            continue
        for arr, values in zip(samples, rep):
            arr[kept] = values
        kept += 1
    if failures > 0.01 * B:
        raise RuntimeError(
            f"bootstrap aborted: {failures} of {B} replicates failed "
            f"(last error: {last_error})"
        )
    samples = [arr[:kept] for arr in samples]
    names = ("zeta", "hurst", "cumulants", "spectrum_h", "spectrum_d")
    dists = [
        BootstrapDistribution.from_samples(name, pt, arr, config.ci)
        for name, pt, arr in zip(names, point, samples)
    ]
    block_lengths = tuple(
        default_block_length(leaders.usable(j).size)
        if config.block_length is None
        else min(config.block_length, leaders.usable(j).size)
        for j in range(1, leaders.levels + 1)
    )
    return BootstrapResult(
        config=config,
        scale_range=(int(scale_range[0]), int(scale_range[1])),
        qgrid=qgrid,
        zeta=dists[0],
        hurst=dists[1],
        cumulants=dists[2],
        spectrum_h=dists[3],
        spectrum_d=dists[4],
        block_lengths=block_lengths,
        failures=failures,
    )


def two_sided_pvalue(samples: np.ndarray, point: float) -> float:
    """Percentile sign test against zero: p = 2 (r + 1) / (B + 1), capped at 1.

    r counts replicates strictly on the far side of zero from the point
    estimate. A point estimate of exactly zero cannot reject: p = 1.
    """
    samples = np.asarray(samples)
    B = samples.size
    if point > 0.0:
        r = int((samples < 0.0).sum())
    elif point < 0.0:
        r = int((samples > 0.0).sum())
    else:
        return 1.0
    return min(1.0, 2.0 * (r + 1) / (B + 1))


@dataclass(frozen=True)
class CumulantTest:
    orders: np.ndarray
    estimates: np.ndarray
    std: np.ndarray
    p_values: np.ndarray
    reject: np.ndarray
    significance: float


def cumulant_test(result: BootstrapResult, significance: float = 0.05) -> CumulantTest:
    """Two-sided bootstrap significance of each log-cumulant against zero."""
    dist = result.cumulants
    pvals = np.array(
        [
            two_sided_pvalue(dist.samples[:, m], float(dist.point[m]))
            for m in range(dist.point.size)
        ]
    )
    return CumulantTest(
        orders=np.arange(1, dist.point.size + 1),
        estimates=dist.point,
        std=dist.std,
        p_values=pvals,
        reject=pvals < significance,
        significance=significance,
    )
