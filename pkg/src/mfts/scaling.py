"""Structure functions, scaling exponents, log-cumulants, Legendre spectrum.

All fits in this module are weighted least squares of a per-scale statistic
against the scale index j, with weights equal to the per-scale sample counts
(coarser scales carry fewer samples and proportionally less weight).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .leaders import LeaderPyramid

__all__ = [
    "QGrid",
    "StructureFunctions",
    "ScalingResult",
    "CumulantFit",
    "SingularitySpectrum",
    "ScaleRangeCandidate",
    "structure_functions",
    "scaling_exponents",
    "hurst_exponents",
    "log_cumulants",
    "zeta_from_cumulants",
    "legendre_spectrum",
    "spectrum_width",
    "select_scale_range",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class QGrid:
    """Ordered distinct moment orders; must contain 0, 1, and 2."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 3:
            raise ValueError("q grid must be a 1-D array with at least 3 entries")
        if not np.all(np.isfinite(arr)):
            raise ValueError("q grid must be finite")
        if not np.all(np.diff(arr) > 0):
            raise ValueError("q grid must be strictly increasing")
        for needed in (0.0, 1.0, 2.0):
            if not np.any(np.abs(arr - needed) <= 1e-12):
                raise ValueError(f"q grid must include q={needed:g}")
        arr = arr.copy()
        # snap the anchor orders exactly so q=0/1/2 moments hit their closed forms
        for needed in (0.0, 1.0, 2.0):
            arr[np.abs(arr - needed) <= 1e-12] = needed
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_range(cls, lo: float, step: float, hi: float) -> "QGrid":
        if step <= 0:
            raise ValueError(f"q step must be positive, got {step}")
        count = int(round((hi - lo) / step))
        if not math.isclose(lo + count * step, hi, rel_tol=0, abs_tol=1e-9):
            raise ValueError(f"q range {lo}:{step}:{hi} is not a whole number of steps")
        return cls(lo + step * np.arange(count + 1))

    @classmethod
    def default(cls) -> "QGrid":
        return cls.from_range(-7.0, 0.5, 7.0)

    def index_of(self, q: float) -> int:
        idx = np.flatnonzero(np.abs(self.values - q) <= 1e-9)
        if idx.size == 0:
            raise ValueError(f"q={q} is not on the grid")
        return int(idx[0])

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class StructureFunctions:
    """log2 of the per-scale mean of leaders raised to each q.

    log2_values has shape (len(q), number of scales). counts holds the
    per-scale sample sizes after boundary exclusion; zero_counts the number
    of exactly-zero leaders additionally dropped from negative moments.
    """

    qgrid: QGrid
    scales: np.ndarray
    log2_values: np.ndarray
    counts: np.ndarray
    zero_counts: np.ndarray


@dataclass(frozen=True)
class ScalingResult:
    qgrid: QGrid
    zeta: np.ndarray
    intercepts: np.ndarray
    stderr: np.ndarray
    weighted_rss: np.ndarray
    scale_range: tuple
    counts: np.ndarray

    def zeta_at(self, q: float) -> float:
        return float(self.zeta[self.qgrid.index_of(q)])


@dataclass(frozen=True)
class CumulantFit:
    """Log-cumulant estimates c_m from per-scale cumulants of ln(leader).

    per_scale[m-1] is the m-th sample cumulant of the log-leaders at each
    scale; values[m-1] is its weighted regression slope against j divided by
    ln 2. fstats holds each order's regression F statistic (slope vs flat).
    """

    orders: np.ndarray
    values: np.ndarray
    stderr: np.ndarray
    fstats: np.ndarray
    per_scale: np.ndarray
    scales: np.ndarray
    counts: np.ndarray
    scale_range: tuple


@dataclass(frozen=True)
class SingularitySpectrum:
    """Parametric Legendre spectrum (h(q), D(q)) on the q grid.

    d_values is kept unclipped; valid marks points with D >= 0 (the
    reportable branch). Confidence bands are attached by the bootstrap.
    """

    qgrid: QGrid
    h_values: np.ndarray
    d_values: np.ndarray
    valid: np.ndarray
    concave: bool
    h_low: np.ndarray | None = None
    h_high: np.ndarray | None = None
    d_low: np.ndarray | None = None
    d_high: np.ndarray | None = None


@dataclass(frozen=True)
class ScaleRangeCandidate:
    start: int
    end: int
    length: int
    score: float
    valid_cumulants: int
    cumulants: np.ndarray
    p_values: np.ndarray


def _check_scale_range(leaders: LeaderPyramid, scale_range) -> tuple:
    j1, j2 = int(scale_range[0]), int(scale_range[1])
    if j1 < 2:
        raise ValueError(f"scale range must start at j1 >= 2 (scale 1 has no finer scale), got {j1}")
    if j2 > leaders.levels:
        raise ValueError(f"scale range end {j2} exceeds available scales ({leaders.levels})")
    if j2 < j1:
        raise ValueError(f"empty scale range ({j1}, {j2})")
    coarse = leaders.usable(j2)
    if coarse.size < 8:
        raise ValueError(
            f"scale {j2} has only {coarse.size} usable leaders after boundary "
            f"exclusion, need at least 8"
        )
    return j1, j2


def structure_functions(
    leaders: LeaderPyramid, qgrid: QGrid, scale_range: tuple
) -> StructureFunctions:
    """Per-scale empirical moments of the leaders on the q grid.

    S_j(q) is the mean of leader**q over usable positions at scale j;
    exactly-zero leaders contribute zero to positive moments and are
    excluded (with a recorded count) from negative moments. S_j(0) is 1
    exactly by construction.
    """
    j1, j2 = _check_scale_range(leaders, scale_range)
    q = qgrid.values
    scales = np.arange(j1, j2 + 1)
    log2_values = np.empty((q.size, scales.size))
    counts = np.empty(scales.size, dtype=np.int64)
    zero_counts = np.empty(scales.size, dtype=np.int64)
    for col, j in enumerate(scales):
        vals = leaders.usable(int(j))
        counts[col] = vals.size
        positive = vals[vals > 0.0]
        zero_counts[col] = vals.size - positive.size
        if positive.size == 0:
            raise ValueError(f"all leaders are zero at scale {j}")
        ln_leaders = np.log(positive)
        for row, qv in enumerate(q):
            if qv == 0.0:
                log2_values[row, col] = 0.0
                continue
            terms = qv * ln_leaders
            peak = terms.max()
            denom = vals.size if qv > 0.0 else positive.size
            log_mean = peak + np.log(np.exp(terms - peak).sum()) - np.log(denom)
            log2_values[row, col] = log_mean / _LN2
    return StructureFunctions(
        qgrid=qgrid,
        scales=scales,
        log2_values=log2_values,
        counts=counts,
        zero_counts=zero_counts,
    )


def _weighted_fit(x: np.ndarray, y: np.ndarray, w: np.ndarray):
    """Weighted least squares of rows of y against x.

    y may be 1-D or 2-D (fits each row). Returns slope, intercept, slope
    standard error, weighted residual sum of squares, and the regression F
    statistic, each shaped like y without its last axis.
    """
    y2 = np.atleast_2d(y)
    wsum = w.sum()
    xbar = (w * x).sum() / wsum
    dx = x - xbar
    sxx = (w * dx * dx).sum()
    if sxx <= 0:
        raise ValueError("degenerate scale axis in weighted regression")
    ybar = (y2 * w).sum(axis=1) / wsum
    slope = ((y2 - ybar[:, None]) * (w * dx)).sum(axis=1) / sxx
    intercept = ybar - slope * xbar
    resid = y2 - (slope[:, None] * x + intercept[:, None])
    sse = (w * resid * resid).sum(axis=1)
    ssr = slope * slope * sxx
    dof = x.size - 2
    if dof > 0:
        with np.errstate(divide="ignore", invalid="ignore"):
            stderr = np.sqrt(sse / dof / sxx)
            fstat = np.where(
                sse > 1e-300,
                ssr / (sse / dof),
                np.where(ssr > 1e-300, np.inf, 0.0),
            )
    else:
        stderr = np.full(y2.shape[0], np.nan)
        fstat = np.where(ssr > 1e-300, np.inf, 0.0)
    if y.ndim == 1:
        return slope[0], intercept[0], stderr[0], sse[0], fstat[0]
    return slope, intercept, stderr, sse, fstat


def scaling_exponents(sf: StructureFunctions) -> ScalingResult:
    """zeta(q): weighted regression slope of log2 S_j(q) against j."""
    x = sf.scales.astype(np.float64)
    w = sf.counts.astype(np.float64)
    slope, intercept, stderr, sse, _ = _weighted_fit(x, sf.log2_values, w)
    return ScalingResult(
        qgrid=sf.qgrid,
        zeta=slope,
        intercepts=intercept,
        stderr=stderr,
        weighted_rss=sse,
        scale_range=(int(sf.scales[0]), int(sf.scales[-1])),
        counts=sf.counts,
    )


def hurst_exponents(scaling: ScalingResult, c1: float | None = None) -> np.ndarray:
    """Generalized Hurst curve H(q) = zeta(q) / q.

    Equivalently (zeta_sum(q) + 1)/q for the partition-sum slope
    zeta_sum = zeta - 1. Flat at the Hurst exponent for a monofractal
    signal; the q -> 0 limit is c1, which is reported at q=0 when a
    cumulant fit is supplied (NaN otherwise).
    """
    q = scaling.qgrid.values
    h = np.empty_like(q)
    nz = q != 0.0
    h[nz] = scaling.zeta[nz] / q[nz]
    h[~nz] = np.nan if c1 is None else c1
    return h


def _log_cumulant_curves(log_values: np.ndarray, max_order: int) -> np.ndarray:
    """Sample cumulants (orders 1..max_order) of one scale's log-leaders."""
    out = np.empty(max_order)
    m1 = log_values.mean()
    out[0] = m1
    if max_order == 1:
        return out
    d = log_values - m1
    powers = d * d
    mu = [powers.mean()]  # mu2
    for _ in range(3, max_order + 1):
        powers = powers * d
        mu.append(powers.mean())
    out[1] = mu[0]
    if max_order >= 3:
        out[2] = mu[1]
    if max_order >= 4:
        out[3] = mu[2] - 3.0 * mu[0] * mu[0]
    if max_order >= 5:
        out[4] = mu[3] - 10.0 * mu[1] * mu[0]
    return out


def log_cumulants(
    leaders: LeaderPyramid, scale_range: tuple, max_order: int = 5
) -> CumulantFit:
    """Log-cumulants c_m: slopes of log-leader cumulants against j, over ln 2."""
    if not 1 <= max_order <= 5:
        raise ValueError(f"max_order must be in [1, 5], got {max_order}")
    j1, j2 = _check_scale_range(leaders, scale_range)
    scales = np.arange(j1, j2 + 1)
    per_scale = np.empty((max_order, scales.size))
    counts = np.empty(scales.size, dtype=np.int64)
    for col, j in enumerate(scales):
        vals = leaders.usable(int(j))
        positive = vals[vals > 0.0]
        if positive.size < 2:
            raise ValueError(f"scale {j} has fewer than 2 positive leaders")
        counts[col] = positive.size
        per_scale[:, col] = _log_cumulant_curves(np.log(positive), max_order)
    x = scales.astype(np.float64)
    w = counts.astype(np.float64)
    slope, _, stderr, _, fstat = _weighted_fit(x, per_scale, w)
    return CumulantFit(
        orders=np.arange(1, max_order + 1),
        values=slope / _LN2,
        stderr=stderr / _LN2,
        fstats=fstat,
        per_scale=per_scale,
        scales=scales,
        counts=counts,
        scale_range=(j1, j2),
    )


def zeta_from_cumulants(values: np.ndarray, qgrid: QGrid) -> np.ndarray:
    """Polynomial reconstruction zeta(q) = sum_m c_m q**m / m!."""
    q = qgrid.values
    out = np.zeros_like(q)
    for m, c in enumerate(np.asarray(values), start=1):
        out += c * q**m / math.factorial(m)
    return out


def legendre_spectrum(qgrid: QGrid, zeta: np.ndarray) -> SingularitySpectrum:
    """Parametric Legendre transform of zeta(q).

    h = dzeta/dq by central differences (second-order one-sided at the grid
    ends, so quadratic zeta transforms exactly); D = 1 + q*h - zeta.
    Points with D < 0 are marked invalid but kept.
    """
    q = qgrid.values
    zeta = np.asarray(zeta, dtype=np.float64)
    if zeta.shape != q.shape:
        raise ValueError("zeta and q grid shapes differ")
    h = np.gradient(zeta, q, edge_order=2)
    d = 1.0 + q * h - zeta
    chord = np.diff(zeta) / np.diff(q)
    concave = bool(np.all(np.diff(chord) <= 1e-10))
    return SingularitySpectrum(
        qgrid=qgrid,
        h_values=h,
        d_values=d,
        valid=d >= 0.0,
        concave=concave,
    )


def spectrum_width(spectrum: SingularitySpectrum, q_lo: float = -5.0, q_hi: float = 5.0) -> float:
    """h_max - h_min over the q window (default [-5, 5])."""
    q = spectrum.qgrid.values
    mask = (q >= q_lo - 1e-9) & (q <= q_hi + 1e-9)
    if not mask.any():
        raise ValueError(f"no grid points inside q window [{q_lo}, {q_hi}]")
    h = spectrum.h_values[mask]
    return float(h.max() - h.min())


def select_scale_range(
    leaders: LeaderPyramid,
    min_length: int = 3,
    max_order: int = 5,
    bootstrap_config=None,
    significance: float = 0.05,
) -> list:
    """Rank every admissible contiguous scale range by cumulant fit quality.

    The score is the sum over cumulant orders 1..max_order of the weighted
    regression F statistic of the per-scale cumulant curve on that range
    (high when every cumulant is cleanly log-linear across the range).
    valid_cumulants counts the orders whose slope differs from zero at the
    given significance under the per-scale block bootstrap. Candidates are
    sorted by score, ties broken by length (longer first) then start
    (finer first).
    """
    from .bootstrap import BootstrapConfig, circular_block_resample, two_sided_pvalue
    from .generators import derive_seed

    if bootstrap_config is None:
        bootstrap_config = BootstrapConfig()
    if min_length < 3:
        raise ValueError(f"min_length must be >= 3, got {min_length}")
    levels = leaders.levels
    scales = [j for j in range(2, levels + 1) if leaders.usable(j).size >= 8]
    if len(scales) < min_length:
        raise ValueError(
            f"only {len(scales)} usable scales, need at least {min_length} for range selection"
        )
    j_max = scales[-1]
    # point cumulant curves over the full usable span, sliced per range below
    logs = [np.log(leaders.usable(j)[leaders.usable(j) > 0.0]) for j in range(2, j_max + 1)]
    nscales = j_max - 1
    point = np.empty((max_order, nscales))
    counts = np.empty(nscales)
    for col, lv in enumerate(logs):
        if lv.size < 2:
            raise ValueError(f"scale {col + 2} has fewer than 2 positive leaders")
        point[:, col] = _log_cumulant_curves(lv, max_order)
        counts[col] = lv.size

    B = bootstrap_config.replicates
    boot = np.empty((B, max_order, nscales))
    for b in range(B):
        rng = np.random.default_rng(derive_seed(bootstrap_config.seed, b))
        for col, lv in enumerate(logs):
            sample = circular_block_resample(lv, rng)
            boot[b, :, col] = _log_cumulant_curves(sample, max_order)

    candidates = []
    for j1 in range(2, j_max + 1):
        for j2 in range(j1 + min_length - 1, j_max + 1):
            lo, hi = j1 - 2, j2 - 1
            x = np.arange(j1, j2 + 1, dtype=np.float64)
            w = counts[lo:hi]
            slope, _, _, _, fstat = _weighted_fit(x, point[:, lo:hi], w)
            score = float(fstat.sum())
            # replicate slopes on this range, all orders at once
            wsum = w.sum()
            xbar = (w * x).sum() / wsum
            dx = x - xbar
            sxx = (w * dx * dx).sum()
            yc = boot[:, :, lo:hi]
            ybar = (yc * w).sum(axis=2) / wsum
            rep_slopes = ((yc - ybar[:, :, None]) * (w * dx)).sum(axis=2) / sxx
            pvals = np.array(
                [
                    two_sided_pvalue(rep_slopes[:, m], float(slope[m]))
                    for m in range(max_order)
                ]
            )
            candidates.append(
                ScaleRangeCandidate(
                    start=j1,
                    end=j2,
                    length=j2 - j1 + 1,
                    score=score,
                    valid_cumulants=int((pvals < significance).sum()),
                    cumulants=slope / _LN2,
                    p_values=pvals,
                )
            )
    candidates.sort(key=lambda c: (-c.score, -c.length, c.start))
    return candidates
