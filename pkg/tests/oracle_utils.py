"""Independent reference implementations used to cross-check the package.

Everything here recomputes a quantity from its definition with a different
algorithm than the library uses, so agreement is evidence, not tautology.
"""

from __future__ import annotations

import numpy as np

from mfts import CoefficientPyramid, LeaderPyramid


def brute_force_leaders(details) -> list:
    """Leaders from the direct sup definition, one scale-pair at a time.

    The leader at scale j, position k is the max of |d(j', k')| over all
    j' <= j and every position k' whose dyadic cell lies inside the cells
    k-1, k, k+1 at scale j (neighbors wrap mod n_j). Cells are expanded
    per scale pair with reduceat instead of the library's incremental fold.
    """
    mags = [np.abs(np.asarray(d, dtype=np.float64)) for d in details]
    out = []
    for j in range(1, len(mags) + 1):
        n_j = mags[j - 1].size
        cell = np.zeros(n_j)
        for jp in range(1, j + 1):
            step = 2 ** (j - jp)
            src = mags[jp - 1]
            seg = np.maximum.reduceat(src, np.arange(0, src.size, step))
            cell = np.maximum(cell, seg[:n_j])
        lead = np.maximum(np.maximum(cell, np.roll(cell, 1)), np.roll(cell, -1))
        out.append(lead)
    return out


def random_pyramid(rng: np.random.Generator, max_n: int = 1024) -> CoefficientPyramid:
    """A coefficient pyramid with random sizes, values, signs, and zeros."""
    n = int(rng.integers(16, max_n + 1))
    levels = int(rng.integers(2, max(3, n.bit_length() - 2)))
    details = []
    size = n
    for _ in range(levels):
        size = size // 2
        if size < 1:
            break
        d = rng.standard_normal(size)
        d[rng.random(size) < 0.1] = 0.0  # exact zeros exercise tie handling
        details.append(d)
    return CoefficientPyramid(
        details=tuple(details),
        approx=np.zeros(max(size, 1)),
        n=n,
        vanishing_moments=3,
        normalization="l1",
        boundary_exclusions=tuple(min(5, d.size) for d in details),
    )


def make_leader_pyramid(arrays, n=None) -> LeaderPyramid:
    """A leader pyramid straight from per-scale arrays, nothing excluded."""
    arrays = [np.asarray(a, dtype=np.float64) for a in arrays]
    return LeaderPyramid(
        leaders=tuple(arrays),
        n=int(n if n is not None else arrays[0].size * 2),
        vanishing_moments=3,
        boundary_exclusions=tuple(0 for _ in arrays),
        flagged=tuple(j == 1 for j in range(1, len(arrays) + 1)),
    )


def naive_two_pass_stats(x: np.ndarray) -> tuple:
    """Textbook mean and n-1 variance, the accuracy reference."""
    x = np.asarray(x, dtype=np.float64)
    mean = x.sum() / x.size
    var = ((x - mean) ** 2).sum() / (x.size - 1)
    return float(mean), float(var)
