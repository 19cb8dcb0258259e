"""Wavelet leaders: local suprema of coefficient magnitudes over dyadic trees.

The leader at scale j, position k is the supremum of |d(j', k')| over all
scales j' <= j and positions k' whose dyadic range lies inside the union of
ranges k-1, k, k+1 at scale j (k +/- 1 wrap periodically at scale j). The
range of position a at scale j, seen from scale j', is
[a * 2**(j-j'), (a+1) * 2**(j-j')) intersected with [0, n_j').

Computation is bottom-up in O(total coefficients): a running array of
per-range maxima ("leaders without neighbors") is folded pairwise from one
scale to the next and merged with that scale's own magnitudes; the leader is
then the 3-term neighborhood maximum. The running array is kept at the
ceiling-halved length so ranges that extend past a short coarse scale still
carry their fine-scale content.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .wavelets import CoefficientPyramid

__all__ = ["LeaderPyramid", "compute_leaders"]


@dataclass(frozen=True)
class LeaderPyramid:
    """Per-scale leader arrays, aligned with the coefficient pyramid.

    leaders[j-1] has the same length as the detail array at scale j.
    Scale 1 has no finer scale to sup over, so flagged[0] is True and
    downstream fits start at j=2. boundary_exclusions counts leading
    positions per scale contaminated by the periodic wrap.
    """

    leaders: tuple
    n: int
    vanishing_moments: int
    boundary_exclusions: tuple
    flagged: tuple

    def __post_init__(self):
        frozen = []
        for arr in self.leaders:
            a = np.asarray(arr, dtype=np.float64)
            a.flags.writeable = False
            frozen.append(a)
        object.__setattr__(self, "leaders", tuple(frozen))

    @property
    def levels(self) -> int:
        return len(self.leaders)

    def usable(self, scale: int) -> np.ndarray:
        """Leaders at a scale with boundary-flagged positions dropped.

        Drops the leading wrap cone and the final position: its k+1
        neighbor wraps to position 0, so on non-periodic inputs it carries
        the same boundary jump the leading exclusions remove.
        """
        arr = self.leaders[scale - 1]
        lead = self.boundary_exclusions[scale - 1]
        if lead == 0:
            # no recorded wrap cone (resampled pyramids): nothing to trim
            return arr
        return arr[lead : max(arr.size - 1, lead)]


def compute_leaders(pyramid: CoefficientPyramid) -> LeaderPyramid:
    """Leaders for every scale of an L1-normalized pyramid."""
    if pyramid.normalization != "l1":
        raise ValueError(
            f"leaders require the l1 normalization, got {pyramid.normalization!r}"
        )
    if pyramid.levels < 1:
        raise ValueError("pyramid has no detail scales")
    for j, d in enumerate(pyramid.details, start=1):
        if d.size == 0:
            raise ValueError(f"pyramid has an empty scale at j={j}")

    leaders = []
    sans_voisin = None
    for d in pyramid.details:
        mag = np.abs(d)
        n_j = mag.size
        if sans_voisin is None:
            sans_voisin = mag.copy()
        else:
            # fold child ranges pairwise, keeping the odd tail as its own range
            prev = sans_voisin
            half = (prev.size + 1) // 2
            merged = np.empty(half)
            left = prev[0::2]
            right = prev[1::2]
            np.maximum(left[: right.size], right, out=merged[: right.size])
            if left.size > right.size:
                merged[-1] = left[-1]
            merged[:n_j] = np.maximum(merged[:n_j], mag)
            sans_voisin = merged
        own = sans_voisin[:n_j]
        lead = np.maximum(np.maximum(own, np.roll(own, 1)), np.roll(own, -1))
        leaders.append(lead)

    # the +/-1 neighborhood widens the coefficient wrap cone by one position
    exclusions = tuple(
        min(excl + 1, arr.size)
        for excl, arr in zip(pyramid.boundary_exclusions, leaders)
    )
    return LeaderPyramid(
        leaders=tuple(leaders),
        n=pyramid.n,
        vanishing_moments=pyramid.vanishing_moments,
        boundary_exclusions=exclusions,
        flagged=tuple(j == 1 for j in range(1, pyramid.levels + 1)),
    )
