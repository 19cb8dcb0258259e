"""Shared fixtures: a couple of moderately sized signals reused across files."""

import numpy as np
import pytest

import mfts


@pytest.fixture(scope="session")
def fgn_series():
    return mfts.fgn(4096, 0.7, seed=1)


@pytest.fixture(scope="session")
def fbm_leaders():
    series = mfts.fbm(8192, 0.7, seed=1)
    basis = mfts.build_wavelet(3)
    return mfts.compute_leaders(mfts.dwt_forward(series, basis))


@pytest.fixture(scope="session")
def qgrid():
    return mfts.QGrid.default()
