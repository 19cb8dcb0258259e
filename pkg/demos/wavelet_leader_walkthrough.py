"""Walk the full wavelet-leader chain on two known signals.

Fractional Brownian motion is monofractal: zeta(q) is a straight line of
slope H, the log-cumulants beyond c1 vanish, and the singularity spectrum
collapses to a point. A binomial cascade is the opposite extreme: zeta(q)
bends, c2 goes negative, and the spectrum opens into a wide arch. This
script runs both through the same pipeline and prints the numbers side by
side, with the cascade's analytic exponents for reference.
"""

import numpy as np

import mfts

GRID = mfts.QGrid.default()
SHOW_Q = (-5.0, -2.0, -1.0, 1.0, 2.0, 5.0)


def leader_chain(series):
    pyramid = mfts.dwt_forward(series, mfts.build_wavelet(3))
    return mfts.compute_leaders(pyramid)


def analyze(series, scale_range):
    leaders = leader_chain(series)
    sf = mfts.structure_functions(leaders, GRID, scale_range)
    scaling = mfts.scaling_exponents(sf)
    cum = mfts.log_cumulants(leaders, scale_range)
    spectrum = mfts.legendre_spectrum(GRID, scaling.zeta)
    return scaling, cum, spectrum


def main():
    fbm = mfts.fbm(2**15, hurst=0.7, seed=3)
    cascade = mfts.binomial_cascade(
        mfts.CascadeSpec(levels=15, p=0.7, randomize=True, seed=3)
    )

    fbm_scaling, fbm_cum, fbm_spec = analyze(fbm, (3, 9))
    cas_scaling, cas_cum, cas_spec = analyze(cascade, (3, 9))

    print("zeta(q): fBm (H=0.7) vs binomial cascade (p=0.7)")
    print(f"{'q':>6} {'fbm':>9} {'q*0.7':>9} {'cascade':>9} {'analytic':>9}")
    for q in SHOW_Q:
        i = GRID.index_of(q)
        print(
            f"{q:>6.1f} {fbm_scaling.zeta[i]:>9.3f} {0.7 * q:>9.3f}"
            f" {cas_scaling.zeta[i]:>9.3f} {mfts.cascade_leader_zeta(q, 0.7):>9.3f}"
        )

    print()
    print("log-cumulants (c1, c2, c3):")
    print(f"  fbm     {fbm_cum.values[0]:>8.4f} {fbm_cum.values[1]:>8.4f} {fbm_cum.values[2]:>8.4f}")
    print(f"  cascade {cas_cum.values[0]:>8.4f} {cas_cum.values[1]:>8.4f} {cas_cum.values[2]:>8.4f}")

    print()
    width_fbm = mfts.spectrum_width(fbm_spec)
    width_cas = mfts.spectrum_width(cas_spec)
    print(f"spectrum width over q in [-5, 5]: fbm {width_fbm:.3f}, cascade {width_cas:.3f}")
    print("a near-zero width plus c2 ~ 0 is the monofractal signature;")
    print("the cascade's wide arch and negative c2 mark genuine multifractality")


if __name__ == "__main__":
    main()
