"""Re-derive the calibrated g2 saturation constant in qdteleport.noise.

The default noise profile is anchored to one measured point: the coincidence
ratio k equals 0.85 for a 70 ps window at the default budget (50 kHz Raman per
converter, 300 Hz dark counts per detector, brightness 0.002 per source).
This script solves for the g2 saturation value that reproduces that anchor
exactly and prints the resulting k(w) samples, so the frozen constant in
noise.py can be audited or re-derived after a model change.

Run:  python scripts/calibrate_noise.py
"""

import numpy as np
from scipy.optimize import brentq

from qdteleport import noise

REFERENCE_WINDOW_PS = 70.0
REFERENCE_K = 0.85
BRIGHTNESS = (0.002, 0.002)


def k_of_sat(g2_sat: float, window_ps: float = REFERENCE_WINDOW_PS) -> float:
    return noise.window_k(window_ps, g2_sat=(g2_sat, g2_sat), brightness=BRIGHTNESS)


def main():
    sat = brentq(lambda s: k_of_sat(s) - REFERENCE_K, 1e-6, 2.0, xtol=1e-16, rtol=8.9e-16)
    print(f"solved g2 saturation: {sat!r}")
    print(f"frozen in noise.py : {noise.G2_SAT_DEFAULT!r}")
    drift = abs(sat - noise.G2_SAT_DEFAULT)
    print(f"drift              : {drift:.3e}  ({'OK' if drift < 1e-12 else 'UPDATE noise.G2_SAT_DEFAULT'})")

    print("\nk(w) with the solved constant:")
    for w in (70, 110, 150, 190, 230, 290, 500, 1000, 2000):
        k = noise.window_k(float(w), g2_sat=(sat, sat), brightness=BRIGHTNESS)
        print(f"  w = {w:5d} ps   k = {k:.6f}")

    # sanity: the anchor is exact
    resid = k_of_sat(sat) - REFERENCE_K
    print(f"\nanchor residual k(70ps) - 0.85 = {resid:.2e}")
    assert abs(resid) < 1e-12
    np.testing.assert_allclose(k_of_sat(1e-9), 1.0 / (1.0 + 5.2815e-3), rtol=1e-6)


if __name__ == "__main__":
    main()
