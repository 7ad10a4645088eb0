"""Independent high-precision cross-checks for the frozen test values.

Everything here recomputes library quantities with mpmath (50 digits, its own
quadrature) or from scratch, and compares against the fast numpy/scipy
implementations. Run it whenever a frozen constant in the tests changes:

    python3 scripts/make_oracles.py

It prints the comparison table and exits non-zero on any drift.
"""

import math
import sys

import mpmath as mp

sys.path.insert(0, "src")

from qdteleport.interference import InterferenceModel, WavepacketSpec, window_visibility
from qdteleport.noise import p2_bound
from qdteleport.qdsource import QdParams, time_averaged_pair_state

mp.mp.dps = 50

FAILED = False


def check(name, got, want, tol):
    global FAILED
    err = abs(float(got) - float(want))
    flag = "ok" if err <= tol else "DRIFT"
    if err > tol:
        FAILED = True
    print(f"{name:'s':<46}" if False else f"{name:<46} impl={float(got):+.15e}  oracle={float(want):+.15e}  |d|={err:.2e}  {flag}")


# --- two-photon interference: mpmath quadrature of the same kernel ---------

SIG1 = 0.009446022569724892
SIG2 = 0.012536642454812622
DET = 2.0 * math.pi * 0.43e-3
G1, G2R, GX = 1.0 / 120.0, 1.0 / 176.0, 1.0 / 171.0

model = InterferenceModel(
    photon1=WavepacketSpec(gamma=G1, sigma_omega=SIG1, detuning=DET),
    photon2=WavepacketSpec(gamma=G2R, sigma_omega=SIG2, detuning=0.0),
    gamma_x=GX,
)


def mp_visibility(window):
    g1, g2, gx = mp.mpf(G1), mp.mpf(G2R), mp.mpf(GX)
    s2 = mp.mpf(SIG1) ** 2 + mp.mpf(SIG2) ** 2
    det = mp.mpf(DET)
    norm = g1 * g2 / (g1 + g2)

    def g_perp(tau):
        return norm * mp.e ** (-(g1 if tau >= 0 else g2) * abs(tau))

    def kern(tau):
        return mp.e ** (-gx * abs(tau)) * mp.e ** (-s2 * tau ** 2 / 2) * mp.cos(det * tau)

    if window == mp.inf:
        lo, hi = -mp.inf, mp.inf
    else:
        lo, hi = -mp.mpf(window) / 2, mp.mpf(window) / 2
    num = mp.quad(lambda t: g_perp(t) * kern(t), [lo, 0, hi])
    den = mp.quad(g_perp, [lo, 0, hi])
    return num / den


for w in (70.0, 110.0, 190.0, 290.0, 2000.0):
    check(f"window_visibility({w:g})", window_visibility(w, model), mp_visibility(w), 5e-9)
check("window_visibility(inf)", window_visibility(math.inf, model), mp_visibility(mp.inf), 5e-9)


# --- pair-state averages: mpmath quadrature of rho(t) entries --------------

QD = QdParams(
    tau_x_ps=171.0, tau_xx_ps=176.0, fss_uev=2.1, t2_ps=35.0,
    tau_hv_ns=5.0, tau_ss_ns=5.0, linewidth_ghz=5.2, g2=0.0, brightness=0.002,
)
HBAR = mp.mpf("658.2119569")


def mp_pair(t_lo, t_hi):
    gx = mp.mpf(1) / mp.mpf(QD.tau_x_ps)
    tss = mp.mpf(QD.tau_ss_ns) * 1000
    thv = mp.mpf(QD.tau_hv_ns) * 1000
    delta = mp.mpf("2.1")

    def weight(t):
        return gx * mp.e ** (-gx * t)

    wnorm = mp.quad(weight, [t_lo, t_hi])
    s = mp.quad(lambda t: weight(t) * (1 - mp.e ** (-t / tss)) / 2, [t_lo, t_hi]) / wnorm
    cr = mp.quad(
        lambda t: weight(t) * mp.e ** (-t / thv - t / tss) * mp.cos(delta * t / HBAR) / 2,
        [t_lo, t_hi],
    ) / wnorm
    ci = mp.quad(
        lambda t: weight(t) * mp.e ** (-t / thv - t / tss) * mp.sin(delta * t / HBAR) / 2,
        [t_lo, t_hi],
    ) / wnorm
    return s, cr, ci


for (lo, hi) in ((0.0, 70.0), (35.0, 290.0), (0.0, 2000.0)):
    rho = time_averaged_pair_state((lo, hi), QD).entries
    s_o, cr_o, ci_o = mp_pair(lo, hi)
    check(f"pair s_bar [{lo:g},{hi:g}]", 2.0 * rho[1, 1].real, s_o, 1e-12)
    check(f"pair Re coh [{lo:g},{hi:g}]", rho[0, 3].real, cr_o, 1e-12)
    check(f"pair Im coh [{lo:g},{hi:g}]", rho[0, 3].imag, ci_o, 1e-12)

# full decay against the closed forms gamma/(gamma+mu)
rho = time_averaged_pair_state(None, QD).entries
g = mp.mpf(1) / 171
mu = mp.mpf(1) / 5000 + mp.mpf(1) / 5000 - 1j * mp.mpf("2.1") / HBAR
cbar = g / (g + mu) / 2
check("pair full-decay Re coh", rho[0, 3].real, mp.re(cbar), 1e-15)
check("pair full-decay Im coh", rho[0, 3].imag, mp.im(cbar), 1e-15)
check("pair full-decay s_bar", 2.0 * rho[1, 1].real,
      (1 - g / (g + mp.mpf(1) / 5000)) / 2, 1e-15)


# --- two-photon probability law vs 50-digit arithmetic ---------------------

def mp_p2(brightness, g2):
    b, g = mp.mpf(repr(brightness)), mp.mpf(repr(g2))
    return b ** 2 * g / (1 - b * g + mp.sqrt(1 - 2 * b * g))


for b in (0.05, 0.1, 0.25, 0.5, 1.0):
    for g2v in (0.01, 0.05, 0.1, 0.2):
        check(f"p2_bound(g2={g2v}, B={b})", p2_bound(g2v, b), mp_p2(b, g2v), 1e-12)

print()
if FAILED:
    print("DRIFT DETECTED")
    sys.exit(1)
print("all oracle checks pass")
