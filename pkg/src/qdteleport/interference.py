"""Time-resolved two-photon interference of the two remote XX photons.

The two photons meeting at the Bell-state analyzer are exponential wavepackets
(rates gamma_1, gamma_2) with Gaussian spectral jitter and a mean frequency
offset. Without interference the coincidence density over the detection-time
difference tau is a two-sided exponential G_perp(tau); indistinguishability
suppresses parallel-polarized coincidences to

    G_par(tau) = G_perp(tau) * (1 - v(tau)),

with the interference kernel

    v(tau) = exp(-gamma_x |tau|) * exp(-(sigma1^2+sigma2^2) tau^2 / 2) * cos(dbar tau).

The exp(-gamma_x|tau|) factor is the timing correlation inherited from the
cascade (the X decay erases which-path information only near tau=0), the
Gaussian factor is slow spectral wandering of both lines, and the cosine is
the residual mean detuning dbar. Post-selecting |tau| <= w/2 recovers
visibility at the price of rate:

    V(w) = int_{|tau|<=w/2} G_perp v / int_{|tau|<=w/2} G_perp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .qdsource import QdParams

# adaptive-quadrature settings: absolute tolerance on the densities, and the
# tau support truncation in units of the longest wavepacket lifetime
_QUAD_EPSABS = 1e-9
_QUAD_LIMIT = 200
_SUPPORT_LIFETIMES = 20.0

_FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))


@dataclass(frozen=True)
class WavepacketSpec:
    """One photon's wavepacket: decay rate gamma (1/ps), angular-frequency
    jitter std sigma_omega (rad/ps), mean offset detuning (rad/ps)."""

    gamma: float
    sigma_omega: float = 0.0
    detuning: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0.0:
            raise ValueError("wavepacket decay rate must be positive")
        if self.sigma_omega < 0.0:
            raise ValueError("sigma_omega must be >= 0")


@dataclass(frozen=True)
class InterferenceModel:
    """The two interfering wavepackets plus the cascade rate gamma_x (1/ps)."""

    photon1: WavepacketSpec
    photon2: WavepacketSpec
    gamma_x: float

    def __post_init__(self):
        if not self.gamma_x > 0.0:
            raise ValueError("gamma_x must be positive")

    @property
    def sigma_sq_sum(self) -> float:
        return self.photon1.sigma_omega**2 + self.photon2.sigma_omega**2

    @property
    def mean_detuning(self) -> float:
        return self.photon1.detuning - self.photon2.detuning


def cascade_visibility_bound(gamma_xx: float, gamma_x: float) -> float:
    """Full-window visibility ceiling gamma_xx / (gamma_xx + gamma_x) of the cascade."""
    if gamma_xx <= 0.0 or gamma_x <= 0.0:
        raise ValueError("decay rates must be positive")
    return gamma_xx / (gamma_xx + gamma_x)


def visibility_kernel(tau: float, m: InterferenceModel) -> float:
    """Interference kernel v(tau); v(0) = 1 for any model."""
    at = abs(tau)
    return (
        math.exp(-m.gamma_x * at)
        * math.exp(-0.5 * m.sigma_sq_sum * tau * tau)
        * math.cos(m.mean_detuning * tau)
    )


def _g_perp(tau: float, m: InterferenceModel) -> float:
    # two-sided exponential, photon1's rate on tau >= 0, normalized to 1
    g1, g2 = m.photon1.gamma, m.photon2.gamma
    norm = g1 * g2 / (g1 + g2)
    return norm * (math.exp(-g1 * tau) if tau >= 0.0 else math.exp(g2 * tau))


def coincidence_densities(tau: float, m: InterferenceModel) -> tuple[float, float]:
    """(G_par, G_perp) at detection-time difference tau (ps)."""
    g_perp = _g_perp(tau, m)
    return g_perp * (1.0 - visibility_kernel(tau, m)), g_perp


def _support(m: InterferenceModel) -> float:
    return _SUPPORT_LIFETIMES / min(m.photon1.gamma, m.photon2.gamma)


def window_visibility(window_fwidth: float, m: InterferenceModel) -> float:
    """TPI visibility after post-selecting |tau| <= window/2 (window in ps).

    Accepts math.inf for the no-post-selection limit. Monotonically
    non-increasing in the window for detuning*window <= pi.
    """
    if not window_fwidth > 0.0:
        raise ValueError("window must be positive")
    half = min(0.5 * window_fwidth, _support(m))

    def integrate(f):
        lo = quad(f, -half, 0.0, epsabs=_QUAD_EPSABS, limit=_QUAD_LIMIT)[0]
        hi = quad(f, 0.0, half, epsabs=_QUAD_EPSABS, limit=_QUAD_LIMIT)[0]
        return lo + hi

    num = integrate(lambda t: _g_perp(t, m) * visibility_kernel(t, m))
    den = integrate(lambda t: _g_perp(t, m))
    return num / den


def gaussian_sigma_from_fwhm(fwhm_ghz: float, fourier_fwhm_ghz: float) -> float:
    """Angular-frequency jitter std (rad/ps) from a measured line FWHM (GHz).

    The measured line is a Voigt profile: the Fourier-limited Lorentzian of the
    lifetime convolved with the Gaussian jitter. The standard FWHM relation
    f_V ~ 0.5346 f_L + sqrt(0.2166 f_L^2 + f_G^2) is inverted for f_G, and the
    Gaussian FWHM converted to an angular sigma. Exactly Fourier-limited input
    returns 0 (tiny negative radicands from the approximation are clamped).
    """
    if fourier_fwhm_ghz < 0.0:
        raise ValueError("fourier_fwhm_ghz must be >= 0")
    if fwhm_ghz < fourier_fwhm_ghz:
        raise ValueError(
            f"measured FWHM {fwhm_ghz} GHz is below the Fourier limit {fourier_fwhm_ghz} GHz"
        )
    radicand = (fwhm_ghz - 0.5346 * fourier_fwhm_ghz) ** 2 - 0.2166 * fourier_fwhm_ghz**2
    fwhm_gauss_ghz = math.sqrt(max(0.0, radicand))
    # GHz FWHM -> rad/ps std: 2 pi * 1e-3 converts GHz to rad/ps
    return 2.0 * math.pi * fwhm_gauss_ghz * _FWHM_TO_SIGMA * 1e-3


def model_from_sources(
    qd1: QdParams, qd2: QdParams, relative_detuning_ghz: float = 0.0
) -> InterferenceModel:
    """Interference model of the two converted XX photons.

    Spectral jitter of each photon comes from deconvolving its measured
    linewidth against its Fourier limit; the relative spectral offset is
    assigned to photon 1. The cascade rate is taken from source 1's X lifetime
    (the sources are nominally twins).
    """
    p1 = WavepacketSpec(
        gamma=1.0 / qd1.tau_xx_ps,
        sigma_omega=gaussian_sigma_from_fwhm(qd1.linewidth_ghz, qd1.fourier_limit_ghz()),
        detuning=2.0 * math.pi * relative_detuning_ghz * 1e-3,
    )
    p2 = WavepacketSpec(
        gamma=1.0 / qd2.tau_xx_ps,
        sigma_omega=gaussian_sigma_from_fwhm(qd2.linewidth_ghz, qd2.fourier_limit_ghz()),
        detuning=0.0,
    )
    return InterferenceModel(photon1=p1, photon2=p2, gamma_x=1.0 / qd1.tau_x_ps)
