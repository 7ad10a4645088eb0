"""Models of the two quantum-dot sources.

Each dot emits a polarization-entangled photon pair through its biexciton-exciton
(XX-X) cascade. At emission delay t the pair ideally sits in
(|HH> + exp(i*delta*t/hbar)|VV>)/sqrt2, with the fine-structure splitting delta
driving the phase precession. Two decoherence channels degrade it:

* cross dephasing (time tau_hv) damps the HH<->VV coherence,
* spin scattering (time tau_ss) additionally damps it and leaks population
  into HV/VH.

Concretely the pair state at delay t has populations (1-s)/2 on HH and VV and
s/2 on HV and VH with s(t) = (1 - exp(-t/tau_ss))/2, and an HH<->VV coherence
0.5 * exp(i*delta*t/hbar) * exp(-t/tau_hv) * exp(-t/tau_ss).

Detection does not resolve t on the scale of the X lifetime, so measured states
are averages of rho(t) against the exponential emission-time density
gamma_x * exp(-gamma_x * t); the averages here are exact closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polmath import DensityMatrix, PolState, basis_state

# hbar in ueV*ps, so that the precession phase is fss[ueV] * t[ps] / HBAR
HBAR_UEV_PS = 658.2119569

# measured linewidths may undershoot the Fourier limit by the fit uncertainty
_FOURIER_SLACK = 0.02


@dataclass(frozen=True)
class QdParams:
    """Physical parameters of one quantum-dot source.

    tau_x_ps / tau_xx_ps: X and XX radiative lifetimes.
    fss_uev: fine-structure splitting (delta).
    t2_ps: single-photon dephasing time (enters spectra, not the pair model).
    tau_hv_ns / tau_ss_ns: cross-dephasing and spin-scattering times of the
        pair state; math.inf switches the channel off.
    linewidth_ghz: measured (Gaussian-fit) FWHM of the converted XX line.
    g2: second-order correlation at zero delay.
    brightness: per-pulse photon probability at the detector, in (0, 1].
    """

    tau_x_ps: float
    tau_xx_ps: float
    fss_uev: float
    t2_ps: float
    tau_hv_ns: float
    tau_ss_ns: float
    linewidth_ghz: float
    g2: float
    brightness: float

    def __post_init__(self):
        for name in ("tau_x_ps", "tau_xx_ps", "t2_ps", "tau_hv_ns", "tau_ss_ns"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.fss_uev < 0.0:
            raise ValueError("fss_uev must be >= 0")
        if self.g2 < 0.0:
            raise ValueError("g2 must be >= 0")
        if not 0.0 < self.brightness <= 1.0:
            raise ValueError("brightness must lie in (0, 1]")
        fourier_ghz = self.fourier_limit_ghz()
        if self.linewidth_ghz < fourier_ghz * (1.0 - _FOURIER_SLACK):
            raise ValueError(
                f"linewidth {self.linewidth_ghz} GHz below the Fourier limit "
                f"{fourier_ghz:.4f} GHz of a {self.tau_xx_ps} ps lifetime"
            )

    def fourier_limit_ghz(self) -> float:
        """Transform-limited Lorentzian FWHM of the XX line, 1/(2 pi tau_xx)."""
        return 1.0 / (2.0 * math.pi * self.tau_xx_ps * 1e-3)


@dataclass(frozen=True)
class PairState:
    """Pair density matrix in (HH, HV, VH, VV) at a definite emission delay."""

    rho: DensityMatrix
    emission_delay_ps: float


def _leakage(t_ps: float, tau_ss_ps: float) -> float:
    return 0.5 * (1.0 - math.exp(-t_ps / tau_ss_ps))


def pair_state_at(t_ps: float, p: QdParams) -> PairState:
    """Pair state at emission delay t (ps). See the module docstring for the model."""
    if t_ps < 0.0:
        raise ValueError("emission delay must be >= 0")
    tau_hv = p.tau_hv_ns * 1e3
    tau_ss = p.tau_ss_ns * 1e3
    if math.isinf(t_ps):
        # full-decoherence limit; only meaningful with finite dephasing times
        if math.isinf(tau_hv) or math.isinf(tau_ss):
            raise ValueError("t=inf undefined with infinite dephasing times")
        s, coh = 0.5, 0.0j
    else:
        s = _leakage(t_ps, tau_ss)
        mag = 0.5 * math.exp(-t_ps / tau_hv) * math.exp(-t_ps / tau_ss)
        coh = mag * np.exp(1j * p.fss_uev * t_ps / HBAR_UEV_PS)
    rho = np.diag([(1.0 - s) / 2.0, s / 2.0, s / 2.0, (1.0 - s) / 2.0]).astype(complex)
    rho[0, 3] = coh
    rho[3, 0] = np.conj(coh)
    return PairState(rho=DensityMatrix(rho), emission_delay_ps=t_ps)


def _weighted_mean_exp(mu, gamma: float, t_lo: float, t_hi: float):
    """Mean of exp(-mu*t) under the density gamma*exp(-gamma*t) on [t_lo, t_hi].

    mu may be complex (Re mu >= 0). Written so the exponentials never overflow:
    exp(-mu*t_lo) * (gamma/(gamma+mu)) * (1-exp(-(gamma+mu)*dt)) / (1-exp(-gamma*dt)).
    """
    lam = gamma + mu
    if math.isinf(t_hi):
        tail = 1.0
        den = 1.0
    else:
        dt = t_hi - t_lo
        tail = 1.0 - np.exp(-lam * dt)
        den = 1.0 - math.exp(-gamma * dt)
    return np.exp(-mu * t_lo) * (gamma / lam) * tail / den


def time_averaged_pair_state(window, p: QdParams) -> DensityMatrix:
    """Emission-time average of the pair state, weighted by the X decay.

    window: (t_lo, t_hi) in ps, or None for the full decay [0, inf). The
    degenerate window (t, t) returns the instantaneous state. All averages are
    exact integrals of the closed-form rho(t), so the result is physical by
    construction.
    """
    if window is None:
        t_lo, t_hi = 0.0, math.inf
    else:
        t_lo, t_hi = float(window[0]), float(window[1])
        if t_lo < 0.0:
            raise ValueError("window start must be >= 0")
        if t_lo > t_hi:
            raise ValueError(f"empty averaging window ({t_lo}, {t_hi})")
        if t_lo == t_hi:
            return pair_state_at(t_lo, p).rho
    gamma = 1.0 / p.tau_x_ps
    mu_ss = 1.0 / (p.tau_ss_ns * 1e3)
    mu_coh = mu_ss + 1.0 / (p.tau_hv_ns * 1e3) - 1j * p.fss_uev / HBAR_UEV_PS
    s_bar = 0.5 * (1.0 - _weighted_mean_exp(mu_ss, gamma, t_lo, t_hi).real)
    # exp(-mu_coh*t) = exp(-Gamma*t) * exp(+i*delta*t/hbar) is (twice) the coherence
    coh = 0.5 * _weighted_mean_exp(mu_coh, gamma, t_lo, t_hi)
    rho = np.diag([(1.0 - s_bar) / 2.0, s_bar / 2.0, s_bar / 2.0, (1.0 - s_bar) / 2.0]).astype(complex)
    rho[0, 3] = coh
    rho[3, 0] = np.conj(coh)
    return DensityMatrix(rho)


def prepared_single(label: str, basis_rotation: np.ndarray | None = None) -> PolState:
    """Input photon prepared by the polarizer + waveplate stage.

    The teleportation studies use the conjugate triple H, D, R; any of the six
    tomography labels is accepted. An optional one-qubit unitary models residual
    misalignment between the preparation and the dot eigenbasis.
    """
    psi = basis_state(label)
    if basis_rotation is None:
        return psi
    u = np.asarray(basis_rotation, dtype=complex)
    if u.shape != (2, 2) or not np.allclose(u @ u.conj().T, np.eye(2), atol=1e-9, rtol=0.0):
        raise ValueError("basis_rotation must be a 2x2 unitary")
    return PolState(u @ psi.amplitudes)


def mode_overlap_from_fss(fss_uev: float, tau_xx_ps: float) -> float:
    """Overlap of the H and V wavepacket envelopes when only the FSS distinguishes them.

    The V packet precesses at delta/hbar during the XX lifetime, so the overlap is
    |integral gamma e^{-gamma t} e^{i delta t/hbar} dt| = 1/sqrt(1+(delta*tau_xx/hbar)^2).
    """
    if fss_uev < 0.0 or tau_xx_ps <= 0.0:
        raise ValueError("need fss >= 0 and tau_xx > 0")
    x = fss_uev * tau_xx_ps / HBAR_UEV_PS
    return 1.0 / math.sqrt(1.0 + x * x)
