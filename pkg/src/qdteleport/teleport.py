"""The teleportation channel and its figures of merit.

Pipeline for one heralded event:

1. the entangled pair (photons 2, 3) is the full-decay time average of the
   decohering pair state of source 2;
2. photons 1 and 2 meet the effective BSM operator. Its coherent part is
   weighted by V * M_p: the two-photon-interference visibility V of the
   post-selection window times the H/V mode overlap M_p, since whatever
   distinguishes the V wavepacket from the optimally-interfering H one also
   suppresses the |HV><VH| transfer term;
3. the conditioned state of photon 3 is mixed with the 'pessimistic overlap'
   term: weight (1-M_p) goes to the state that teleporting |H> would give,
   because the interference is aligned on H (in the uncorrected frame of a
   Psi outcome that state is |V><V|);
4. the coincidence ratio k mixes in unpolarized background, k rho + (1-k) I/2;
5. the heralded Pauli correction is (optionally) applied.

All fidelity numbers are overlaps with the intended pure state. The average
over the conjugate triple H, D, R estimates the Poincare-sphere mean and is
compared against the best classical (measure-and-resend) strategy, 2/3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .bsm import effective_projector
from .interference import (
    InterferenceModel,
    WavepacketSpec,
    gaussian_sigma_from_fwhm,
    model_from_sources,
    window_visibility,
)
from .noise import G2_SAT_DEFAULT, NoiseBudget, window_k
from .polmath import (
    BellOutcome,
    DensityMatrix,
    PolState,
    basis_state,
    correction_unitary,
    fidelity,
)
from .qdsource import QdParams, mode_overlap_from_fss, time_averaged_pair_state

# fidelity of the best classical measure-and-resend channel, averaged over the
# Poincare sphere: the boundary any quantum claim must beat
CLASSICAL_FIDELITY_LIMIT = 2.0 / 3.0

_CONJUGATE_LABELS = ("H", "D", "R")

_ID2 = np.eye(2, dtype=complex)


def _default_qd1() -> QdParams:
    return QdParams(
        tau_x_ps=171.0, tau_xx_ps=120.0, fss_uev=10.0, t2_ps=35.0,
        tau_hv_ns=5.0, tau_ss_ns=5.0, linewidth_ghz=4.3,
        g2=G2_SAT_DEFAULT, brightness=0.002,
    )


def _default_qd2() -> QdParams:
    return QdParams(
        tau_x_ps=171.0, tau_xx_ps=176.0, fss_uev=2.1, t2_ps=35.0,
        tau_hv_ns=5.0, tau_ss_ns=5.0, linewidth_ghz=5.2,
        g2=G2_SAT_DEFAULT, brightness=0.002,
    )


@dataclass(frozen=True)
class TeleportConfig:
    """Everything needed to evaluate one teleportation configuration.

    input_label / input_state: the prepared photon-1 state (a label from the
        tomography set, or an explicit PolState which wins if given).
    outcome: which Bell detection heralded the event (PsiPlus or PsiMinus for
        anything that can actually click).
    window_ps: coincidence post-selection window; None means no post-selection.
    qd1 / qd2: the two sources; the entangled pair comes from qd2.
    mode_overlap_mp: H/V mode overlap M_p at the BSM.
    coincidence_ratio_k: fixed k, or None to use the window-dependent noise
        model (budget rates + the sources' g2 as saturation values).
    visibility_override: fixed TPI visibility; with anchor_window_ps set, the
        override instead pins the *model curve* at that window, i.e.
        V(w) = override * V_model(w) / V_model(anchor).
    relative_detuning_ghz: residual spectral offset between the two BSM photons.
    noise: background-rate budget for the k model (its window is re-stamped).
    """

    qd1: QdParams = field(default_factory=_default_qd1)
    qd2: QdParams = field(default_factory=_default_qd2)
    input_label: str = "H"
    input_state: PolState | None = None
    outcome: BellOutcome = BellOutcome.PSI_MINUS
    window_ps: float | None = 70.0
    mode_overlap_mp: float = 0.85
    coincidence_ratio_k: float | None = None
    visibility_override: float | None = None
    anchor_window_ps: float | None = None
    relative_detuning_ghz: float = 0.43
    apply_correction: bool = True
    noise: NoiseBudget | None = None

    def __post_init__(self):
        if not 0.0 <= self.mode_overlap_mp <= 1.0:
            raise ValueError("mode_overlap_mp must lie in [0, 1]")
        if self.coincidence_ratio_k is not None and not 0.0 <= self.coincidence_ratio_k <= 1.0:
            raise ValueError("coincidence_ratio_k must lie in [0, 1]")
        if self.visibility_override is not None and not 0.0 <= self.visibility_override <= 1.0:
            raise ValueError("visibility_override must lie in [0, 1]")
        if self.window_ps is not None and not self.window_ps > 0.0:
            raise ValueError("window_ps must be positive (or None for no post-selection)")
        if self.anchor_window_ps is not None and not self.anchor_window_ps > 0.0:
            raise ValueError("anchor_window_ps must be positive")


@dataclass(frozen=True)
class TeleportReport:
    """Output of one teleport study: state, conjugate fidelities, curve."""

    rho_out: DensityMatrix
    f_h: float
    f_d: float
    f_r: float
    f_bar: float
    curve: list[tuple[float, float]] | None = None
    threshold_crossing_ps: float | None = None
    uncertainties: dict[str, float] | None = None

    def __post_init__(self):
        expected = (self.f_h + self.f_d + self.f_r) / 3.0
        if abs(self.f_bar - expected) > 1e-12:
            raise ValueError("f_bar must equal (f_h + f_d + f_r)/3")


@lru_cache(maxsize=4096)
def _cached_visibility(window_ps: float, model: InterferenceModel) -> float:
    return window_visibility(window_ps, model)


def _model_visibility(cfg: TeleportConfig, window_ps: float | None) -> float:
    model = model_from_sources(cfg.qd1, cfg.qd2, cfg.relative_detuning_ghz)
    w = math.inf if window_ps is None else float(window_ps)
    return _cached_visibility(w, model)


def bsm_visibility(cfg: TeleportConfig, window_ps: float | None = None) -> float:
    """TPI visibility used for the BSM at the given window (default: cfg's)."""
    if window_ps is None:
        window_ps = cfg.window_ps
    if cfg.visibility_override is None:
        return _model_visibility(cfg, window_ps)
    if cfg.anchor_window_ps is None:
        return cfg.visibility_override
    scale = cfg.visibility_override / _model_visibility(cfg, cfg.anchor_window_ps)
    return min(1.0, scale * _model_visibility(cfg, window_ps))


def coincidence_k(cfg: TeleportConfig, window_ps: float | None = None) -> float:
    """Coincidence ratio k at the given window (default: cfg's)."""
    if window_ps is None:
        window_ps = cfg.window_ps
    if cfg.coincidence_ratio_k is not None:
        return cfg.coincidence_ratio_k
    if cfg.noise is None:
        return 1.0
    w = 20.0 * max(cfg.qd1.tau_xx_ps, cfg.qd2.tau_xx_ps) if window_ps is None else window_ps
    return window_k(
        w,
        g2_sat=(cfg.qd1.g2, cfg.qd2.g2),
        brightness=(cfg.qd1.brightness, cfg.qd2.brightness),
        budget=cfg.noise,
    )


def _input_state(cfg: TeleportConfig) -> PolState:
    return cfg.input_state if cfg.input_state is not None else basis_state(cfg.input_label)


def teleported_state(cfg: TeleportConfig) -> DensityMatrix:
    """Density matrix of photon 3 after one heralded teleportation event."""
    xi = _input_state(cfg)
    rho_in = np.outer(xi.amplitudes, xi.amplitudes.conj())
    rho_pair = time_averaged_pair_state(None, cfg.qd2).entries

    v_bsm = bsm_visibility(cfg) * cfg.mode_overlap_mp
    proj = effective_projector(cfg.outcome, v_bsm).effective_operator

    # photons ordered (1, 2, 3); the BSM operator acts on (1, 2)
    joint = np.kron(rho_in, rho_pair)
    measured = np.kron(proj, _ID2) @ joint
    rho3 = np.einsum("ijkijl->kl", measured.reshape(2, 2, 2, 2, 2, 2))
    p_herald = np.trace(rho3).real
    if p_herald <= 1e-15:
        raise ValueError("heralding probability vanishes for this configuration")
    rho3 = rho3 / p_herald
    rho3 = 0.5 * (rho3 + rho3.conj().T)  # scrub rounding asymmetry

    # imperfect mode overlap: weight (1-M_p) goes to the teleported-|H> pointer
    # state, expressed in the uncorrected frame of this outcome
    u = correction_unitary(cfg.outcome)
    h_raw = u.conj().T @ np.diag([1.0 + 0.0j, 0.0j]) @ u
    rho_mp = cfg.mode_overlap_mp * rho3 + (1.0 - cfg.mode_overlap_mp) * h_raw

    k = coincidence_k(cfg)
    rho_k = k * rho_mp + (1.0 - k) * 0.5 * _ID2

    if cfg.apply_correction:
        rho_k = u @ rho_k @ u.conj().T
    return DensityMatrix(rho_k)


def conjugate_fidelities(cfg: TeleportConfig) -> tuple[float, float, float]:
    """Teleportation fidelities (f_h, f_d, f_r) of the conjugate inputs H, D, R.

    Each input is teleported with the heralded correction applied and scored
    against its own label.
    """
    out = []
    for label in _CONJUGATE_LABELS:
        sub = replace(cfg, input_label=label, input_state=None, apply_correction=True)
        out.append(fidelity(teleported_state(sub), basis_state(label)))
    return tuple(out)


def average_fidelity(cfg: TeleportConfig) -> float:
    f_h, f_d, f_r = conjugate_fidelities(cfg)
    return (f_h + f_d + f_r) / 3.0


def average_fidelity_curve(
    cfg: TeleportConfig, windows: list[float]
) -> tuple[list[tuple[float, float]], float | None]:
    """f_bar over a list of post-selection windows (ps).

    V(w) and k(w) follow the config's visibility/noise policies. Returns the
    curve and the first window at which f_bar falls to the classical limit
    2/3 or below (None if it never does).
    """
    if not windows:
        raise ValueError("windows must be non-empty")
    if any(not w > 0.0 for w in windows):
        raise ValueError("windows must be positive")
    curve = []
    crossing = None
    for w in windows:
        fbar = average_fidelity(replace(cfg, window_ps=float(w)))
        curve.append((float(w), fbar))
        if crossing is None and fbar <= CLASSICAL_FIDELITY_LIMIT:
            crossing = float(w)
    return curve, crossing


def teleport_report(cfg: TeleportConfig, windows: list[float] | None = None) -> TeleportReport:
    """Bundle rho_out (for cfg's own input/outcome/correction) with the
    conjugate fidelities and, optionally, the window curve."""
    f_h, f_d, f_r = conjugate_fidelities(cfg)
    curve, crossing = (None, None)
    if windows:
        curve, crossing = average_fidelity_curve(cfg, windows)
    return TeleportReport(
        rho_out=teleported_state(cfg),
        f_h=f_h,
        f_d=f_d,
        f_r=f_r,
        f_bar=(f_h + f_d + f_r) / 3.0,
        curve=curve,
        threshold_crossing_ps=crossing,
    )


# ------------------------------------------------------------ source-parameter grid


@dataclass(frozen=True)
class SweepScenario:
    """One cell of the source-parameter sweep.

    Either pin the TPI visibility directly, or give linewidths + the XX:X
    lifetime-rate ratio and let the interference model produce it. M_p comes
    from the FSS through the wavepacket-overlap model. k defaults to the
    reference coincidence ratio 0.85; a noise-free 'best case' cell overrides
    it with 1.
    """

    label: str
    visibility: float | None = None
    linewidths_ghz: tuple[float, float] | None = None
    rate_ratio: float | None = None  # gamma_xx / gamma_x
    fss_uev: float = 0.0
    g2: float = 0.0
    k: float = 0.85
    tau_x_ps: float = 171.0
    tau_xx_ps: float = 120.0
    tau_hv_ns: float = 10.0
    tau_ss_ns: float = 10.0

    def __post_init__(self):
        if self.visibility is None and self.rate_ratio is None:
            raise ValueError(f"scenario {self.label!r}: give either visibility or rate_ratio")
        if self.visibility is not None and not 0.0 <= self.visibility <= 1.0:
            raise ValueError("scenario visibility must lie in [0, 1]")
        if not 0.0 <= self.k <= 1.0:
            raise ValueError("scenario k must lie in [0, 1]")


def _scenario_visibility(s: SweepScenario) -> float:
    if s.visibility is not None:
        return s.visibility
    gamma_x = 1.0 / s.tau_x_ps
    gamma_xx = s.rate_ratio * gamma_x
    fourier = gamma_xx * 1e3 / (2.0 * math.pi)  # GHz
    if s.linewidths_ghz is None:
        sig1 = sig2 = 0.0
    else:
        sig1 = gaussian_sigma_from_fwhm(s.linewidths_ghz[0], fourier)
        sig2 = gaussian_sigma_from_fwhm(s.linewidths_ghz[1], fourier)
    model = InterferenceModel(
        photon1=WavepacketSpec(gamma=gamma_xx, sigma_omega=sig1),
        photon2=WavepacketSpec(gamma=gamma_xx, sigma_omega=sig2),
        gamma_x=gamma_x,
    )
    return window_visibility(math.inf, model)


def sweep_grid(scenarios: list[SweepScenario]) -> list[dict]:
    """Average fidelity without temporal post-selection for each scenario.

    Returns one row per scenario with the resolved V, M_p, k and f_bar.
    """
    rows = []
    for s in scenarios:
        vis = _scenario_visibility(s)
        m_p = mode_overlap_from_fss(s.fss_uev, s.tau_xx_ps)
        pair_source = QdParams(
            tau_x_ps=s.tau_x_ps,
            tau_xx_ps=s.tau_xx_ps,
            fss_uev=s.fss_uev,
            t2_ps=35.0,
            tau_hv_ns=s.tau_hv_ns,
            tau_ss_ns=s.tau_ss_ns,
            linewidth_ghz=1e3 / (2.0 * math.pi * s.tau_xx_ps),
            g2=s.g2,
            brightness=0.002,
        )
        cfg = TeleportConfig(
            qd2=pair_source,
            window_ps=None,
            mode_overlap_mp=m_p,
            coincidence_ratio_k=s.k,
            visibility_override=vis,
        )
        rows.append(
            {
                "label": s.label,
                "visibility": vis,
                "fss_uev": s.fss_uev,
                "g2": s.g2,
                "mode_overlap_mp": m_p,
                "k": s.k,
                "f_bar": average_fidelity(cfg),
            }
        )
    return rows
