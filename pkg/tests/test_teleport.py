import math
from dataclasses import replace

import numpy as np
import pytest

from qdteleport.noise import NoiseBudget
from qdteleport.polmath import BellOutcome, PolState, basis_state, fidelity
from qdteleport.qdsource import QdParams
from qdteleport.teleport import (
    CLASSICAL_FIDELITY_LIMIT,
    SweepScenario,
    TeleportConfig,
    TeleportReport,
    average_fidelity,
    average_fidelity_curve,
    bsm_visibility,
    coincidence_k,
    conjugate_fidelities,
    sweep_grid,
    teleport_report,
    teleported_state,
)


def reference_cfg(**overrides):
    """Nominal two-source configuration: V pinned to 0.79 at the 70 ps window,
    k from the default noise budget."""
    base = dict(visibility_override=0.79, anchor_window_ps=70.0, noise=NoiseBudget())
    base.update(overrides)
    return TeleportConfig(**base)


def ideal_cfg(**overrides):
    qd = QdParams(tau_x_ps=171.0, tau_xx_ps=176.0, fss_uev=0.0, t2_ps=352.0,
                  tau_hv_ns=math.inf, tau_ss_ns=math.inf, linewidth_ghz=0.905,
                  g2=0.0, brightness=1.0)
    base = dict(qd1=qd, qd2=qd, mode_overlap_mp=1.0, coincidence_ratio_k=1.0,
                visibility_override=1.0, relative_detuning_ghz=0.0)
    base.update(overrides)
    return TeleportConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError, match="mode_overlap_mp"):
        TeleportConfig(mode_overlap_mp=1.2)
    with pytest.raises(ValueError, match="coincidence_ratio_k"):
        TeleportConfig(coincidence_ratio_k=-0.1)
    with pytest.raises(ValueError, match="visibility_override"):
        TeleportConfig(visibility_override=2.0)
    with pytest.raises(ValueError, match="window_ps"):
        TeleportConfig(window_ps=0.0)


def test_report_checks_its_own_average():
    rho = teleported_state(ideal_cfg())
    with pytest.raises(ValueError, match="f_bar"):
        TeleportReport(rho_out=rho, f_h=1.0, f_d=1.0, f_r=1.0, f_bar=0.9)


def test_visibility_policies():
    cfg = reference_cfg()
    assert bsm_visibility(cfg) == 0.79  # anchored exactly at its own window
    assert bsm_visibility(cfg, 290.0) == pytest.approx(0.45387697207064165, abs=1e-9)
    flat = TeleportConfig(visibility_override=0.6)
    assert bsm_visibility(flat) == 0.6
    assert bsm_visibility(flat, 2000.0) == 0.6
    # no override: straight from the interference model of the two sources
    modeled = TeleportConfig()
    assert bsm_visibility(modeled, 70.0) == pytest.approx(0.868, abs=2e-3)


def test_coincidence_policies():
    assert coincidence_k(TeleportConfig(coincidence_ratio_k=0.7)) == 0.7
    assert coincidence_k(TeleportConfig()) == 1.0  # no noise model attached
    cfg = reference_cfg()
    assert coincidence_k(cfg) == pytest.approx(0.85, abs=1e-12)
    assert coincidence_k(cfg, 290.0) == pytest.approx(0.6596287558163283, abs=1e-12)


def test_ideal_chain_is_the_identity_channel():
    for outcome in (BellOutcome.PSI_MINUS, BellOutcome.PSI_PLUS):
        for label in ("H", "D", "R", "L", "A", "V"):
            cfg = ideal_cfg(input_label=label, outcome=outcome)
            rho = teleported_state(cfg)
            assert fidelity(rho, basis_state(label)) == pytest.approx(1.0, abs=1e-12)
        assert average_fidelity(ideal_cfg(outcome=outcome)) == pytest.approx(1.0, abs=1e-12)


def test_phi_outcomes_cannot_be_heralded():
    with pytest.raises(ValueError, match="cannot herald"):
        teleported_state(ideal_cfg(outcome=BellOutcome.PHI_PLUS))


def test_without_correction_the_psi_minus_channel_flips_h():
    # teleporting |H> through the Psi- channel leaves photon 3 in |V> until the
    # heralded sigma1 sigma3 is applied
    rho = teleported_state(reference_cfg(apply_correction=False))
    assert rho.entries[1, 1].real == pytest.approx(0.913053809707987, abs=1e-9)
    assert rho.entries[0, 0].real < rho.entries[1, 1].real
    corrected = teleported_state(reference_cfg())
    assert corrected.entries[0, 0].real == pytest.approx(0.913053809707987, abs=1e-9)


def test_explicit_input_state_wins_over_the_label():
    cfg = reference_cfg(input_label="H", input_state=basis_state("D"))
    by_state = teleported_state(cfg)
    by_label = teleported_state(reference_cfg(input_label="D"))
    assert np.allclose(by_state.entries, by_label.entries, atol=1e-12)


def test_reference_conjugate_fidelities():
    f_h, f_d, f_r = conjugate_fidelities(reference_cfg())
    assert f_h == pytest.approx(0.913053809707987, abs=1e-9)
    assert f_d == pytest.approx(0.6800899707333729, abs=1e-9)
    assert f_r == pytest.approx(0.6800899707333729, abs=1e-9)
    # the equatorial inputs ride on the pair coherence and the BSM visibility,
    # the pole input only on the populations
    assert f_h > f_d and f_h > f_r


def test_psi_plus_channel_gives_the_same_fidelities():
    minus = conjugate_fidelities(reference_cfg())
    plus = conjugate_fidelities(reference_cfg(outcome=BellOutcome.PSI_PLUS))
    assert np.allclose(minus, plus, atol=1e-12)


def test_average_fidelity_curve_reference_values():
    cfg = reference_cfg()
    curve, crossing = average_fidelity_curve(cfg, [70.0, 110.0, 290.0, 2000.0])
    expected = {
        70.0: 0.7577445837249109,
        110.0: 0.733510952887846,
        290.0: 0.6603770148164013,
        2000.0: 0.613110050471531,
    }
    for w, fbar in curve:
        assert fbar == pytest.approx(expected[w], abs=1e-9)
    assert crossing == 290.0  # first of *these* windows at or below 2/3
    full_curve, full_crossing = average_fidelity_curve(cfg, [70, 110, 150, 190, 230, 270, 290])
    assert full_crossing == 270.0
    fbars = [f for _, f in full_curve]
    assert all(a > b for a, b in zip(fbars, fbars[1:]))


def test_curve_validation():
    with pytest.raises(ValueError, match="non-empty"):
        average_fidelity_curve(reference_cfg(), [])
    with pytest.raises(ValueError, match="positive"):
        average_fidelity_curve(reference_cfg(), [70.0, -10.0])


def test_teleport_report_bundle():
    report = teleport_report(reference_cfg(), windows=[70.0, 290.0])
    assert report.f_bar == pytest.approx(0.7577445837249109, abs=1e-9)
    assert report.threshold_crossing_ps == 290.0
    assert report.curve[0][0] == 70.0
    assert report.rho_out.dim == 2


def test_more_mode_overlap_is_always_better():
    for cfg_maker in (ideal_cfg, reference_cfg):
        fbars = [
            average_fidelity(cfg_maker(mode_overlap_mp=mp)) for mp in (0.5, 0.7, 0.85, 1.0)
        ]
        assert all(a < b for a, b in zip(fbars, fbars[1:]))


def test_scenario_validation():
    with pytest.raises(ValueError, match="visibility or rate_ratio"):
        SweepScenario(label="nothing")
    with pytest.raises(ValueError, match="visibility"):
        SweepScenario(label="bad", visibility=1.4)
    with pytest.raises(ValueError, match="k"):
        SweepScenario(label="bad", visibility=0.5, k=-0.2)


def test_sweep_grid_spot_values():
    rows = sweep_grid([
        SweepScenario(label="worst", visibility=0.30, fss_uev=2.1, g2=0.05),
        SweepScenario(label="mid", visibility=0.83),
        SweepScenario(label="best", visibility=1.0, k=1.0),
    ])
    by_label = {r["label"]: r for r in rows}
    assert by_label["worst"]["f_bar"] == pytest.approx(0.695519100956, abs=1e-9)
    assert by_label["worst"]["mode_overlap_mp"] == pytest.approx(0.9338952134225118, abs=1e-12)
    assert by_label["mid"]["f_bar"] == pytest.approx(0.866674825988, abs=1e-9)
    assert by_label["best"]["f_bar"] == pytest.approx(0.986174902686, abs=1e-9)
    assert [r["label"] for r in rows] == ["worst", "mid", "best"]


def test_sweep_rate_ratio_row_reaches_the_cascade_bound():
    row = sweep_grid([SweepScenario(label="ratio5", rate_ratio=5.0)])[0]
    assert row["visibility"] == pytest.approx(5.0 / 6.0, abs=5e-9)
    assert row["f_bar"] == pytest.approx(0.8675880390247431, abs=1e-8)


def test_sweep_fidelity_grows_with_visibility():
    rows = sweep_grid([
        SweepScenario(label=f"v{v}", visibility=v) for v in (0.3, 0.59, 0.83, 1.0)
    ])
    fbars = [r["f_bar"] for r in rows]
    assert all(a < b for a, b in zip(fbars, fbars[1:]))
    assert all(r["f_bar"] > CLASSICAL_FIDELITY_LIMIT for r in rows[1:])
