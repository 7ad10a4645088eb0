"""Teleport the three conjugate inputs H, D, R and look at the output states.

Shows the asymmetry of the channel: the pole state |H> survives almost
untouched (only leakage populations and background bite), while the
equatorial states D and R also pay for the finite BSM visibility and the
fine-structure phase smearing of the pair coherence. Also prints the raw,
uncorrected output for |H> -- the Psi- herald leaves it near |V> until the
Pauli correction is applied.
"""

from dataclasses import replace

import numpy as np

from qdteleport import (
    NoiseBudget,
    TeleportConfig,
    basis_state,
    conjugate_fidelities,
    fidelity,
    teleported_state,
)

np.set_printoptions(precision=4, suppress=True)

cfg = TeleportConfig(visibility_override=0.79, anchor_window_ps=70.0, noise=NoiseBudget())

f_h, f_d, f_r = conjugate_fidelities(cfg)
print(f"window {cfg.window_ps:.0f} ps, M_p {cfg.mode_overlap_mp}, heralded on {cfg.outcome.value}")
print(f"  f_H = {f_h:.4f}   f_D = {f_d:.4f}   f_R = {f_r:.4f}   mean {np.mean([f_h, f_d, f_r]):.4f}\n")

for label in ("H", "D", "R"):
    rho = teleported_state(replace(cfg, input_label=label))
    print(f"teleported |{label}>  (fidelity {fidelity(rho, basis_state(label)):.4f})")
    print(rho.entries, "\n")

raw = teleported_state(replace(cfg, input_label="H", apply_correction=False))
print("uncorrected |H> output -- population sits in V until the heralded flip:")
print(raw.entries)
print(f"rho_HH = {raw.entries[0, 0].real:.4f}, rho_VV = {raw.entries[1, 1].real:.4f}")
