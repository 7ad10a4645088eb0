"""Teleportation of polarization qubits between two remote quantum-dot sources.

Numerical model of the full chain: XX-X cascade pair state with fine-structure
precession and spin decoherence, two-photon interference of remotely generated
photons (partial distinguishability, temporal post-selection), the effective
Bell-state measurement, multi-photon and background noise, and polarization
tomography of the teleported qubit.
"""

from .polmath import (
    BellOutcome,
    DensityMatrix,
    PolState,
    basis_state,
    bell_state,
    concurrence,
    correction_unitary,
    density_from_pure,
    fidelity,
    nearest_physical,
    pauli_correction,
)
from .qdsource import (
    HBAR_UEV_PS,
    QdParams,
    mode_overlap_from_fss,
    pair_state_at,
    prepared_single,
    time_averaged_pair_state,
)
from .interference import (
    InterferenceModel,
    WavepacketSpec,
    cascade_visibility_bound,
    coincidence_densities,
    gaussian_sigma_from_fwhm,
    model_from_sources,
    visibility_kernel,
    window_visibility,
)
from .bsm import (
    BsmProjector,
    bell_decomposition,
    detection_pattern_to_outcome,
    effective_projector,
)
from .noise import (
    G2_SAT_DEFAULT,
    NoiseBudget,
    accidental_rate,
    coincidence_ratio_k,
    g2_in_window,
    p2_bound,
    window_k,
)
from .teleport import (
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
from .tomography import (
    DEFAULT_BOOTSTRAP_RUNS,
    PROJECTION_LABELS,
    TomographyCounts,
    born_probabilities,
    monte_carlo_errors,
    reconstruct,
    simulate_counts,
)

__version__ = "0.1.0"
