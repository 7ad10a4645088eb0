import numpy as np
import pytest

from qdteleport.bsm import bell_decomposition, detection_pattern_to_outcome, effective_projector
from qdteleport.polmath import (
    BellOutcome,
    PolState,
    bell_state,
    correction_unitary,
    density_from_pure,
)
from qdteleport.qdsource import QdParams, time_averaged_pair_state

RNG = np.random.default_rng(5)


def random_state():
    v = RNG.normal(size=2) + 1j * RNG.normal(size=2)
    return PolState(v / np.linalg.norm(v))


def test_decomposition_probabilities_are_exactly_one_quarter():
    terms = bell_decomposition(basis := random_state())
    assert [t[0] for t in terms] == [
        BellOutcome.PHI_PLUS, BellOutcome.PHI_MINUS, BellOutcome.PSI_PLUS, BellOutcome.PSI_MINUS,
    ]
    for _, prob, _ in terms:
        assert prob == 0.25  # algebraic identity, no tolerance
    assert basis is not None


def test_correction_recovers_the_input_from_every_branch():
    for _ in range(50):
        xi = random_state()
        for outcome, _, conditional in bell_decomposition(xi):
            fixed = PolState(correction_unitary(outcome) @ conditional.amplitudes)
            assert fixed.equals_up_to_phase(xi, atol=1e-12)


def test_effective_projector_limits():
    for outcome in (BellOutcome.PSI_PLUS, BellOutcome.PSI_MINUS):
        ideal = effective_projector(outcome, 1.0).effective_operator
        psi = bell_state(outcome)
        assert np.allclose(ideal, np.outer(psi, psi.conj()), atol=1e-12)
    blind = effective_projector(BellOutcome.PSI_MINUS, 0.0).effective_operator
    assert np.allclose(blind, np.diag([0.0, 0.5, 0.5, 0.0]), atol=1e-12)


def test_effective_projector_is_a_valid_povm_element():
    for v in (0.0, 0.3, 0.85, 1.0):
        op = effective_projector(BellOutcome.PSI_PLUS, v).effective_operator
        assert np.allclose(op, op.conj().T, atol=1e-12)
        evals = np.linalg.eigvalsh(op)
        assert evals.min() >= -1e-12 and evals.max() <= 1.0 + 1e-12


def test_effective_projector_rejects_bad_input():
    with pytest.raises(ValueError, match="cannot herald"):
        effective_projector(BellOutcome.PHI_PLUS, 1.0)
    with pytest.raises(ValueError, match="visibility"):
        effective_projector(BellOutcome.PSI_MINUS, 1.2)


def test_heralding_probability_is_a_quarter_for_any_visibility():
    # the classical part is weighted so that Tr[Pi (rho_in x rho_pair)] stays
    # 1/4 whatever the visibility and however decohered the pair
    qd = QdParams(tau_x_ps=171.0, tau_xx_ps=176.0, fss_uev=2.1, t2_ps=35.0,
                  tau_hv_ns=5.0, tau_ss_ns=5.0, linewidth_ghz=5.2, g2=0.0, brightness=0.002)
    for window in (None, (0.0, 70.0), (120.0, 800.0)):
        rho_pair = time_averaged_pair_state(window, qd).entries
        for v in (0.0, 0.4, 1.0):
            proj = effective_projector(BellOutcome.PSI_MINUS, v).effective_operator
            rho_in = density_from_pure(random_state()).entries
            joint = np.kron(rho_in, rho_pair)
            p = np.trace(np.kron(proj, np.eye(2)) @ joint).real
            assert p == pytest.approx(0.25, abs=1e-12)


def test_detection_pattern_table():
    # same output port, orthogonal polarizations
    assert detection_pattern_to_outcome((1, "H"), (1, "V")) is BellOutcome.PSI_PLUS
    # different ports, orthogonal polarizations
    assert detection_pattern_to_outcome((1, "H"), (2, "V")) is BellOutcome.PSI_MINUS
    assert detection_pattern_to_outcome((2, "V"), (1, "H")) is BellOutcome.PSI_MINUS
    # co-polarized coincidences cannot distinguish the Phi states
    assert detection_pattern_to_outcome((1, "H"), (2, "H")) is None
    with pytest.raises(ValueError, match="same detector"):
        detection_pattern_to_outcome((1, "H"), (1, "H"))
    with pytest.raises(ValueError, match="polarization label"):
        detection_pattern_to_outcome((1, "X"), (2, "V"))
