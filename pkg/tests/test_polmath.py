import numpy as np
import pytest

from qdteleport.polmath import (
    BellOutcome,
    DensityMatrix,
    PolState,
    SIGMA_0,
    SIGMA_1,
    SIGMA_3,
    basis_state,
    bell_state,
    concurrence,
    correction_unitary,
    density_from_pure,
    fidelity,
    nearest_physical,
    pauli_correction,
)

RNG = np.random.default_rng(42)


def random_state():
    v = RNG.normal(size=2) + 1j * RNG.normal(size=2)
    return PolState(v / np.linalg.norm(v))


def test_basis_states_are_the_usual_six():
    h = basis_state("H").amplitudes
    v = basis_state("V").amplitudes
    assert np.allclose(h, [1, 0]) and np.allclose(v, [0, 1])
    assert np.allclose(basis_state("D").amplitudes, (h + v) / np.sqrt(2))
    assert np.allclose(basis_state("A").amplitudes, (h - v) / np.sqrt(2))
    assert np.allclose(basis_state("R").amplitudes, (h + 1j * v) / np.sqrt(2))
    assert np.allclose(basis_state("L").amplitudes, (h - 1j * v) / np.sqrt(2))


def test_basis_state_rejects_unknown_label():
    with pytest.raises(ValueError, match="unknown polarization label"):
        basis_state("X")


def test_polstate_requires_normalization():
    with pytest.raises(ValueError, match="not normalized"):
        PolState(np.array([1.0, 1.0]))
    with pytest.raises(ValueError, match="2-vector"):
        PolState(np.array([1.0, 0.0, 0.0]))


def test_equals_up_to_phase():
    psi = random_state()
    rotated = PolState(np.exp(1j * 0.7) * psi.amplitudes)
    assert psi.equals_up_to_phase(rotated)
    assert not basis_state("H").equals_up_to_phase(basis_state("D"))


def test_density_matrix_rejects_unphysical_input():
    with pytest.raises(ValueError, match="Hermitian"):
        DensityMatrix(np.array([[0.5, 0.3], [0.1, 0.5]], dtype=complex))
    with pytest.raises(ValueError, match="trace"):
        DensityMatrix(0.7 * np.eye(2, dtype=complex))
    with pytest.raises(ValueError, match="positive"):
        DensityMatrix(np.diag([1.2, -0.2]).astype(complex))
    with pytest.raises(ValueError, match="2x2 or 4x4"):
        DensityMatrix(np.eye(3, dtype=complex) / 3.0)


def test_density_from_pure_is_rank_one():
    rho = density_from_pure(random_state())
    assert rho.dim == 2
    assert rho.purity() == pytest.approx(1.0, abs=1e-12)


def test_fidelity_of_pure_states_is_overlap_squared():
    for _ in range(20):
        a, b = random_state(), random_state()
        expected = abs(np.vdot(b.amplitudes, a.amplitudes)) ** 2
        assert fidelity(density_from_pure(a), b) == pytest.approx(expected, abs=1e-12)


def test_fidelity_is_two_by_two_only():
    rho4 = density_from_pure_4()
    with pytest.raises(ValueError, match="one-photon"):
        fidelity(rho4, basis_state("H"))


def density_from_pure_4():
    psi = bell_state(BellOutcome.PHI_PLUS)
    return DensityMatrix(np.outer(psi, psi.conj()))


def test_bell_states_are_orthonormal():
    vecs = [bell_state(o) for o in BellOutcome]
    gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
    assert np.allclose(gram, np.eye(4), atol=1e-12)


def test_concurrence_of_bell_and_product_states():
    for outcome in BellOutcome:
        psi = bell_state(outcome)
        rho = DensityMatrix(np.outer(psi, psi.conj()))
        assert concurrence(rho) == pytest.approx(1.0, abs=1e-9)
    hh = np.zeros((4, 4), dtype=complex)
    hh[0, 0] = 1.0
    assert concurrence(DensityMatrix(hh)) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("p,expected", [(1.0, 1.0), (0.5, 0.25), (1.0 / 3.0, 0.0), (0.2, 0.0)])
def test_concurrence_of_werner_states(p, expected):
    # p |Phi+><Phi+| + (1-p) I/4 has concurrence max(0, (3p-1)/2)
    psi = bell_state(BellOutcome.PHI_PLUS)
    rho = DensityMatrix(p * np.outer(psi, psi.conj()) + (1.0 - p) * np.eye(4) / 4.0)
    assert concurrence(rho) == pytest.approx(expected, abs=1e-9)


def test_concurrence_needs_two_photons():
    with pytest.raises(ValueError, match="4x4"):
        concurrence(density_from_pure(basis_state("H")))


def test_correction_unitaries():
    assert np.allclose(correction_unitary(BellOutcome.PHI_PLUS), SIGMA_0)
    assert np.allclose(correction_unitary(BellOutcome.PHI_MINUS), SIGMA_3)
    assert np.allclose(correction_unitary(BellOutcome.PSI_PLUS), SIGMA_1)
    assert np.allclose(correction_unitary(BellOutcome.PSI_MINUS), SIGMA_1 @ SIGMA_3)
    for outcome in BellOutcome:
        u = correction_unitary(outcome)
        assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


def test_pauli_correction_undoes_the_heralded_rotation():
    for outcome in BellOutcome:
        psi = random_state()
        u = correction_unitary(outcome)
        rotated = density_from_pure(PolState(u.conj().T @ psi.amplitudes))
        recovered = pauli_correction(rotated, outcome)
        assert fidelity(recovered, psi) == pytest.approx(1.0, abs=1e-12)


def test_nearest_physical_is_a_fixed_point_on_physical_states():
    rho = density_from_pure(random_state())
    mixed = DensityMatrix(0.6 * rho.entries + 0.4 * np.eye(2) / 2.0)
    assert np.allclose(nearest_physical(mixed.entries).entries, mixed.entries, atol=1e-12)


def test_nearest_physical_clips_negative_eigenvalues():
    fixed = nearest_physical(np.diag([1.1, -0.1]).astype(complex))
    assert np.allclose(fixed.entries, np.diag([1.0, 0.0]), atol=1e-12)


def test_nearest_physical_rejects_junk():
    with pytest.raises(ValueError, match="Hermitian"):
        nearest_physical(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    with pytest.raises(ValueError, match="no positive part"):
        nearest_physical(np.diag([-1.0, -1.0]).astype(complex))
