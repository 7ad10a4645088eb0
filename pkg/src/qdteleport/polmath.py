"""Polarization-qubit linear algebra: states, density matrices, Pauli/Bell tools.

Conventions used everywhere in this package:

* single-photon basis (H, V) with H = (1, 0), V = (0, 1)
* D/A = (H ± V)/sqrt(2), R/L = (H ± iV)/sqrt(2)
* two-photon basis order (HH, HV, VH, VV)
* sigma1 = sigma_x and sigma3 = sigma_z in the (H, V) basis
* global phases are physically meaningless and dropped/ignored throughout
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

# tolerances for double-precision dense algebra on 2x2 / 4x4 matrices
ATOL_ALGEBRA = 1e-12
ATOL_POSITIVITY = 1e-10

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

_SQ2 = np.sqrt(2.0)

_BASIS_VECTORS = {
    "H": np.array([1.0, 0.0], dtype=complex),
    "V": np.array([0.0, 1.0], dtype=complex),
    "D": np.array([1.0, 1.0], dtype=complex) / _SQ2,
    "A": np.array([1.0, -1.0], dtype=complex) / _SQ2,
    "R": np.array([1.0, 1.0j], dtype=complex) / _SQ2,
    "L": np.array([1.0, -1.0j], dtype=complex) / _SQ2,
}


class BellOutcome(Enum):
    """The four Bell states of two polarization qubits."""

    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"
    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"


@dataclass(frozen=True)
class PolState:
    """Pure polarization state; a normalized complex 2-vector in the (H, V) basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (2,):
            raise ValueError(f"polarization state must be a 2-vector, got shape {amp.shape}")
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > ATOL_ALGEBRA:
            raise ValueError(f"state not normalized: |psi| = {norm!r}")
        object.__setattr__(self, "amplitudes", amp)

    def equals_up_to_phase(self, other: "PolState", atol: float = ATOL_ALGEBRA) -> bool:
        """Equality modulo global phase: |<self|other>| == 1."""
        overlap = abs(np.vdot(self.amplitudes, other.amplitudes))
        return bool(abs(overlap - 1.0) <= atol)


@dataclass(frozen=True)
class DensityMatrix:
    """2x2 (one photon) or 4x4 (two photons) density operator.

    Construction enforces physicality: Hermitian within 1e-12, unit trace within
    1e-12, eigenvalues above -1e-10.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape not in [(2, 2), (4, 4)]:
            raise ValueError(f"density matrix must be 2x2 or 4x4, got {m.shape}")
        if not np.allclose(m, m.conj().T, atol=ATOL_ALGEBRA, rtol=0.0):
            raise ValueError("density matrix not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > ATOL_ALGEBRA:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        evals = np.linalg.eigvalsh(m)
        if evals.min() < -ATOL_POSITIVITY:
            raise ValueError(f"density matrix not positive (min eigenvalue {evals.min():.3e})")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)


def basis_state(label: str) -> PolState:
    """One of the six tomography states H, V, D, A, R, L as a PolState."""
    try:
        return PolState(_BASIS_VECTORS[label])
    except KeyError:
        raise ValueError(f"unknown polarization label {label!r}; expected one of H,V,D,A,R,L") from None


def bell_state(outcome: BellOutcome) -> np.ndarray:
    """Bell-state vector in the (HH, HV, VH, VV) basis.

    Phi+/- = (HH +/- VV)/sqrt2, Psi+/- = (HV +/- VH)/sqrt2.
    """
    if outcome is BellOutcome.PHI_PLUS:
        vec = [1.0, 0.0, 0.0, 1.0]
    elif outcome is BellOutcome.PHI_MINUS:
        vec = [1.0, 0.0, 0.0, -1.0]
    elif outcome is BellOutcome.PSI_PLUS:
        vec = [0.0, 1.0, 1.0, 0.0]
    elif outcome is BellOutcome.PSI_MINUS:
        vec = [0.0, 1.0, -1.0, 0.0]
    else:  # pragma: no cover - enum is exhaustive
        raise ValueError(f"unknown Bell outcome {outcome!r}")
    return np.array(vec, dtype=complex) / _SQ2


def correction_unitary(outcome: BellOutcome) -> np.ndarray:
    """Pauli correction heralded by a Bell outcome (global sign dropped).

    Phi+ -> I, Phi- -> sigma3, Psi+ -> sigma1, Psi- -> sigma1 sigma3.
    """
    return {
        BellOutcome.PHI_PLUS: SIGMA_0,
        BellOutcome.PHI_MINUS: SIGMA_3,
        BellOutcome.PSI_PLUS: SIGMA_1,
        BellOutcome.PSI_MINUS: SIGMA_1 @ SIGMA_3,
    }[outcome]


def density_from_pure(psi: PolState) -> DensityMatrix:
    """|psi><psi| as a DensityMatrix."""
    if not isinstance(psi, PolState):
        psi = PolState(np.asarray(psi, dtype=complex))
    amp = psi.amplitudes
    return DensityMatrix(np.outer(amp, amp.conj()))


def fidelity(rho: DensityMatrix, target: PolState) -> float:
    """Overlap <target| rho |target> of a 2x2 state with a pure target."""
    if rho.dim != 2:
        raise ValueError(f"fidelity expects a one-photon (2x2) density matrix, got {rho.dim}x{rho.dim}")
    amp = target.amplitudes
    val = np.vdot(amp, rho.entries @ amp)
    # rho Hermitian and target normalized make this real to rounding
    return float(val.real)


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-photon (4x4) density matrix.

    C = max(0, l1 - l2 - l3 - l4) where l_i are the decreasing square roots of
    the eigenvalues of rho (sy x sy) rho* (sy x sy).
    """
    if rho.dim != 4:
        raise ValueError("concurrence is defined for 4x4 two-photon states")
    yy = np.kron(SIGMA_2, SIGMA_2)
    r = rho.entries @ yy @ rho.entries.conj() @ yy
    evals = np.linalg.eigvals(r).real
    evals[evals < 0.0] = 0.0  # rounding can push tiny eigenvalues negative
    lams = np.sort(np.sqrt(evals))[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


def pauli_correction(rho: DensityMatrix, outcome: BellOutcome) -> DensityMatrix:
    """Apply the heralded correction unitary: U rho U^dagger."""
    if rho.dim != 2:
        raise ValueError("pauli_correction acts on one-photon (2x2) states")
    u = correction_unitary(outcome)
    return DensityMatrix(u @ rho.entries @ u.conj().T)


def nearest_physical(rho_raw: np.ndarray) -> DensityMatrix:
    """Project a Hermitian matrix onto the physical set.

    Negative eigenvalues are clipped to zero and the trace renormalized to 1;
    already-physical input is a fixed point. Used by the tomography linear
    inversion, which can leave slightly unphysical estimates.
    """
    m = np.asarray(rho_raw, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, atol=1e-9, rtol=0.0):
        raise ValueError("nearest_physical expects a Hermitian matrix")
    evals, evecs = np.linalg.eigh(m)
    evals = np.clip(evals, 0.0, None)
    total = evals.sum()
    if total <= 0.0:
        raise ValueError("matrix has no positive part; cannot normalize")
    evals /= total
    return DensityMatrix((evecs * evals) @ evecs.conj().T)
