"""Bell-state measurement of photons 1 and 2.

Writing the joint state of the input photon and the entangled pair in the Bell
basis of photons 1 and 2,

    |xi>_1 |Phi+>_23 = 1/2 ( |Phi+> |xi> + |Phi-> sigma3|xi>
                           + |Psi+> sigma1|xi> - |Psi-> sigma1 sigma3|xi> ),

every Bell outcome occurs with probability exactly 1/4 and heralds a known
Pauli on photon 3. The fiber beamsplitter + polarizing splitters can only
herald Psi+ and Psi-, and only with partially indistinguishable photons: the
realized measurement is the positive operator

    Pi_eff = V |Psi_pm><Psi_pm| + (1-V)/2 (|HV><HV| + |VH><VH|),

which interpolates between the ideal Bell projector (V=1) and a bare
cross-polarized coincidence (V=0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polmath import (
    BellOutcome,
    PolState,
    bell_state,
    correction_unitary,
)

_DECOMPOSITION_ORDER = (
    BellOutcome.PHI_PLUS,
    BellOutcome.PHI_MINUS,
    BellOutcome.PSI_PLUS,
    BellOutcome.PSI_MINUS,
)


@dataclass(frozen=True)
class BsmProjector:
    """Effective (generally non-projective) BSM operator for one heralded outcome."""

    outcome: BellOutcome
    visibility: float
    effective_operator: np.ndarray


def bell_decomposition(xi: PolState) -> list[tuple[BellOutcome, float, PolState]]:
    """The four (outcome, probability, conditional state of photon 3) terms.

    The conditional states are sigma-rotated copies of xi (global sign
    dropped); the probabilities are 1/4 for every normalized input, which is
    an algebraic identity of the decomposition, so they are returned exactly.
    """
    if not isinstance(xi, PolState):
        xi = PolState(np.asarray(xi, dtype=complex))
    terms = []
    for outcome in _DECOMPOSITION_ORDER:
        u = correction_unitary(outcome)
        # conditioning applies the *inverse* rotation; the correction unitaries
        # are self-inverse up to global sign, which we drop anyway
        conditional = PolState(u @ xi.amplitudes)
        terms.append((outcome, 0.25, conditional))
    return terms


def effective_projector(outcome: BellOutcome, visibility: float) -> BsmProjector:
    """BSM operator for Psi+ or Psi- at two-photon-interference visibility V."""
    if outcome not in (BellOutcome.PSI_PLUS, BellOutcome.PSI_MINUS):
        raise ValueError(f"the linear-optics BSM cannot herald {outcome.value}; only PsiPlus/PsiMinus")
    if not 0.0 <= visibility <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {visibility}")
    psi = bell_state(outcome)
    coherent = np.outer(psi, psi.conj())
    classical = np.zeros((4, 4), dtype=complex)
    classical[1, 1] = 0.5  # |HV><HV|
    classical[2, 2] = 0.5  # |VH><VH|
    op = visibility * coherent + (1.0 - visibility) * classical
    return BsmProjector(outcome=outcome, visibility=float(visibility), effective_operator=op)


def detection_pattern_to_outcome(click1, click2) -> BellOutcome | None:
    """Map a two-click pattern to the heralded Bell state.

    Each click is a (output_port, polarization) pair with polarization 'H' or
    'V'. Same port with orthogonal polarizations heralds Psi+; different ports
    with orthogonal polarizations herald Psi-; co-polarized patterns are
    ambiguous (Phi+/- are not resolvable with linear optics) and map to None.
    """
    port1, pol1 = click1
    port2, pol2 = click2
    for pol in (pol1, pol2):
        if pol not in ("H", "V"):
            raise ValueError(f"polarization label must be 'H' or 'V', got {pol!r}")
    if port1 == port2 and pol1 == pol2:
        raise ValueError("two clicks on the same detector do not form a coincidence")
    if pol1 == pol2:
        return None
    return BellOutcome.PSI_PLUS if port1 == port2 else BellOutcome.PSI_MINUS
