"""Projective tomography of photon 3 and Monte-Carlo error bars.

The waveplate+PBS analyzer measures the six projections H, V, D, A, R, L.
Counts are Poissonian with means shots * <p|rho|p>. Reconstruction is linear
inversion of the three Stokes parameters followed by projection onto the
physical set; uncertainties come from a parametric Poisson bootstrap
(resample counts around the observed values, reconstruct, take the spread),
10000 runs by default.

Randomness is counter-based: every draw comes from a Philox stream keyed by
(seed, run_index), so results are bit-identical no matter in which order (or
on how many workers) the runs execute. simulate_counts uses run index 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polmath import (
    SIGMA_1,
    SIGMA_2,
    SIGMA_3,
    DensityMatrix,
    PolState,
    basis_state,
    nearest_physical,
)

PROJECTION_LABELS = ("H", "V", "D", "A", "R", "L")
_BASIS_PAIRS = (("H", "V"), ("D", "A"), ("R", "L"))

DEFAULT_BOOTSTRAP_RUNS = 10000


@dataclass(frozen=True)
class TomographyCounts:
    """Counts per projection label; all six labels must be present."""

    counts: dict[str, int]

    def __post_init__(self):
        missing = [l for l in PROJECTION_LABELS if l not in self.counts]
        if missing:
            raise ValueError(f"missing projection counts for {missing}")
        for label, n in self.counts.items():
            if label not in PROJECTION_LABELS:
                raise ValueError(f"unknown projection label {label!r}")
            if n < 0 or int(n) != n:
                raise ValueError(f"count for {label} must be a non-negative integer, got {n!r}")
        object.__setattr__(self, "counts", {l: int(self.counts[l]) for l in PROJECTION_LABELS})

    def basis_total(self, pair: tuple[str, str]) -> int:
        return self.counts[pair[0]] + self.counts[pair[1]]


def _stream(seed: int, index: int) -> np.random.Generator:
    key = np.array([seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def born_probabilities(rho: DensityMatrix) -> dict[str, float]:
    """<p|rho|p> for the six projection labels."""
    probs = {}
    for label in PROJECTION_LABELS:
        amp = basis_state(label).amplitudes
        probs[label] = float(np.vdot(amp, rho.entries @ amp).real)
    return probs


def simulate_counts(rho: DensityMatrix, shots_per_basis: int, seed: int) -> TomographyCounts:
    """Draw Poisson counts with means shots * <p|rho|p>; deterministic in seed."""
    if not isinstance(rho, DensityMatrix):
        raise ValueError("simulate_counts needs a physical DensityMatrix")
    if rho.dim != 2:
        raise ValueError("tomography here is single-photon (2x2) only")
    if shots_per_basis <= 0:
        raise ValueError("shots_per_basis must be positive")
    rng = _stream(seed, 0)
    probs = born_probabilities(rho)
    counts = {}
    for label in PROJECTION_LABELS:  # fixed draw order for determinism
        mean = max(0.0, shots_per_basis * probs[label])
        counts[label] = int(rng.poisson(mean))
    return TomographyCounts(counts)


def reconstruct(counts: TomographyCounts) -> DensityMatrix:
    """Linear-inversion estimate projected onto the physical set.

    Stokes parameters are the normalized count differences of the three basis
    pairs; rho_hat = (I + s.sigma)/2 can be marginally unphysical at finite
    counts, so it goes through the eigenvalue clip-and-renormalize projection.
    """
    for pair in _BASIS_PAIRS:
        if counts.basis_total(pair) <= 0:
            raise ValueError(f"no counts in the {pair[0]}/{pair[1]} basis; cannot reconstruct")
    s_da = (counts.counts["D"] - counts.counts["A"]) / counts.basis_total(("D", "A"))
    s_rl = (counts.counts["R"] - counts.counts["L"]) / counts.basis_total(("R", "L"))
    s_hv = (counts.counts["H"] - counts.counts["V"]) / counts.basis_total(("H", "V"))
    rho_lin = 0.5 * (np.eye(2, dtype=complex) + s_da * SIGMA_1 + s_rl * SIGMA_2 + s_hv * SIGMA_3)
    return nearest_physical(rho_lin)


def monte_carlo_errors(
    counts: TomographyCounts,
    targets: list[PolState],
    runs: int = DEFAULT_BOOTSTRAP_RUNS,
    seed: int = 0,
) -> list[float]:
    """Bootstrap std dev of the fidelity to each target state.

    Each run resamples every projection count as Poisson(observed count),
    reconstructs, and scores against the targets; run i draws from the
    (seed, i) stream, so the result is independent of evaluation order.
    """
    if runs < 2:
        raise ValueError("need at least 2 Monte-Carlo runs")
    target_amps = [t.amplitudes for t in targets]
    observed = [float(counts.counts[l]) for l in PROJECTION_LABELS]
    fids = np.empty((runs, len(targets)))
    for i in range(runs):
        rng = _stream(seed, i)
        resampled = {
            label: int(rng.poisson(mean)) for label, mean in zip(PROJECTION_LABELS, observed)
        }
        rho = reconstruct(TomographyCounts(resampled))
        for j, amp in enumerate(target_amps):
            fids[i, j] = np.vdot(amp, rho.entries @ amp).real
    return [float(s) for s in fids.std(axis=0, ddof=1)]
