"""Gibbs-state machinery for the ladder Hamiltonian.

Partition function, mean energy, inverse-temperature root solving and the
thermal weight vectors p_n = exp(-n*beta)/Z.  beta is dimensionless
(inverse temperature absorbed into the unit energy spacing).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# |mean_energy(d, solve_beta(d, E)) - E| stays below this times max(1, E).
SOLVE_TOL = 1e-12


def emergent_scale(d: int) -> float:
    """(d-1)/2: the mean energy of the maximally mixed state."""
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    return (d - 1) / 2.0


def partition_function(d: int, beta: float) -> float:
    """Z = sum_n exp(-n beta); equals d at beta = 0."""
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    if beta == 0.0:
        return float(d)
    # All terms are non-negative and bounded by 1 for beta > 0; direct
    # summation is stable for every beta and exact in the beta -> 0 limit.
    return float(np.exp(-beta * np.arange(d)).sum())


def mean_energy(d: int, beta: float) -> float:
    """Mean level of the Gibbs weights, strictly decreasing in beta.

    Evaluated as the weighted sum sum_n n e^{-n beta} / Z rather than via
    the closed form 1/(e^beta - 1) - d/(e^{d beta} - 1): the closed form
    loses roughly 4e-16/beta absolute accuracy from cancellation as
    beta -> 0, which would break the root-solving contract near the
    uniform limit.  The direct sum has no cancellation.
    """
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    if beta == 0.0:
        return (d - 1) / 2.0
    n = np.arange(d)
    w = np.exp(-beta * n)
    return float((n * w).sum() / w.sum())


def solve_beta(d: int, energy: float) -> float:
    """Invert mean_energy by bracketed bisection.

    Valid for 0 < E <= (d-1)/2; E = (d-1)/2 returns exactly 0.  Bisection is
    derivative-free and unconditionally convergent because mean_energy is
    strictly decreasing in beta.
    """
    scale = emergent_scale(d)
    if not 0.0 < energy <= scale:
        raise DomainError(f"energy {energy} outside (0, {scale}]")
    if energy == scale:
        return 0.0
    lo, hi = 0.0, 1.0
    while mean_energy(d, hi) > energy:
        hi *= 2.0
        if hi > 1e9:  # exp(-n beta) underflows long before this
            break
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if mean_energy(d, mid) > energy:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ThermalWeights:
    """Solved Gibbs weights of the d-level ladder at mean energy E."""

    dim: int
    energy: float
    beta: float
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        n = np.arange(self.dim)
        z = np.exp(-self.beta * n).sum()
        if np.abs(w - np.exp(-self.beta * n) / z).max() > 1e-10:
            raise DomainError("weights do not match exp(-n beta)/Z")
        if abs(float((n * w).sum()) - self.energy) > 1e-9:
            raise DomainError("weights do not reproduce the target energy")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)


def thermal_weights(d: int, energy: float) -> ThermalWeights:
    """Gibbs weights with mean level exactly `energy` (root-solved beta)."""
    beta = solve_beta(d, energy)
    w = np.exp(-beta * np.arange(d))
    w /= w.sum()
    return ThermalWeights(dim=d, energy=energy, beta=beta, weights=w)


def d3_closed_form_weights(energy: float) -> np.ndarray:
    """Qutrit thermal weights in closed form, valid for 0 < E < 1."""
    if not 0.0 < energy < 1.0:
        raise DomainError(f"energy {energy} outside (0, 1)")
    p0 = (7.0 - 3.0 * energy - math.sqrt(1.0 + 6.0 * energy - 3.0 * energy**2)) / 6.0
    p1 = 2.0 - 2.0 * p0 - energy
    p2 = 1.0 - p0 - p1
    return np.array([p0, p1, p2])
