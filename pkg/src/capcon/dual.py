"""Capacities under a joint average-energy and strict-purity bound.

The purity bound L restricts encoding states to the Bloch ball of radius
r_L = sqrt(2L - 1); it induces a second energy scale r_L^- = (1 - r_L)/2
below which no state satisfies both constraints and the capacity vanishes.
All formulas are for qubits; the optimal ensembles are built from states on
the purity sphere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quantum
from .errors import DegenerateRadius, DomainError
from .results import CapacityResult


@dataclass(frozen=True)
class DualQuery:
    """Energy bound E >= 0 and purity bound L in [1/2, 1] with the derived
    Bloch radius quantities."""

    energy: float
    purity: float

    def __post_init__(self):
        if self.energy < 0.0:
            raise DomainError(f"energy bound {self.energy} below 0")
        if not 0.5 <= self.purity <= 1.0:
            raise DomainError(f"purity bound {self.purity} outside [1/2, 1]")

    @property
    def radius(self) -> float:
        return math.sqrt(2.0 * self.purity - 1.0)

    @property
    def r_minus(self) -> float:
        return (1.0 - self.radius) / 2.0

    @property
    def r_plus(self) -> float:
        return (1.0 + self.radius) / 2.0


def _sphere_state(z: float, x: float = 0.0) -> quantum.DensityOperator:
    """Qubit state with Bloch vector (x, 0, z)."""
    m = 0.5 * np.array([[1.0 + z, x], [x, 1.0 - z]], dtype=complex)
    return quantum.DensityOperator(m)


def dual_noiseless_capacity(energy: float, purity: float) -> CapacityResult:
    """Three regimes: 1 - H(r^-) above E = 1/2, H(E) - H(r^-) down to
    E = r^-, and zero below, where the energy plane misses the Bloch ball."""
    q = DualQuery(energy, purity)
    rm = q.r_minus
    if energy >= 0.5:
        ens = quantum.Ensemble(
            ((0.5, _sphere_state(q.radius)), (0.5, _sphere_state(-q.radius)))
        )
        return CapacityResult(
            1.0 - quantum.binary_entropy(rm), optimal_ensemble=ens, params={"p": 0.5}
        )
    if energy >= rm:
        # two states on the purity sphere, both on the energy plane z = 1-2E,
        # at opposite azimuths so the equal mixture is diagonal
        z = 1.0 - 2.0 * energy
        x = math.sqrt(max(q.radius**2 - z**2, 0.0))
        ens = quantum.Ensemble(
            ((0.5, _sphere_state(z, x)), (0.5, _sphere_state(z, -x)))
        )
        value = quantum.binary_entropy(energy) - quantum.binary_entropy(rm)
        return CapacityResult(value, optimal_ensemble=ens, params={"p": 0.5})
    return CapacityResult(0.0)


def dual_optimal_probability(energy: float, purity: float) -> float:
    """Weight of the low-energy sphere state in the optimal noisy ensemble."""
    q = DualQuery(energy, purity)
    if energy >= 0.5:
        return 0.5
    if q.radius == 0.0:
        raise DegenerateRadius("L = 1/2 admits only the maximally mixed state")
    if energy < q.r_minus:
        raise DomainError(f"energy {energy} below the feasibility scale {q.r_minus}")
    return 0.5 * (1.0 + (1.0 - 2.0 * energy) / q.radius)


def dual_dephasing_equiprob_capacity(energy: float, purity: float) -> CapacityResult:
    """Complete dephasing, equiprobable messages: the low state sits on the
    purity sphere at energy r^-, the partner carries 2E - r^- to balance."""
    q = DualQuery(energy, purity)
    rm = q.r_minus
    if energy >= 0.5:
        ens = quantum.Ensemble(
            ((0.5, _sphere_state(q.radius)), (0.5, _sphere_state(-q.radius)))
        )
        return CapacityResult(1.0 - quantum.binary_entropy(rm), optimal_ensemble=ens)
    if energy >= rm:
        high = 2.0 * energy - rm
        ens = quantum.Ensemble(
            (
                (0.5, quantum.DensityOperator.diagonal([1.0 - rm, rm])),
                (0.5, quantum.DensityOperator.diagonal([1.0 - high, high])),
            )
        )
        value = quantum.binary_entropy(energy) - 0.5 * (
            quantum.binary_entropy(rm) + quantum.binary_entropy(high)
        )
        return CapacityResult(value, optimal_ensemble=ens)
    return CapacityResult(0.0)


def dual_dephasing_optimal_capacity(energy: float, purity: float) -> CapacityResult:
    """Complete dephasing with optimized probabilities: same value as the
    noiseless capacity, achieved by the two diagonal sphere states with the
    constraint-dependent weight from `dual_optimal_probability`."""
    q = DualQuery(energy, purity)
    rm, rp = q.r_minus, q.r_plus
    if energy < rm:
        return CapacityResult(0.0)
    value = dual_noiseless_capacity(energy, purity).value
    if q.radius == 0.0 and energy < 0.5:
        raise DegenerateRadius("L = 1/2 admits only the maximally mixed state")
    p = dual_optimal_probability(energy, purity)
    rho_plus = quantum.DensityOperator.diagonal([rm, rp])   # energy r^+
    rho_minus = quantum.DensityOperator.diagonal([rp, rm])  # energy r^-
    ens = quantum.Ensemble(((1.0 - p, rho_plus), (p, rho_minus)))
    return CapacityResult(value, optimal_ensemble=ens, params={"p": p})
