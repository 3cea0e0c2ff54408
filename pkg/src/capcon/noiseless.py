"""Energy-constrained capacity of the noiseless channel.

The capacity saturates at log2(d) once the bound reaches the emergent scale
(d-1)/2 and equals the entropy of the thermal weights below it; it is
identical for the average and the strict constraint because the phase-encoded
optimal ensemble holds every member at energy exactly E.
"""
from __future__ import annotations

import math

import numpy as np

from . import quantum, thermal
from .errors import DomainError
from .results import CapacityResult

INFINITE = math.inf


def optimal_encoding(d: int, energy: float) -> quantum.Ensemble:
    """d equiprobable phase-encoded projectors over the thermal weights.

    Each member has energy exactly min(E, (d-1)/2) and the ensemble average
    is the thermal state itself: the relative phases are d-th roots of unity,
    so every off-diagonal term of the average cancels.
    """
    if energy <= 0.0:
        raise DomainError(f"encoding needs energy > 0, got {energy}")
    scale = thermal.emergent_scale(d)
    tw = thermal.thermal_weights(d, min(energy, scale))
    states = [quantum.qft_phase_state(k, tw.weights) for k in range(d)]
    return quantum.Ensemble(tuple((1.0 / d, s) for s in states))


def noiseless_capacity(d: int, energy: float, constraint: str = "average") -> CapacityResult:
    """Theorem-level capacity: log2 d above the emergent scale, H(p^E) below."""
    if constraint not in ("average", "strict"):
        raise DomainError(f"unknown constraint {constraint!r}")
    if energy < 0.0:
        raise DomainError(f"energy bound {energy} below 0")
    scale = thermal.emergent_scale(d)
    if energy == 0.0:
        ground = quantum.DensityOperator.diagonal([1.0] + [0.0] * (d - 1))
        return CapacityResult(0.0, optimal_ensemble=quantum.Ensemble(((1.0, ground),)))
    if energy >= scale:
        return CapacityResult(math.log2(d), optimal_ensemble=optimal_encoding(d, energy))
    tw = thermal.thermal_weights(d, energy)
    return CapacityResult(
        quantum.shannon_entropy(tw.weights), optimal_ensemble=optimal_encoding(d, energy)
    )


def infinite_dim_capacity(energy: float) -> float:
    """(1+E) log2(1+E) - E log2 E, the d -> infinity limit."""
    if energy < 0.0:
        raise DomainError(f"energy bound {energy} below 0")
    if energy == 0.0:
        return 0.0
    return (1.0 + energy) * math.log2(1.0 + energy) - energy * math.log2(energy)


def capacity_curve(energy: float, dims) -> list:
    """Capacity against dimension at fixed E, via the partition-function route.

    Below the emergent scale the value is (beta* E + ln Z) log2(e), an
    independent path from the entropy-of-weights formula used by
    `noiseless_capacity`.  `math.inf` selects the closed-form limit curve.
    """
    if energy <= 0.0:
        raise DomainError(f"energy bound {energy} must be positive")
    out = []
    for d in dims:
        if d == INFINITE:
            out.append((d, infinite_dim_capacity(energy)))
            continue
        scale = thermal.emergent_scale(d)
        if energy >= scale:
            out.append((d, math.log2(d)))
            continue
        beta = thermal.solve_beta(d, energy)
        z = thermal.partition_function(d, beta)
        out.append((d, (beta * energy + math.log(z)) * math.log2(math.e)))
    return out


def bloch_ensemble_oracle(energy: float, n_theta: int = 1000, n_phi: int = 1000) -> float:
    """Brute-force lower bound on the qubit capacity at average energy E.

    Grid over pure states psi(theta, phi); each is paired with the ground
    state, whose weight is fixed by the energy constraint
    w * E_psi = E.  chi of a pure-state pair is the entropy of the mixture,
    evaluated from its Bloch vector.  Independent of the thermal-state code
    path.
    """
    if not 0.0 < energy <= 0.5:
        raise DomainError(f"oracle defined for 0 < E <= 1/2, got {energy}")
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    t, p = np.meshgrid(theta, phi, indexing="ij")
    state_energy = np.sin(t / 2.0) ** 2
    feasible = state_energy >= energy
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(feasible, energy / state_energy, np.nan)
    rx = w * np.sin(t) * np.cos(p)
    ry = w * np.sin(t) * np.sin(p)
    rz = w * np.cos(t) + (1.0 - w)
    r = np.sqrt(rx * rx + ry * ry + rz * rz)
    lam = np.clip((1.0 - np.clip(r, 0.0, 1.0)) / 2.0, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        chi = -(lam * np.log2(lam) + (1.0 - lam) * np.log2(1.0 - lam))
    chi = np.nan_to_num(chi, nan=0.0)
    chi[~feasible] = -np.inf
    return float(chi.max())
