"""Exact finite-dimensional state algebra.

Density operators, ensembles, entropies, the Holevo quantity, qubit channel
actions, bipartite operations and the characterization of energy-preserving
qubit channels.  Every operation is a pure function of its inputs; all values
are immutable after construction and safe to share between threads.

Entropies are in bits (log base 2) with the convention 0*log2(0) = 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    IndexOutOfRange,
    NegativeProbability,
    NonNormalized,
    NotAState,
    NotUnitary,
)
from .rng import SplitMix64

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
# Hermitian eigensolvers on nearly pure states produce tiny negative
# eigenvalues; values in [EIG_FLOOR, 0) are clamped to 0, anything below is
# rejected as not a state.
EIG_FLOOR = -1e-10
PROB_SUM_TOL = 1e-10
ENSEMBLE_SUM_TOL = 1e-12
UNITARY_TOL = 1e-10

_SIGMA_Z = np.diag([1.0 + 0j, -1.0])


def _as_prob_vector(probs, sum_tol: float) -> np.ndarray:
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("probability vector must be a non-empty 1-d sequence")
    if p.min() < -1e-12:
        raise NegativeProbability(f"negative probability {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    if abs(p.sum() - 1.0) > sum_tol:
        raise NonNormalized(f"probabilities sum to {p.sum():.15f}, not 1")
    return p


@dataclass(frozen=True)
class DensityOperator:
    """A dim x dim Hermitian, positive-semidefinite, unit-trace matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotAState("density operator must be a square matrix")
        if np.abs(m - m.conj().T).max() > HERMITICITY_TOL:
            raise NotAState("matrix is not Hermitian within 1e-12")
        tr = m.trace()
        if abs(tr.real - 1.0) > TRACE_TOL or abs(tr.imag) > TRACE_TOL:
            raise NotAState(f"trace is {tr}, not 1 within 1e-12")
        if np.linalg.eigvalsh(m).min() < EIG_FLOOR:
            raise NotAState("matrix has an eigenvalue below -1e-10")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, amplitudes) -> "DensityOperator":
        """Projector onto a normalized state vector."""
        v = np.asarray(amplitudes, dtype=complex)
        if v.ndim != 1:
            raise NotAState("state vector must be 1-d")
        return cls(np.outer(v, v.conj()))

    @classmethod
    def diagonal(cls, probs) -> "DensityOperator":
        return cls(np.diag(_as_prob_vector(probs, ENSEMBLE_SUM_TOL).astype(complex)))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        return cls(np.eye(dim, dtype=complex) / dim)


@dataclass(frozen=True)
class Ensemble:
    """Probability-weighted collection of same-dimension density operators."""

    items: tuple

    def __post_init__(self):
        items = tuple((float(p), rho) for p, rho in self.items)
        if not items:
            raise DomainError("ensemble must contain at least one state")
        probs = np.array([p for p, _ in items])
        if probs.min() < -1e-12:
            raise NegativeProbability("ensemble probability below 0")
        if abs(probs.sum() - 1.0) > ENSEMBLE_SUM_TOL:
            raise NonNormalized(f"ensemble probabilities sum to {probs.sum():.15f}")
        dims = {rho.dim for _, rho in items}
        if len(dims) != 1:
            raise DimensionMismatch(f"mixed state dimensions {sorted(dims)}")
        object.__setattr__(self, "items", items)

    @property
    def dim(self) -> int:
        return self.items[0][1].dim

    @property
    def probs(self) -> np.ndarray:
        return np.array([p for p, _ in self.items])

    @property
    def states(self) -> tuple:
        return tuple(rho for _, rho in self.items)

    def average_state(self) -> DensityOperator:
        acc = sum(p * rho.matrix for p, rho in self.items)
        return DensityOperator(acc)


@dataclass(frozen=True)
class Hamiltonian:
    """Ladder Hamiltonian with levels 0, 1, ..., dim-1."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("Hamiltonian dimension must be positive")

    @property
    def levels(self) -> np.ndarray:
        return np.arange(self.dim, dtype=float)


@dataclass(frozen=True)
class ChannelSpec:
    """Tagged qubit channel: identity, dephasing(lambda) or unitary mixture.

    The mixture kind stores explicit (weight, 2x2 unitary) terms.  The
    energy-preserving constructor builds the phase-rotation unitaries
    cos(theta) I + i sin(theta) sigma_z; `mixture_of_unitaries` accepts
    arbitrary unitaries so that the energy-preservation check has genuine
    counterexamples to reject.
    """

    kind: str
    lam: float = None
    terms: tuple = None

    @classmethod
    def identity(cls) -> "ChannelSpec":
        return cls(kind="identity")

    @classmethod
    def dephasing(cls, lam: float) -> "ChannelSpec":
        if not 0.0 <= lam <= 1.0:
            raise DomainError(f"dephasing parameter {lam} outside [0, 1]")
        return cls(kind="dephasing", lam=float(lam))

    @classmethod
    def energy_preserving_mixture(cls, terms) -> "ChannelSpec":
        """Mixture of phase unitaries from (weight, theta) pairs."""
        built = tuple(
            (float(q), phase_unitary(theta)) for q, theta in terms
        )
        return cls._mixture(built)

    @classmethod
    def mixture_of_unitaries(cls, terms) -> "ChannelSpec":
        """Mixture from explicit (weight, 2x2 unitary) pairs."""
        built = []
        for q, u in terms:
            u = np.asarray(u, dtype=complex)
            _check_unitary(u)
            built.append((float(q), u))
        return cls._mixture(tuple(built))

    @classmethod
    def _mixture(cls, terms) -> "ChannelSpec":
        weights = np.array([q for q, _ in terms])
        if weights.min() < -1e-12:
            raise NegativeProbability("mixture weight below 0")
        if abs(weights.sum() - 1.0) > ENSEMBLE_SUM_TOL:
            raise NonNormalized(f"mixture weights sum to {weights.sum():.15f}")
        frozen = []
        for q, u in terms:
            u = np.array(u, dtype=complex)
            u.setflags(write=False)
            frozen.append((q, u))
        return cls(kind="mixture", terms=tuple(frozen))

    def unitaries(self) -> list:
        """The channel as a list of (weight, unitary) terms."""
        if self.kind == "identity":
            return [(1.0, np.eye(2, dtype=complex))]
        if self.kind == "dephasing":
            return [(self.lam, np.eye(2, dtype=complex)), (1.0 - self.lam, _SIGMA_Z)]
        return list(self.terms)


def phase_unitary(theta: float) -> np.ndarray:
    """cos(theta) I + i sin(theta) sigma_z; commutes with the ladder H."""
    return np.cos(theta) * np.eye(2, dtype=complex) + 1j * np.sin(theta) * _SIGMA_Z


def _check_unitary(u: np.ndarray):
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotUnitary("unitary must be a square matrix")
    delta = u.conj().T @ u - np.eye(u.shape[0])
    if np.abs(delta).max() > UNITARY_TOL:
        raise NotUnitary("matrix is not unitary within 1e-10")


def shannon_entropy(probs) -> float:
    """-sum p log2 p of a normalized probability vector, in bits."""
    p = _as_prob_vector(probs, PROB_SUM_TOL)
    nz = p[p > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def binary_entropy(x: float) -> float:
    """Shannon entropy of (x, 1-x); symmetric about 1/2."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary entropy argument {x} outside [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return float(-(x * np.log2(x) + (1.0 - x) * np.log2(1.0 - x)))


def von_neumann_entropy(rho: DensityOperator) -> float:
    """Shannon entropy of the eigenvalue spectrum, in bits."""
    eigs = np.linalg.eigvalsh(rho.matrix)
    eigs = np.clip(eigs, 0.0, None)
    nz = eigs[eigs > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def holevo_chi(ens: Ensemble) -> float:
    """S(rho_bar) - sum_i p_i S(rho_i)."""
    avg = von_neumann_entropy(ens.average_state())
    members = sum(p * von_neumann_entropy(rho) for p, rho in ens.items)
    return avg - members


def apply_channel(ch: ChannelSpec, rho: DensityOperator) -> DensityOperator:
    """Channel action; dephasing and mixtures act on qubits only."""
    if ch.kind == "identity":
        return rho
    if rho.dim != 2:
        raise DimensionMismatch(f"{ch.kind} channel needs dim 2, got {rho.dim}")
    m = rho.matrix
    if ch.kind == "dephasing":
        out = ch.lam * m + (1.0 - ch.lam) * (_SIGMA_Z @ m @ _SIGMA_Z)
    else:
        out = sum(q * (u @ m @ u.conj().T) for q, u in ch.terms)
    return DensityOperator(out)


def energy(rho: DensityOperator, h: Hamiltonian = None) -> float:
    """Tr(rho H) for the ladder Hamiltonian."""
    if h is None:
        h = Hamiltonian(rho.dim)
    if h.dim != rho.dim:
        raise DimensionMismatch(f"H dim {h.dim} != state dim {rho.dim}")
    return float((h.levels * rho.matrix.diagonal().real).sum())


def purity(rho: DensityOperator) -> float:
    """Tr(rho^2), in [1/dim, 1]."""
    return float(np.vdot(rho.matrix, rho.matrix).real)


def qft_phase_state(k: int, weights) -> DensityOperator:
    """Projector onto sum_n omega^{kn} sqrt(p_n) |n> with omega = e^{2 pi i/d}."""
    w = _as_prob_vector(weights, PROB_SUM_TOL)
    d = w.size
    if not 0 <= k < d:
        raise IndexOutOfRange(f"k={k} outside [0, {d})")
    n = np.arange(d)
    amps = np.exp(2j * np.pi * k * n / d) * np.sqrt(w)
    return DensityOperator.from_pure(amps)


def tensor(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    return DensityOperator(np.kron(a.matrix, b.matrix))


def _split_bipartite(rho: DensityOperator, dims) -> tuple:
    da, db = dims
    if da * db != rho.dim:
        raise DimensionMismatch(f"dims {dims} incompatible with dim {rho.dim}")
    return rho.matrix.reshape(da, db, da, db)


def partial_trace(rho: DensityOperator, dims, keep: str) -> DensityOperator:
    """Reduced state of subsystem 'A' or 'B' of a bipartite operator."""
    t = _split_bipartite(rho, dims)
    if keep == "A":
        return DensityOperator(np.trace(t, axis1=1, axis2=3))
    if keep == "B":
        return DensityOperator(np.trace(t, axis1=0, axis2=2))
    raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")


def apply_local_unitary(u, rho: DensityOperator, dims) -> DensityOperator:
    """(u x I) rho (u x I)^dagger with u acting on subsystem A."""
    da, db = dims
    u = np.asarray(u, dtype=complex)
    if u.shape != (da, da):
        raise DimensionMismatch(f"unitary shape {u.shape} != ({da}, {da})")
    _check_unitary(u)
    if da * db != rho.dim:
        raise DimensionMismatch(f"dims {dims} incompatible with dim {rho.dim}")
    full = np.kron(u, np.eye(db))
    return DensityOperator(full @ rho.matrix @ full.conj().T)


def apply_channel_local(ch: ChannelSpec, rho: DensityOperator, dims) -> DensityOperator:
    """Channel on subsystem A of a bipartite state, identity on B."""
    if ch.kind == "identity":
        return rho
    da, db = dims
    if da != 2:
        raise DimensionMismatch("qubit channels act on a dim-2 subsystem")
    acc = np.zeros_like(rho.matrix)
    for q, u in ch.unitaries():
        full = np.kron(u, np.eye(db))
        acc = acc + q * (full @ rho.matrix @ full.conj().T)
    return DensityOperator(acc)


def random_pure_state(dim: int, rng: SplitMix64) -> DensityOperator:
    """Projector of a normalized complex-Gaussian vector."""
    v = np.array([complex(rng.gauss(), rng.gauss()) for _ in range(dim)])
    return DensityOperator.from_pure(v / np.linalg.norm(v))


def random_mixed_state(dim: int, rng: SplitMix64) -> DensityOperator:
    """Random convex mixture of two Gaussian-vector projectors."""
    t = rng.uniform()
    a = random_pure_state(dim, rng)
    b = random_pure_state(dim, rng)
    return DensityOperator(t * a.matrix + (1.0 - t) * b.matrix)


def is_energy_preserving(ch: ChannelSpec, trials: int = 64, seed: int = 0x5EED) -> bool:
    """Lemma-style characterization of qubit energy preservation.

    True iff every mixture unitary commutes with the ladder Hamiltonian
    within 1e-10 and Tr(Lambda(rho) H) = Tr(rho H) within 1e-10 on `trials`
    seeded pseudo-random qubit states.
    """
    h = np.diag([0.0 + 0j, 1.0])
    for _, u in ch.unitaries():
        if np.abs(u @ h - h @ u).max() > 1e-10:
            return False
    rng = SplitMix64(seed)
    for _ in range(trials):
        rho = random_mixed_state(2, rng)
        if abs(energy(apply_channel(ch, rho)) - energy(rho)) > 1e-10:
            return False
    return True
