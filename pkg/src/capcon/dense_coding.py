"""Energy-constrained dense coding.

The protocol shares the correlated pure state sum_n sqrt(p_n^{E'}) |n,n>
whose sender marginal is thermal at energy E', encodes the d^2 messages with
the shift/phase unitaries X^k Z^m grouped into d sets V_k used with weight
q_k/d, and trades entanglement against encoding activity under the energy
bound.  The capacity splits as H({q_k}) plus the entanglement entropy, so
the search reduces to the group weights and E'.

The general-encoding route (`dc_dephasing_capacity`, `dc_hierarchy`) instead
maximizes the Holevo quantity over four arbitrary encoding unitaries,
probabilities and E' with a stochastic-ranking strategy, which is the
independent check on the protocol values and the only route once the
complete-dephasing channel acts on the sender qubit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import noiseless, optimize, quantum, thermal
from .errors import DimensionMismatch, DomainError, IndexOutOfRange
from .results import CapacityResult, OptimizerInfo
from .rng import SplitMix64

E_PRIME_FLOOR = 1e-6
_DC_MAX_EVALS = 6000
_DC_REFINE_ITERS = 3000


@dataclass(frozen=True)
class SharedState:
    """Pure correlated state sum_n sqrt(p_n^{E'}) |n,n> with thermal marginal."""

    d: int
    e_prime: float
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.size != self.d:
            raise DimensionMismatch("weights length must equal d")
        n = np.arange(self.d)
        if abs(float((n * w).sum()) - self.e_prime) > 1e-10:
            raise DomainError("marginal energy does not match e_prime")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_energy(cls, d: int, e_prime: float) -> "SharedState":
        tw = thermal.thermal_weights(d, e_prime)
        return cls(d=d, e_prime=e_prime, weights=tw.weights)

    @property
    def vector(self) -> np.ndarray:
        v = np.zeros(self.d * self.d, dtype=complex)
        for n in range(self.d):
            v[n * self.d + n] = math.sqrt(self.weights[n])
        return v

    def entanglement(self) -> float:
        return quantum.shannon_entropy(self.weights)


@dataclass(frozen=True)
class EncodingPlan:
    """Group weights q_k (each unitary in V_k used with q_k/d) and the
    energies E'_k of the sender marginal after a V_k encoding."""

    d: int
    q: np.ndarray
    shifted_energies: np.ndarray

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        e = np.array(self.shifted_energies, dtype=float)
        if q.size != self.d or e.size != self.d:
            raise DimensionMismatch("plan vectors must have length d")
        if abs(q.sum() - 1.0) > 1e-12:
            raise DomainError(f"group weights sum to {q.sum():.15f}")
        q.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "shifted_energies", e)

    @classmethod
    def build(cls, q, psi: SharedState) -> "EncodingPlan":
        shifted = np.array([shifted_energy(k, psi.weights) for k in range(psi.d)])
        return cls(d=psi.d, q=np.asarray(q, dtype=float), shifted_energies=shifted)

    def mean_energy(self) -> float:
        return float(self.q @ self.shifted_energies)


def shifted_energy(k: int, weights) -> float:
    """sum_n ((n+k) mod d) p_n: sender marginal energy after a V_k unitary."""
    w = np.asarray(weights, dtype=float)
    d = w.size
    if not 0 <= k < d:
        raise IndexOutOfRange(f"k={k} outside [0, {d})")
    n = np.arange(d)
    return float((((n + k) % d) * w).sum())


def unconstrained_dc_capacity(psi: SharedState) -> float:
    """log2 d plus the entanglement entropy of the shared state."""
    return math.log2(psi.d) + psi.entanglement()


def shift_matrix(d: int) -> np.ndarray:
    """X |n> = |n+1 mod d>."""
    x = np.zeros((d, d), dtype=complex)
    for j in range(d):
        x[(j + 1) % d, j] = 1.0
    return x


def phase_matrix(d: int) -> np.ndarray:
    """Z |n> = omega^n |n> with omega = e^{2 pi i / d}."""
    n = np.arange(d)
    return np.diag(np.exp(2j * np.pi * n / d))


def protocol_unitary(d: int, k: int, m: int) -> np.ndarray:
    """U_{km} = X^k Z^m."""
    return np.linalg.matrix_power(shift_matrix(d), k) @ np.linalg.matrix_power(
        phase_matrix(d), m
    )


def encoded_ensemble(plan: EncodingPlan, psi: SharedState) -> quantum.Ensemble:
    """The d^2 protocol states (U_km x I)|psi><psi|(U_km x I)^dagger, each
    with probability q_k / d.  Used to cross-check the spectrum formula."""
    if plan.d != psi.d:
        raise DimensionMismatch("plan and shared state dimensions differ")
    d = plan.d
    base = quantum.DensityOperator.from_pure(psi.vector)
    items = []
    for k in range(d):
        for m in range(d):
            u = protocol_unitary(d, k, m)
            items.append((plan.q[k] / d, quantum.apply_local_unitary(u, base, (d, d))))
    return quantum.Ensemble(tuple(items))


@dataclass(frozen=True)
class ViolationCheck:
    avg_energy: float
    violates: bool


def violation_check(d: int, energy: float, psi: SharedState) -> ViolationCheck:
    """Average sender energy of the uniform full {U_km} encoding; it equals
    (d-1)/2 for every shared state, so the unconstrained protocol breaks any
    bound below the emergent scale."""
    avg = sum(shifted_energy(k, psi.weights) for k in range(d)) / d
    return ViolationCheck(avg_energy=avg, violates=avg > energy + 1e-12)


@dataclass(frozen=True)
class NoGoCheck:
    max_chi: float
    bound: float
    holds: bool


def _max_entropy_group_weights(energies, bound: float):
    """Maximize H(q) subject to q . energies <= bound on the simplex.

    The maximizer is the exponential family q_k proportional to
    exp(-gamma e_k); the single dual variable gamma >= 0 is bisected until
    the mean matches the bound (gamma = 0 when uniform is feasible).
    """
    e = np.asarray(energies, dtype=float)
    d = e.size
    if float(e.mean()) <= bound + 1e-15:
        return np.full(d, 1.0 / d), math.log2(d)
    shifted = e - e.min()

    def mean_at(gamma):
        w = np.exp(-gamma * shifted)
        w = w / w.sum()
        return float(w @ e)

    lo, hi = 0.0, 1.0
    while mean_at(hi) > bound and hi < 1e7:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if mean_at(mid) > bound:
            lo = mid
        else:
            hi = mid
    gamma = 0.5 * (lo + hi)
    w = np.exp(-gamma * shifted)
    q = w / w.sum()
    nz = q[q > 0.0]
    return q, float(-(nz * np.log2(nz)).sum())


def ec_dc_capacity(d: int, energy: float) -> CapacityResult:
    """Average energy-constrained DC capacity via the protocol reduction:
    outer golden-section search on E', inner max-entropy group weights."""
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    if energy < 0.0:
        raise DomainError(f"energy bound {energy} below 0")
    scale = thermal.emergent_scale(d)
    if energy == 0.0:
        return CapacityResult(0.0, params={"e_prime": 0.0, "q0": 1.0})
    if energy >= scale:
        psi = SharedState.from_energy(d, scale)
        plan = EncodingPlan.build(np.full(d, 1.0 / d), psi)
        return CapacityResult(
            2.0 * math.log2(d),
            params={"e_prime": scale, "q0": 1.0 / d, "plan": plan, "shared": psi},
        )

    calls = _CallCounter()

    def value_at(ep):
        calls.n += 1
        tw = thermal.thermal_weights(d, ep)
        shifted = np.array([shifted_energy(k, tw.weights) for k in range(d)])
        _, hq = _max_entropy_group_weights(shifted, energy)
        return hq + quantum.shannon_entropy(tw.weights)

    ep_star, value = optimize.multistart_golden_max(value_at, 1e-9, energy)
    psi = SharedState.from_energy(d, ep_star)
    plan_q, _ = _max_entropy_group_weights(
        np.array([shifted_energy(k, psi.weights) for k in range(d)]), energy
    )
    plan = EncodingPlan.build(plan_q, psi)
    return CapacityResult(
        value,
        optimizer_info=OptimizerInfo(calls.n, True, (ep_star,)),
        params={
            "e_prime": ep_star,
            "q0": float(plan.q[0]),
            "plan": plan,
            "shared": psi,
        },
    )


class _CallCounter:
    def __init__(self):
        self.n = 0


def ec_dc_capacity_d2(energy: float) -> CapacityResult:
    """Closed form for two qubits: 2 H((1 - sqrt(1-2E))/2) below E = 1/2,
    with q0 = 1 - E' and shared-state concurrence sqrt(2E)."""
    if energy < 0.0:
        raise DomainError(f"energy bound {energy} below 0")
    if energy == 0.0:
        return CapacityResult(0.0, params={"e_prime": 0.0, "q0": 1.0, "concurrence": 0.0})
    if energy >= 0.5:
        return CapacityResult(
            2.0, params={"e_prime": 0.5, "q0": 0.5, "concurrence": 1.0}
        )
    ep = 0.5 * (1.0 - math.sqrt(1.0 - 2.0 * energy))
    return CapacityResult(
        2.0 * quantum.binary_entropy(ep),
        params={
            "e_prime": ep,
            "q0": 1.0 - ep,
            "concurrence": math.sqrt(2.0 * energy),
        },
    )


def protocol_average_state_spectrum(plan: EncodingPlan, psi: SharedState) -> np.ndarray:
    """Eigenvalues {q_k p_n} of the block-diagonal protocol average state."""
    if plan.d != psi.d:
        raise DimensionMismatch("plan and shared state dimensions differ")
    return np.outer(plan.q, psi.weights).ravel()


def _random_unitary_2(rng: SplitMix64) -> np.ndarray:
    g = np.array(
        [[complex(rng.gauss(), rng.gauss()) for _ in range(2)] for _ in range(2)]
    )
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q @ np.diag(d / np.abs(d))


def _random_correlated_state(energy_cap: float, rng: SplitMix64) -> quantum.DensityOperator:
    """Schmidt-form family (U x I)(sqrt(a)|00> + sqrt(1-a)|11>), resampled
    until the sender marginal respects the energy cap."""
    for _ in range(100000):
        alpha = rng.uniform()
        u = _random_unitary_2(rng)
        a, b = math.sqrt(alpha), math.sqrt(1.0 - alpha)
        v = np.array([u[0, 0] * a, u[0, 1] * b, u[1, 0] * a, u[1, 1] * b])
        if abs(v[2]) ** 2 + abs(v[3]) ** 2 <= energy_cap:
            return quantum.DensityOperator.from_pure(v)
    raise DomainError(f"could not sample a shared state below energy {energy_cap}")


def _random_passive_channel(rng: SplitMix64) -> quantum.ChannelSpec:
    terms = 1 + rng.integer(3)
    weights = np.array([rng.uniform(0.05, 1.0) for _ in range(terms)])
    weights /= weights.sum()
    thetas = [rng.uniform(0.0, 2.0 * math.pi) for _ in range(terms)]
    return quantum.ChannelSpec.energy_preserving_mixture(zip(weights, thetas))


def passive_no_go_check(trials: int, energy: float, seed: int = 42) -> NoGoCheck:
    """Random energy-preserving encodings on random correlated states never
    beat the unassisted capacity H(E): the encoded ensemble stays in a
    two-dimensional subspace, so entanglement buys nothing."""
    if not 0.0 < energy <= 0.5:
        raise DomainError(f"no-go check defined for 0 < E <= 1/2, got {energy}")
    bound = noiseless.noiseless_capacity(2, energy).value
    rng = SplitMix64(seed)
    max_chi = 0.0
    for _ in range(trials):
        rho_sr = _random_correlated_state(energy, rng)
        n_msg = 2 + rng.integer(3)
        raw = np.array([rng.uniform(0.05, 1.0) for _ in range(n_msg)])
        probs = raw / raw.sum()
        items = []
        for i in range(n_msg):
            ch = _random_passive_channel(rng)
            items.append((probs[i], quantum.apply_channel_local(ch, rho_sr, (2, 2))))
        chi = quantum.holevo_chi(quantum.Ensemble(tuple(items)))
        max_chi = max(max_chi, chi)
    return NoGoCheck(max_chi=max_chi, bound=bound, holds=max_chi <= bound + 1e-9)


# ---------------------------------------------------------------------------
# General-encoding numerical route (four unitaries, stochastic ranking)
# ---------------------------------------------------------------------------


def _bloch_unitary(mu: float, theta: float, phi: float) -> np.ndarray:
    """exp(-i mu n.sigma) for the unit vector n(theta, phi)."""
    c, s = math.cos(mu), math.sin(mu)
    nx = math.sin(theta) * math.cos(phi)
    ny = math.sin(theta) * math.sin(phi)
    nz = math.cos(theta)
    return np.array(
        [
            [c - 1j * s * nz, -1j * s * (nx - 1j * ny)],
            [-1j * s * (nx + 1j * ny), c + 1j * s * nz],
        ]
    )


def _entropy_of(eigs) -> float:
    acc = 0.0
    for v in eigs:
        if v > 1e-18:
            acc -= v * math.log2(v)
    return acc


def _eig2(m: np.ndarray):
    a = m[0, 0].real
    b = m[1, 1].real
    half = 0.5 * (a + b)
    disc = math.hypot(0.5 * (a - b), abs(m[0, 1]))
    return max(half - disc, 0.0), half + disc


class _DcEvaluation:
    """Decoded encoding: probabilities, shared energy, encoded vectors and
    sender-marginal energies for one parameter vector."""

    __slots__ = ("probs", "e_prime", "vectors", "energies")

    def __init__(self, x: np.ndarray, optimized: bool):
        if optimized:
            raw = np.clip(x[0:4], 1e-9, None)
            self.probs = raw / raw.sum()
            rest = x[4:]
        else:
            self.probs = np.full(4, 0.25)
            rest = x
        self.e_prime = float(rest[0])
        a = math.sqrt(1.0 - self.e_prime)
        b = math.sqrt(self.e_prime)
        us = [np.eye(2, dtype=complex)]
        for j in range(3):
            mu, theta, phi = rest[1 + 3 * j : 4 + 3 * j]
            us.append(_bloch_unitary(mu, theta, phi))
        self.vectors = np.array([[u[0, 0] * a, u[0, 1] * b, u[1, 0] * a, u[1, 1] * b] for u in us])
        self.energies = np.array(
            [abs(v[2]) ** 2 + abs(v[3]) ** 2 for v in self.vectors]
        )


class _DcObjective:
    """chi of the encoded ensemble, with the encode step shared between the
    objective and the constraint callables."""

    def __init__(self, dephase: bool, optimized: bool):
        self.dephase = dephase
        self.optimized = optimized
        self._key = None
        self._val = None

    def evaluation(self, x: np.ndarray) -> _DcEvaluation:
        key = x.tobytes()
        if key != self._key:
            self._val = _DcEvaluation(np.asarray(x, dtype=float), self.optimized)
            self._key = key
        return self._val

    def chi(self, x) -> float:
        ev = self.evaluation(np.asarray(x, dtype=float))
        p, vs = ev.probs, ev.vectors
        if not self.dephase:
            rho = np.zeros((4, 4), dtype=complex)
            for pi, v in zip(p, vs):
                rho += pi * np.outer(v, v.conj())
            eigs = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
            return _entropy_of(eigs)
        b0 = np.zeros((2, 2), dtype=complex)
        b1 = np.zeros((2, 2), dtype=complex)
        for pi, v in zip(p, vs):
            b0 += pi * np.outer(v[:2], v[:2].conj())
            b1 += pi * np.outer(v[2:], v[2:].conj())
        s_avg = _entropy_of(_eig2(b0) + _eig2(b1))
        s_members = sum(
            pi * quantum.binary_entropy(min(max(e, 0.0), 1.0))
            for pi, e in zip(p, ev.energies)
        )
        return s_avg - s_members


def _dc_numeric(
    energy: float,
    channel: str,
    constraint: str,
    probabilities: str,
    config: optimize.OptimizerConfig = None,
) -> CapacityResult:
    if constraint not in ("average", "strict"):
        raise DomainError(f"unknown constraint {constraint!r}")
    if probabilities not in ("equiprobable", "optimized"):
        raise DomainError(f"unknown probabilities {probabilities!r}")
    optimized = probabilities == "optimized"
    dephase = channel == "dephasing"
    ep_hi = min(energy, 0.5)
    if ep_hi <= E_PRIME_FLOOR:
        return CapacityResult(0.0, params={"e_prime": 0.0})

    obj = _DcObjective(dephase=dephase, optimized=optimized)
    angle_bounds = [(0.0, 2.0 * math.pi), (0.0, math.pi), (0.0, 2.0 * math.pi)] * 3
    bounds = ([(0.0, 1.0)] * 4 if optimized else []) + [(E_PRIME_FLOOR, ep_hi)] + angle_bounds

    if constraint == "average":
        def g(x):
            ev = obj.evaluation(np.asarray(x, dtype=float))
            return float(ev.probs @ ev.energies) - energy
    else:
        def g(x):
            ev = obj.evaluation(np.asarray(x, dtype=float))
            return float(ev.energies.max()) - energy

    problem = optimize.OptimizationProblem(
        dimension=len(bounds),
        bounds=tuple(bounds),
        objective=obj.chi,
        constraints=(g,),
    )
    cfg = config or optimize.OptimizerConfig(
        max_evals=_DC_MAX_EVALS, refine_iters=_DC_REFINE_ITERS
    )
    res = optimize.maximize(problem, cfg)
    ev = obj.evaluation(res.argmax)
    mean_e = float(ev.probs @ ev.energies)
    params = {
        "e_prime": ev.e_prime,
        "p": tuple(float(v) for v in ev.probs),
        "energies": tuple(float(v) for v in ev.energies),
        "mean_energy": mean_e,
    }
    if abs(1.0 - 2.0 * ev.e_prime) > 1e-9:
        q0 = ((1.0 - ev.e_prime) - mean_e) / (1.0 - 2.0 * ev.e_prime)
        params["q0"] = float(min(max(q0, 0.0), 1.0))
    return CapacityResult(
        res.value,
        optimizer_info=OptimizerInfo(res.evaluations, res.converged, tuple(res.argmax)),
        params=params,
    )


def dc_noiseless_numeric(
    energy: float,
    constraint: str = "average",
    probabilities: str = "optimized",
    config: optimize.OptimizerConfig = None,
) -> CapacityResult:
    """General-encoding maximization for the noiseless channel; the
    independent check on the protocol closed form."""
    if not 0.0 <= energy <= 0.5:
        raise DomainError(f"noiseless DC search expects E in [0, 1/2], got {energy}")
    return _dc_numeric(energy, "identity", constraint, probabilities, config)


def dc_dephasing_capacity(
    energy: float,
    constraint: str = "strict",
    probabilities: str = "optimized",
    config: optimize.OptimizerConfig = None,
) -> CapacityResult:
    """DC capacity with the complete dephasing channel on the sender qubit."""
    if not 0.0 <= energy <= 1.0:
        raise DomainError(f"qubit energy bound {energy} outside [0, 1]")
    return _dc_numeric(energy, "dephasing", constraint, probabilities, config)


def dc_hierarchy(e_grid, config: optimize.OptimizerConfig = None) -> list:
    """Noiseless DC capacities (average/strict x optimized/equiprobable) and
    the unassisted capacity, per energy in a grid inside (0, 1/2)."""
    rows = []
    for e in e_grid:
        if not 0.0 < e < 0.5:
            raise DomainError(f"hierarchy grid point {e} outside (0, 1/2)")
        rows.append(
            {
                "E": e,
                "dc_avg_opt": dc_noiseless_numeric(e, "average", "optimized", config).value,
                "dc_avg_eq": dc_noiseless_numeric(e, "average", "equiprobable", config).value,
                "dc_strict_opt": dc_noiseless_numeric(e, "strict", "optimized", config).value,
                "dc_strict_eq": dc_noiseless_numeric(e, "strict", "equiprobable", config).value,
                "unassisted": noiseless.noiseless_capacity(2, e).value,
            }
        )
    return rows
