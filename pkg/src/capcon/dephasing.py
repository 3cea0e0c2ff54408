"""Energy-constrained capacities of the qubit dephasing channel.

Four variants: average or strict energy bound, crossed with equiprobable or
optimized message probabilities.  The encoding ansatz is the pair of pure
states sqrt(1-e)|0> +/- sqrt(e)|1>; only the energy split (delta) and, in
the optimized case, the probability p0 are searched.  Every capacity here is
invariant under lambda -> 1-lambda (sigma_z conjugation relabels nothing
that entropy can see).
"""
from __future__ import annotations

import numpy as np

from . import optimize, quantum
from .errors import DomainError
from .results import CapacityResult, OptimizerInfo

GRID_SIZE = 201
REFINE_ITERS = 500
REFINE_STARTS = 3


def _validate(lam: float, energy: float):
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda {lam} outside [0, 1]")
    if not 0.0 <= energy <= 1.0:
        raise DomainError(f"qubit energy bound {energy} outside [0, 1]")


def encoding_state(e: float, sign: int) -> quantum.DensityOperator:
    """Projector of sqrt(1-e)|0> + sign * sqrt(e)|1>."""
    if not 0.0 <= e <= 1.0:
        raise DomainError(f"state energy {e} outside [0, 1]")
    return quantum.DensityOperator.from_pure([np.sqrt(1.0 - e), sign * np.sqrt(e)])


def _chi_after_dephasing(lam: float, items) -> float:
    ch = quantum.ChannelSpec.dephasing(lam)
    out = quantum.Ensemble(tuple((p, quantum.apply_channel(ch, rho)) for p, rho in items))
    return quantum.holevo_chi(out)


class _Counter:
    def __init__(self, fn):
        self.fn = fn
        self.calls = 0

    def __call__(self, *args):
        self.calls += 1
        return self.fn(*args)


def complete_dephasing_avg_equiprob(energy: float) -> float:
    """Closed form at lambda = 1/2, average bound: H(E) - H(2E)/2 below 1/2."""
    if energy >= 0.5:
        return 1.0
    return quantum.binary_entropy(energy) - quantum.binary_entropy(2.0 * energy) / 2.0


def complete_dephasing_strict_equiprob(energy: float) -> float:
    """Closed form at lambda = 1/2, strict bound: H(E/2) - H(E)/2."""
    return quantum.binary_entropy(energy / 2.0) - quantum.binary_entropy(energy) / 2.0


def avg_equiprob_capacity(lam: float, energy: float) -> CapacityResult:
    """Average energy bound, equiprobable messages: one-parameter search
    over the energy split delta in [0, E]."""
    _validate(lam, energy)
    if energy >= 0.5:
        ens = quantum.Ensemble(
            (
                (0.5, quantum.DensityOperator.diagonal([1.0, 0.0])),
                (0.5, quantum.DensityOperator.diagonal([0.0, 1.0])),
            )
        )
        return CapacityResult(1.0, optimal_ensemble=ens)
    if energy == 0.0:
        ground = quantum.DensityOperator.diagonal([1.0, 0.0])
        return CapacityResult(
            0.0,
            optimal_ensemble=quantum.Ensemble(((0.5, ground), (0.5, ground))),
            params={"delta": 0.0},
        )

    def pair(delta):
        return (
            (0.5, encoding_state(energy + delta, +1)),
            (0.5, encoding_state(energy - delta, -1)),
        )

    objective = _Counter(lambda delta: _chi_after_dephasing(lam, pair(delta)))
    delta, value = optimize.multistart_golden_max(objective, 0.0, energy)
    return CapacityResult(
        value,
        optimal_ensemble=quantum.Ensemble(pair(delta)),
        optimizer_info=OptimizerInfo(objective.calls, True, (delta,)),
        params={"delta": delta},
    )


def avg_optimal_capacity(lam: float, energy: float) -> CapacityResult:
    """Average bound with optimized probabilities: H(E) via the basis-state
    ensemble {1-E: |0><0|, E: |1><1|}, the unique maximizer for noisy lambda."""
    _validate(lam, energy)
    unique = lam not in (0.0, 1.0)
    if energy >= 0.5:
        ens = quantum.Ensemble(
            (
                (0.5, quantum.DensityOperator.diagonal([1.0, 0.0])),
                (0.5, quantum.DensityOperator.diagonal([0.0, 1.0])),
            )
        )
        return CapacityResult(1.0, optimal_ensemble=ens, params={"p0": 0.5}, unique=unique)
    if energy == 0.0:
        ground = quantum.DensityOperator.diagonal([1.0, 0.0])
        return CapacityResult(
            0.0,
            optimal_ensemble=quantum.Ensemble(((1.0, ground),)),
            params={"p0": 1.0},
            unique=unique,
        )
    ens = quantum.Ensemble(
        (
            (1.0 - energy, quantum.DensityOperator.diagonal([1.0, 0.0])),
            (energy, quantum.DensityOperator.diagonal([0.0, 1.0])),
        )
    )
    return CapacityResult(
        quantum.binary_entropy(energy),
        optimal_ensemble=ens,
        params={"p0": 1.0 - energy},
        unique=unique,
    )


def strict_equiprob_capacity(lam: float, energy: float) -> CapacityResult:
    """Strict bound, equiprobable messages: the first state is pinned at
    energy E, the second searched over energy E - delta."""
    _validate(lam, energy)
    if energy == 0.0:
        ground = quantum.DensityOperator.diagonal([1.0, 0.0])
        return CapacityResult(
            0.0,
            optimal_ensemble=quantum.Ensemble(((0.5, ground), (0.5, ground))),
            params={"delta": 0.0},
        )

    def pair(delta):
        return (
            (0.5, encoding_state(energy, +1)),
            (0.5, encoding_state(energy - delta, -1)),
        )

    objective = _Counter(lambda delta: _chi_after_dephasing(lam, pair(delta)))
    delta, value = optimize.multistart_golden_max(objective, 0.0, energy)
    return CapacityResult(
        value,
        optimal_ensemble=quantum.Ensemble(pair(delta)),
        optimizer_info=OptimizerInfo(objective.calls, True, (delta,)),
        params={"delta": delta},
    )


def chi_strict_bloch(lam: float, energy: float, p0, delta):
    """Vectorized chi of the strict ansatz from Bloch-vector algebra.

    Used as the independent grid-oracle evaluator and to seed the refined
    search; accepts arrays for p0 and delta.
    """
    p0 = np.asarray(p0, dtype=float)
    delta = np.asarray(delta, dtype=float)
    shrink = 2.0 * lam - 1.0
    z0 = 1.0 - 2.0 * energy
    x0 = 2.0 * np.sqrt(energy * (1.0 - energy))
    e1 = energy - delta
    z1 = 1.0 - 2.0 * e1
    x1 = -2.0 * np.sqrt(np.clip(e1 * (1.0 - e1), 0.0, None))

    def ent(x, z):
        r = np.clip(np.sqrt((shrink * x) ** 2 + z**2), 0.0, 1.0)
        lo = (1.0 - r) / 2.0
        hi = 1.0 - lo
        with np.errstate(divide="ignore", invalid="ignore"):
            s = -(lo * np.log2(lo) + hi * np.log2(hi))
        return np.nan_to_num(s, nan=0.0)

    avg_x = p0 * x0 + (1.0 - p0) * x1
    avg_z = p0 * z0 + (1.0 - p0) * z1
    return ent(avg_x, avg_z) - p0 * ent(x0, z0) - (1.0 - p0) * ent(x1, z1)


def _coordinate_golden_ascent(f, x0, bounds, f0, rounds: int = 4):
    """Alternate full-axis multistart golden-section sweeps per coordinate."""
    x = list(np.asarray(x0, dtype=float))
    best = f0
    for _ in range(rounds):
        improved = False
        for axis, (lo, hi) in enumerate(bounds):
            def slice_f(t, axis=axis):
                trial = list(x)
                trial[axis] = t
                return f(np.asarray(trial))

            t_star, val = optimize.multistart_golden_max(slice_f, lo, hi)
            if val > best + 1e-14:
                best = val
                x[axis] = t_star
                improved = True
        if not improved:
            break
    return np.asarray(x), best


def strict_optimal_capacity(lam: float, energy: float) -> CapacityResult:
    """Strict bound with optimized probability: two-parameter (p0, delta)
    maximization; coarse grid, then simplex refinement of the best cells
    against the exact quantum-core objective."""
    _validate(lam, energy)
    if energy == 0.0:
        ground = quantum.DensityOperator.diagonal([1.0, 0.0])
        return CapacityResult(
            0.0,
            optimal_ensemble=quantum.Ensemble(((1.0, ground),)),
            params={"p0": 1.0, "delta": 0.0},
        )

    def pair(p0, delta):
        return (
            (p0, encoding_state(energy, +1)),
            (1.0 - p0, encoding_state(energy - delta, -1)),
        )

    exact = _Counter(
        lambda x: _chi_after_dephasing(lam, pair(float(x[0]), float(x[1])))
    )

    p_grid = np.linspace(0.0, 1.0, GRID_SIZE)
    d_grid = np.linspace(0.0, energy, GRID_SIZE)
    pp, dd = np.meshgrid(p_grid, d_grid, indexing="ij")
    coarse = chi_strict_bloch(lam, energy, pp, dd)
    flat_order = np.argsort(coarse.ravel())[::-1]

    best_x, best_val = None, -np.inf
    bounds = ((0.0, 1.0), (0.0, energy))
    # starting a simplex exactly on a bound degenerates it (clipping
    # collapses the offending vertex), so nudge starts one cell inward
    step_p = 1.0 / (GRID_SIZE - 1)
    step_d = energy / (GRID_SIZE - 1)
    for k in flat_order[:REFINE_STARTS]:
        i, j = np.unravel_index(k, coarse.shape)
        x0 = (
            min(max(pp[i, j], step_p), 1.0 - step_p),
            min(max(dd[i, j], step_d), energy - step_d),
        )
        x, val = optimize.nelder_mead_max(exact, x0, bounds, maxiter=REFINE_ITERS)
        # chi has an infinite-slope cusp as the low state's energy reaches 0
        # (delta -> E); simplexes stall there, so finish with coordinate-wise
        # golden-section ascent, which handles near-boundary interior peaks
        x, val = _coordinate_golden_ascent(exact, x, bounds, val)
        if val > best_val:
            best_x, best_val = x, val
    p0, delta = float(best_x[0]), float(best_x[1])
    ens_items = pair(p0, delta)
    ens = quantum.Ensemble(ens_items) if 0.0 < p0 < 1.0 else quantum.Ensemble(
        ((1.0, ens_items[0][1]),) if p0 >= 1.0 else ((1.0, ens_items[1][1]),)
    )
    return CapacityResult(
        best_val,
        optimal_ensemble=ens,
        optimizer_info=OptimizerInfo(exact.calls, True, (p0, delta)),
        params={"p0": p0, "delta": delta},
    )


def capacity(lam: float, energy: float, constraint: str, probabilities: str) -> CapacityResult:
    """Dispatch on (constraint, probabilities)."""
    key = (constraint, probabilities)
    table = {
        ("average", "equiprobable"): avg_equiprob_capacity,
        ("average", "optimized"): avg_optimal_capacity,
        ("strict", "equiprobable"): strict_equiprob_capacity,
        ("strict", "optimized"): strict_optimal_capacity,
    }
    if key not in table:
        raise DomainError(f"unknown variant {key}")
    return table[key](lam, energy)
