"""Constrained derivative-free maximization and brute-force grid oracles.

`maximize` is a stochastic-ranking evolution strategy (rank probability
0.45, 1/7 truncation, self-adaptive Gaussian step sizes) followed by a
deterministic Nelder-Mead polish of the best feasible point.  All
randomness comes from the seed in the config, so identical inputs give
bit-identical results.  `grid_oracle` is the independent exhaustive
check used to validate optimizer output.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import DomainError, InfeasibleProblem, ResolutionTooLarge
from .rng import SplitMix64

RANK_PROBABILITY = 0.45
TRUNCATION_RATIO = 7  # mu = population // 7
GRID_BUDGET = 10**8


@dataclass(frozen=True)
class OptimizationProblem:
    """Box-bounded maximization with inequality constraints g_i(x) <= 0."""

    dimension: int
    bounds: tuple
    objective: object
    constraints: tuple = ()

    def __post_init__(self):
        if len(self.bounds) != self.dimension:
            raise DomainError("bounds length must equal dimension")
        for lo, hi in self.bounds:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise DomainError(f"invalid bound ({lo}, {hi})")
        object.__setattr__(self, "bounds", tuple((float(a), float(b)) for a, b in self.bounds))
        object.__setattr__(self, "constraints", tuple(self.constraints))


@dataclass(frozen=True)
class OptimizerConfig:
    seed: int = 42
    population: int = None  # defaults to 20 * (dimension + 1)
    max_evals: int = 5000
    refine_iters: int = 2000
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.population is not None and self.population < 4:
            raise DomainError("population must be >= 4")
        if self.tolerance <= 0:
            raise DomainError("tolerance must be positive")


@dataclass(frozen=True)
class MaximizeResult:
    value: float
    argmax: np.ndarray
    evaluations: int
    converged: bool
    trace: tuple  # (evaluation index, best feasible value) at improvements


def _constraint_values(problem, x):
    return np.array([g(x) for g in problem.constraints]) if problem.constraints else np.empty(0)


def _violation(gs):
    if gs.size == 0:
        return 0.0
    over = np.clip(gs, 0.0, None)
    return float((over * over).sum())


def _stochastic_rank(fitness, violations, rng):
    """Order indices best-first: objective-wise with probability 0.45 when
    either candidate is infeasible, violation-wise otherwise."""
    n = len(fitness)
    idx = list(range(n))
    for _ in range(n):
        swapped = False
        for i in range(n - 1):
            a, b = idx[i], idx[i + 1]
            both_feasible = violations[a] == 0.0 and violations[b] == 0.0
            if both_feasible or rng.uniform() < RANK_PROBABILITY:
                if fitness[a] < fitness[b]:
                    idx[i], idx[i + 1] = b, a
                    swapped = True
            elif violations[a] > violations[b]:
                idx[i], idx[i + 1] = b, a
                swapped = True
        if not swapped:
            break
    return idx


class _Tracker:
    """Keeps the best feasible point over every evaluation, SRES and polish."""

    def __init__(self, problem, tolerance):
        self.problem = problem
        self.tolerance = tolerance
        self.evaluations = 0
        self.best_x = None
        self.best_f = -math.inf
        self.trace = []

    def evaluate(self, x):
        f = float(self.problem.objective(x))
        gs = _constraint_values(self.problem, x)
        self.evaluations += 1
        if (gs.size == 0 or gs.max() <= self.tolerance) and f > self.best_f:
            self.best_f = f
            self.best_x = np.array(x)
            self.trace.append((self.evaluations, f))
        return f, gs


def maximize(problem: OptimizationProblem, config: OptimizerConfig = None) -> MaximizeResult:
    """Stochastic-ranking ES plus simplex polish; raises InfeasibleProblem
    when no point within tolerance of the constraints is ever seen."""
    cfg = config or OptimizerConfig()
    n = problem.dimension
    lam = cfg.population or 20 * (n + 1)
    mu = max(1, lam // TRUNCATION_RATIO)
    rng = SplitMix64(cfg.seed)
    lo = np.array([b[0] for b in problem.bounds])
    hi = np.array([b[1] for b in problem.bounds])
    span = hi - lo
    tau = 1.0 / math.sqrt(2.0 * math.sqrt(n))
    tau_prime = 1.0 / math.sqrt(2.0 * n)
    sigma_init = span / math.sqrt(n)

    tracker = _Tracker(problem, cfg.tolerance)

    xs = np.array([[rng.uniform(lo[k], hi[k]) for k in range(n)] for _ in range(lam)])
    sigmas = np.tile(sigma_init, (lam, 1))
    fs = np.empty(lam)
    viols = np.empty(lam)
    for i in range(lam):
        fs[i], gs = tracker.evaluate(xs[i])
        viols[i] = _violation(gs)

    while tracker.evaluations + lam <= cfg.max_evals:
        order = _stochastic_rank(fs, viols, rng)
        parent_ids = order[:mu]
        new_xs = np.empty_like(xs)
        new_sigmas = np.empty_like(sigmas)
        for j in range(lam):
            p = parent_ids[j % mu]
            common = tau_prime * rng.gauss()
            sig = sigmas[p] * np.exp(common + tau * np.array([rng.gauss() for _ in range(n)]))
            sig = np.minimum(sig, span)
            x = xs[p] + sig * np.array([rng.gauss() for _ in range(n)])
            new_xs[j] = np.clip(x, lo, hi)
            new_sigmas[j] = sig
        xs, sigmas = new_xs, new_sigmas
        for i in range(lam):
            fs[i], gs = tracker.evaluate(xs[i])
            viols[i] = _violation(gs)

    if tracker.best_x is None:
        raise InfeasibleProblem(
            f"no feasible point found in {tracker.evaluations} evaluations"
        )

    starts = _polish_starts(tracker.best_x, xs, fs, viols)
    for x0 in starts:
        _polish(problem, tracker, cfg, x0)
    return MaximizeResult(
        value=tracker.best_f,
        argmax=tracker.best_x,
        evaluations=tracker.evaluations,
        converged=True,
        trace=tuple(tracker.trace),
    )


def _polish_starts(best_x, xs, fs, viols, extra: int = 2):
    """Incumbent plus the best distinct near-feasible survivors."""
    starts = [np.array(best_x)]
    order = np.lexsort((-fs, viols))
    for i in order:
        if len(starts) > extra:
            break
        if all(np.linalg.norm(xs[i] - s) > 1e-6 for s in starts):
            starts.append(np.array(xs[i]))
    return starts


def _polish(problem, tracker, cfg, x0):
    """Local refinement of one start: SLSQP on the smooth constrained
    problem, then a Nelder-Mead pass on an exact-penalty objective.

    Both are deterministic.  The tracker records every evaluation, so even
    if a refiner wanders infeasible the reported point stays the best
    feasible one seen.
    """
    if cfg.refine_iters <= 0:
        return

    def negated(x):
        f, _ = tracker.evaluate(x)
        return -f

    slsqp_constraints = [
        {"type": "ineq", "fun": (lambda x, gg=g: -gg(x))} for g in problem.constraints
    ]
    with warnings.catch_warnings():
        # SLSQP emits RuntimeWarnings when a trial step is clipped to bounds
        warnings.simplefilter("ignore", RuntimeWarning)
        res = minimize(
            negated,
            x0,
            method="SLSQP",
            bounds=problem.bounds,
            constraints=slsqp_constraints,
            options={"maxiter": 300, "ftol": 1e-12},
        )
    if np.isfinite(res.fun):
        lo = np.array([b[0] for b in problem.bounds])
        hi = np.array([b[1] for b in problem.bounds])
        x0 = np.clip(res.x, lo, hi)

    scale = max(1.0, abs(tracker.best_f))

    def penalized(x):
        f, gs = tracker.evaluate(x)
        penalty = 1e4 * scale * float(np.clip(gs, 0.0, None).sum()) if gs.size else 0.0
        return -(f - penalty)

    minimize(
        penalized,
        x0,
        method="Nelder-Mead",
        bounds=problem.bounds,
        options={
            "maxiter": cfg.refine_iters,
            "xatol": 1e-12,
            "fatol": 1e-14,
            "adaptive": True,
        },
    )


def grid_oracle(problem: OptimizationProblem, resolution, batch_objective=None, batch_constraints=None):
    """Exhaustive feasible-grid maximum; a lower bound on the true maximum.

    `resolution` is an int or per-axis list of grid sizes.  When
    `batch_objective` (an (m, dim) -> (m,) evaluator) is given, rows are
    evaluated vectorized in slabs over the first axis.
    """
    if isinstance(resolution, int):
        res = [resolution] * problem.dimension
    else:
        res = list(resolution)
    if len(res) != problem.dimension or any(r < 2 for r in res):
        raise DomainError("resolution must give >= 2 points per axis")
    total = math.prod(res)
    if total > GRID_BUDGET:
        raise ResolutionTooLarge(f"{total} grid points exceeds {GRID_BUDGET}")

    axes = [np.linspace(lo, hi, r) for (lo, hi), r in zip(problem.bounds, res)]
    best_val, best_x = -math.inf, None

    if batch_objective is not None:
        tail = axes[1:]
        mesh = np.meshgrid(*tail, indexing="ij") if tail else []
        tail_pts = (
            np.stack([m.ravel() for m in mesh], axis=1)
            if tail
            else np.zeros((1, 0))
        )
        for x0 in axes[0]:
            pts = np.column_stack([np.full(len(tail_pts), x0), tail_pts])
            vals = np.asarray(batch_objective(pts), dtype=float)
            if batch_constraints is not None:
                gs = np.asarray(batch_constraints(pts), dtype=float)
                feasible = (gs <= 0.0).all(axis=1)
            elif problem.constraints:
                feasible = np.array(
                    [(_constraint_values(problem, p) <= 0.0).all() for p in pts]
                )
            else:
                feasible = np.ones(len(pts), dtype=bool)
            vals = np.where(feasible, vals, -np.inf)
            k = int(np.argmax(vals))
            if vals[k] > best_val:
                best_val, best_x = float(vals[k]), pts[k].copy()
    else:
        import itertools

        for combo in itertools.product(*axes):
            x = np.array(combo)
            gs = _constraint_values(problem, x)
            if gs.size and gs.max() > 0.0:
                continue
            v = float(problem.objective(x))
            if v > best_val:
                best_val, best_x = v, x

    if best_x is None:
        raise InfeasibleProblem("no grid point satisfies the constraints")
    return best_val, best_x


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-10):
    """Golden-section maximization on [lo, hi]; exact for unimodal f.

    The original bracket endpoints are always compared against the interior
    result, so boundary maxima are returned exactly.
    """
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    fx = f(x)
    for xe in (lo, hi):
        fe = f(xe)
        if fe > fx:
            x, fx = xe, fe
    return x, fx


def multistart_golden_max(f, lo: float, hi: float, tol: float = 1e-10, starts: int = 3):
    """Golden section on `starts` sub-brackets; guards against bimodal f."""
    edges = np.linspace(lo, hi, starts + 1)
    best_x, best_f = lo, f(lo)
    for i in range(starts):
        x, fx = golden_section_max(f, float(edges[i]), float(edges[i + 1]), tol)
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def nelder_mead_max(f, x0, bounds, maxiter: int = 500):
    """Deterministic simplex polish of a box-bounded maximization."""
    res = minimize(
        lambda x: -f(x),
        np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        bounds=bounds,
        options={"maxiter": maxiter, "xatol": 1e-12, "fatol": 1e-14, "adaptive": False},
    )
    return res.x, -res.fun
