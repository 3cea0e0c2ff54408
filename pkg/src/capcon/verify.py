"""Machine-checkable verification suites behind `capcon verify`.

Each check compares an independently computed expectation against the main
code path and reports {check, expected, got, tol, pass}.  Suites:
closed-forms (formula against formula), oracles (brute-force grids against
refined optimizers), no-go (the passive-encoding bound), all.
"""
from __future__ import annotations

import math

import numpy as np

from . import dense_coding, dephasing, dual, noiseless, optimize, quantum, thermal
from .errors import DomainError

SUITES = ("all", "closed-forms", "oracles", "no-go")


def _check(name, expected, got, tol):
    return {
        "check": name,
        "expected": expected,
        "got": got,
        "tol": tol,
        "pass": bool(abs(got - expected) <= tol),
    }


def _bound_check(name, bound, got, tol):
    """Pass when got <= bound + tol."""
    return {
        "check": name,
        "expected": f"<= {bound!r}",
        "got": got,
        "tol": tol,
        "pass": bool(got <= bound + tol),
    }


def closed_form_checks(seed: int = 42) -> list:
    checks = []
    # thermal: root-solved qutrit weights against the closed form
    worst = 0.0
    for e in np.linspace(0.1, 0.9, 9):
        solved = thermal.thermal_weights(3, float(e)).weights
        closed = thermal.d3_closed_form_weights(float(e))
        worst = max(worst, float(np.abs(solved - closed).max()))
    checks.append(_check("thermal.d3-closed-form.max-deviation", 0.0, worst, 1e-8))

    # dephasing closed forms at lambda = 1/2
    worst_avg = worst_strict = 0.0
    for e in np.linspace(0.01, 0.49, 50):
        e = float(e)
        worst_avg = max(
            worst_avg,
            abs(
                dephasing.avg_equiprob_capacity(0.5, e).value
                - dephasing.complete_dephasing_avg_equiprob(e)
            ),
        )
    for e in np.linspace(0.01, 0.99, 50):
        e = float(e)
        worst_strict = max(
            worst_strict,
            abs(
                dephasing.strict_equiprob_capacity(0.5, e).value
                - dephasing.complete_dephasing_strict_equiprob(e)
            ),
        )
    checks.append(_check("dephasing.avg-equiprob.lambda-half.max-dev", 0.0, worst_avg, 1e-6))
    checks.append(_check("dephasing.strict-equiprob.lambda-half.max-dev", 0.0, worst_strict, 1e-6))
    checks.append(
        _check(
            "dephasing.avg-equiprob.spot(0.5,0.25)",
            quantum.binary_entropy(0.25) - 0.5,
            dephasing.avg_equiprob_capacity(0.5, 0.25).value,
            1e-6,
        )
    )
    checks.append(
        _check(
            "dephasing.strict-equiprob.spot(0.5,0.25)",
            quantum.binary_entropy(0.125) - quantum.binary_entropy(0.25) / 2.0,
            dephasing.strict_equiprob_capacity(0.5, 0.25).value,
            1e-6,
        )
    )

    # dense coding: protocol reduction against the d=2 closed form
    worst = 0.0
    for e in np.linspace(0.01, 0.49, 25):
        e = float(e)
        worst = max(
            worst,
            abs(dense_coding.ec_dc_capacity(2, e).value - dense_coding.ec_dc_capacity_d2(e).value),
        )
    checks.append(_check("dense-coding.protocol-vs-d2-closed-form.max-dev", 0.0, worst, 1e-6))

    # dual constraints: the three regimes at L = 0.9
    rm = dual.DualQuery(0.0, 0.9).r_minus
    checks.append(
        _check(
            "dual.noiseless.top(0.6,0.9)",
            1.0 - quantum.binary_entropy(rm),
            dual.dual_noiseless_capacity(0.6, 0.9).value,
            1e-9,
        )
    )
    checks.append(
        _check(
            "dual.noiseless.mid(0.3,0.9)",
            quantum.binary_entropy(0.3) - quantum.binary_entropy(rm),
            dual.dual_noiseless_capacity(0.3, 0.9).value,
            1e-9,
        )
    )
    checks.append(
        _check("dual.noiseless.zero(0.04,0.9)", 0.0, dual.dual_noiseless_capacity(0.04, 0.9).value, 0.0)
    )
    checks.append(
        _check(
            "dual.dephasing-equiprob.mid(0.3,0.9)",
            quantum.binary_entropy(0.3)
            - 0.5 * (quantum.binary_entropy(rm) + quantum.binary_entropy(0.6 - rm)),
            dual.dual_dephasing_equiprob_capacity(0.3, 0.9).value,
            1e-9,
        )
    )

    # noiseless: spot value and the large-d saturation of the curve
    checks.append(
        _check(
            "noiseless.spot(2,0.25)",
            quantum.binary_entropy(0.25),
            noiseless.noiseless_capacity(2, 0.25).value,
            1e-9,
        )
    )
    checks.append(
        _check(
            "noiseless.curve.d64-vs-infinite(0.3)",
            noiseless.infinite_dim_capacity(0.3),
            dict(noiseless.capacity_curve(0.3, [64]))[64],
            1e-3,
        )
    )
    return checks


def _local_grid_max(lam, e, p0, delta, half_width=2.5e-3, points=801):
    """Independent fine grid around a reported argmax."""
    ps = np.linspace(max(0.0, p0 - half_width), min(1.0, p0 + half_width), points)
    ds = np.linspace(max(0.0, delta - half_width), min(e, delta + half_width), points)
    pp, dd = np.meshgrid(ps, ds, indexing="ij")
    return float(dephasing.chi_strict_bloch(lam, e, pp, dd).max())


def _qubit_dcc_problem():
    """max H(q0) + H(e') subject to q0 e' + (1-q0)(1-e') <= 1/4."""

    def objective(x):
        return quantum.binary_entropy(float(x[0])) + quantum.binary_entropy(float(x[1]))

    def constraint(x):
        q0, ep = float(x[0]), float(x[1])
        return q0 * ep + (1.0 - q0) * (1.0 - ep) - 0.25

    return optimize.OptimizationProblem(
        dimension=2,
        bounds=((0.0, 1.0), (0.0, 0.5)),
        objective=objective,
        constraints=(constraint,),
    )


def oracle_checks(seed: int = 42) -> list:
    checks = []
    # Bloch-ensemble grid against the noiseless closed form
    for e in (0.1, 0.25, 0.4):
        got = noiseless.bloch_ensemble_oracle(e)
        target = quantum.binary_entropy(e)
        checks.append(_bound_check(f"oracle.bloch.upper({e})", target, got, 1e-4))
        checks.append(
            {
                "check": f"oracle.bloch.reach({e})",
                "expected": f">= {target!r}",
                "got": got,
                "tol": 1e-3,
                "pass": bool(got >= target - 1e-3),
            }
        )

    # 2-d grid oracle against the refined strict-optimal search.  The global
    # grid is a lower bound whose resolution error near the delta -> E cusp
    # exceeds 1e-5, so the two-sided agreement is taken against a fine local
    # grid around the argmax; the global grid checks dominance.
    pairs = [(lam, e) for lam in (0.3, 0.45, 0.6) for e in (0.25, 0.5, 0.75)]
    for lam, e in pairs:
        result = dephasing.strict_optimal_capacity(lam, e)
        refined = result.value
        prob = optimize.OptimizationProblem(
            dimension=2,
            bounds=((0.0, 1.0), (0.0, e)),
            objective=lambda x, lam=lam, e=e: float(
                dephasing.chi_strict_bloch(lam, e, x[0], x[1])
            ),
        )
        grid_val, _ = optimize.grid_oracle(
            prob,
            2001,
            batch_objective=lambda pts, lam=lam, e=e: dephasing.chi_strict_bloch(
                lam, e, pts[:, 0], pts[:, 1]
            ),
        )
        checks.append(
            {
                "check": f"oracle.dephasing-grid-dominance({lam},{e})",
                "expected": f">= {grid_val!r} - 1e-05",
                "got": refined,
                "tol": 1e-5,
                "pass": bool(refined >= grid_val - 1e-5),
            }
        )
        local = _local_grid_max(lam, e, result.params["p0"], result.params["delta"])
        checks.append(_check(f"oracle.dephasing-local-grid({lam},{e})", local, refined, 1e-5))

    # stochastic-ranking strategy against the 2-d dense-coding grid
    target = dense_coding.ec_dc_capacity_d2(0.25).value
    res = optimize.maximize(_qubit_dcc_problem(), optimize.OptimizerConfig(seed=seed))
    checks.append(_check("oracle.sres.qubit-dcc(0.25)", target, res.value, 1e-4))
    return checks


def no_go_checks(seed: int = 42) -> list:
    checks = []
    for e in (0.25, 0.4):
        result = dense_coding.passive_no_go_check(500, e, seed=seed)
        checks.append(
            _bound_check(f"no-go.passive({e})", result.bound, result.max_chi, 1e-9)
        )
    return checks


def run_suite(suite: str, seed: int = 42) -> list:
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    checks = []
    if suite in ("all", "closed-forms"):
        checks.extend(closed_form_checks(seed))
    if suite in ("all", "oracles"):
        checks.extend(oracle_checks(seed))
    if suite in ("all", "no-go"):
        checks.extend(no_go_checks(seed))
    return checks
