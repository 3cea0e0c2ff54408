"""Acceptance criteria, one test per criterion.

Each test enforces the stated tolerance and runtime budget and prints a
PASS line with the measured numbers (run pytest with -s to see them).
"""
import json
import math
import time

import numpy as np
import pytest

from capcon import cli, dense_coding, dephasing, dual, noiseless, optimize, quantum, thermal

DC_CFG = optimize.OptimizerConfig(
    max_evals=dense_coding._DC_MAX_EVALS, refine_iters=dense_coding._DC_REFINE_ITERS
)


class Stopwatch:
    def __init__(self, limit):
        self.limit = limit
        self.start = time.monotonic()

    def check(self, label):
        elapsed = time.monotonic() - self.start
        assert elapsed < self.limit, f"{label}: {elapsed:.1f}s exceeded {self.limit}s"
        return elapsed


def report(n, label, elapsed):
    print(f"PASS criterion {n}: {label} ({elapsed:.1f}s)")


def test_criterion_01_noiseless_oracle_saturation():
    watch = Stopwatch(30.0)
    for e in (0.1, 0.25, 0.4):
        oracle = noiseless.bloch_ensemble_oracle(e)
        target = quantum.binary_entropy(e)
        assert oracle <= target + 1e-4
        assert oracle >= target - 1e-3
    report(1, "Bloch-ensemble oracle saturates H(E)", watch.check("criterion 1"))


def test_criterion_02_thermal_consistency():
    watch = Stopwatch(1.0)
    for d in range(2, 9):
        scale = thermal.emergent_scale(d)
        for e in np.linspace(scale / 20.0, scale, 20):
            e = float(e)
            tw = thermal.thermal_weights(d, e)
            assert abs(float(np.arange(d) @ tw.weights) - e) <= 1e-9
    for e in np.linspace(0.1, 0.9, 9):
        solved = thermal.thermal_weights(3, float(e)).weights
        closed = thermal.d3_closed_form_weights(float(e))
        assert np.abs(solved - closed).max() <= 1e-8
    report(2, "thermal weights hit the energy target", watch.check("criterion 2"))


def test_criterion_03_dimensional_advantage():
    watch = Stopwatch(1.0)
    curve = noiseless.capacity_curve(0.3, [2, 3, 4, 8, 16, 64])
    values = [v for _, v in curve]
    assert all(b > a for a, b in zip(values[:5], values[1:5]))
    closed = (1 + 0.3) * math.log2(1 + 0.3) - 0.3 * math.log2(0.3)
    assert abs(values[5] - closed) <= 1e-3
    report(3, "capacity grows with dimension toward the closed-form limit",
           watch.check("criterion 3"))


def test_criterion_04_dephasing_closed_forms():
    watch = Stopwatch(10.0)
    for e in np.linspace(0.01, 0.49, 50):
        e = float(e)
        assert abs(
            dephasing.avg_equiprob_capacity(0.5, e).value
            - dephasing.complete_dephasing_avg_equiprob(e)
        ) <= 1e-6
    for e in np.linspace(0.01, 0.99, 50):
        e = float(e)
        assert abs(
            dephasing.strict_equiprob_capacity(0.5, e).value
            - dephasing.complete_dephasing_strict_equiprob(e)
        ) <= 1e-6
    assert dephasing.avg_equiprob_capacity(0.5, 0.25).value == pytest.approx(
        0.31127812445913283, abs=1e-6
    )
    assert dephasing.strict_equiprob_capacity(0.5, 0.25).value == pytest.approx(
        0.13792538097003, abs=1e-6
    )
    report(4, "lambda=1/2 closed forms reproduced", watch.check("criterion 4"))


def test_criterion_05_strict_probability_gap():
    watch = Stopwatch(120.0)
    sigma = 5e-5
    for lam in (0.40, 0.45, 0.50):
        for e in (0.5, 0.7):
            gap = (
                dephasing.strict_optimal_capacity(lam, e).value
                - dephasing.strict_equiprob_capacity(lam, e).value
            )
            assert gap >= 10 * sigma, f"gap {gap} at ({lam}, {e})"
    for lam in (0.3, 0.5):
        diff = abs(
            dephasing.strict_optimal_capacity(lam, 1.0).value
            - dephasing.strict_equiprob_capacity(lam, 1.0).value
        )
        assert diff <= 1e-6
    for lam in (0.0, 1.0):
        for e in (0.25, 0.75):
            diff = abs(
                dephasing.strict_optimal_capacity(lam, e).value
                - dephasing.strict_equiprob_capacity(lam, e).value
            )
            assert diff <= 1e-6
    report(5, "optimized probabilities beat equiprobable by >= 10 sigma",
           watch.check("criterion 5"))


def test_criterion_06_dc_closed_form_vs_full_search():
    watch = Stopwatch(300.0)
    for e in (0.1, 0.25, 0.4):
        numeric = dense_coding.dc_noiseless_numeric(e, "average", "optimized", DC_CFG)
        ep_target = 0.5 * (1.0 - math.sqrt(1.0 - 2.0 * e))
        closed = 2.0 * quantum.binary_entropy(ep_target)
        assert abs(numeric.value - closed) <= 1e-4, f"value at E={e}"
        assert abs(numeric.params["e_prime"] - ep_target) <= 1e-3, f"e_prime at E={e}"
        assert abs(numeric.params["q0"] - (1.0 - ep_target)) <= 1e-3, f"q0 at E={e}"
    report(6, "general-encoding search reproduces the d=2 closed form",
           watch.check("criterion 6"))


def test_criterion_07_advantage_ratio():
    watch = Stopwatch(30.0)
    grid = np.linspace(0.004, 0.499, 100)
    ratios = [
        dense_coding.ec_dc_capacity_d2(float(e)).value / quantum.binary_entropy(float(e))
        for e in grid
    ]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    boundary = dense_coding.ec_dc_capacity_d2(0.5).value / noiseless.noiseless_capacity(
        2, 0.5
    ).value
    assert abs(boundary - 2.0) <= 1e-9
    report(7, "dense-coding advantage ratio is monotone and peaks at 2",
           watch.check("criterion 7"))


def test_criterion_08_no_go():
    watch = Stopwatch(30.0)
    for e in (0.25, 0.4):
        result = dense_coding.passive_no_go_check(500, e, seed=42)
        assert result.max_chi <= quantum.binary_entropy(e) + 1e-9
        assert result.holds
    report(8, "passive encodings never beat the unassisted bound",
           watch.check("criterion 8"))


def test_criterion_09_cq_advantage():
    watch = Stopwatch(600.0)
    for e in np.linspace(0.1, 0.9, 9):
        e = float(e)
        assisted = dense_coding.dc_dephasing_capacity(e, "strict", "optimized", DC_CFG)
        unassisted = dephasing.strict_optimal_capacity(0.5, e)
        assert assisted.value > unassisted.value + 1e-3, f"no advantage at E={e}"
    assisted_full = dense_coding.dc_dephasing_capacity(1.0, "strict", "optimized", DC_CFG)
    unassisted_full = dephasing.strict_optimal_capacity(0.5, 1.0)
    assert abs(assisted_full.value - unassisted_full.value) <= 1e-4
    for e in (0.1, 0.25, 0.4):
        avg = dense_coding.dc_dephasing_capacity(e, "average", "optimized", DC_CFG)
        assert abs(avg.value - quantum.binary_entropy(e)) <= 1e-4
    report(9, "entanglement helps the CQ channel under the strict bound only",
           watch.check("criterion 9"))


def test_criterion_10_dc_hierarchy():
    watch = Stopwatch(900.0)
    grid = [float(e) for e in np.linspace(0.05, 0.45, 9)]
    rows = dense_coding.dc_hierarchy(grid, DC_CFG)
    for row in rows:
        slack = 1e-4
        assert row["dc_avg_opt"] >= row["dc_avg_eq"] - slack, row
        assert row["dc_avg_eq"] >= row["dc_strict_opt"] - slack, row
        assert row["dc_strict_opt"] >= row["dc_strict_eq"] - slack, row
        assert row["dc_strict_eq"] > row["unassisted"] + 1e-3, row
    report(10, "noiseless dense-coding hierarchy holds on the 9-point grid",
           watch.check("criterion 10"))


def test_criterion_11_dual_constraints():
    watch = Stopwatch(1.0)
    assert dual.dual_noiseless_capacity(0.04, 0.9).value == 0.0
    assert dual.dual_dephasing_equiprob_capacity(0.02, 0.9).value == 0.0
    # spot values (6-decimal print precision)
    assert dual.dual_noiseless_capacity(0.6, 0.9).value == pytest.approx(0.701832, abs=1e-4)
    assert dual.dual_noiseless_capacity(0.3, 0.9).value == pytest.approx(0.583123, abs=1e-4)
    assert dual.dual_dephasing_equiprob_capacity(0.3, 0.9).value == pytest.approx(
        0.235432, abs=1e-4
    )
    # branch values against freshly evaluated closed forms
    rm = dual.DualQuery(0.0, 0.9).r_minus
    assert dual.dual_noiseless_capacity(0.6, 0.9).value == pytest.approx(
        1.0 - quantum.binary_entropy(rm), abs=1e-12
    )
    assert dual.dual_dephasing_equiprob_capacity(0.3, 0.9).value == pytest.approx(
        quantum.binary_entropy(0.3)
        - 0.5 * (quantum.binary_entropy(rm) + quantum.binary_entropy(0.6 - rm)),
        abs=1e-12,
    )
    # ensemble consistency at 1e-9
    for e in (0.3, 0.6):
        for result in (
            dual.dual_noiseless_capacity(e, 0.9),
            dual.dual_dephasing_optimal_capacity(e, 0.9),
            dual.dual_dephasing_equiprob_capacity(e, 0.9),
        ):
            ens = result.optimal_ensemble
            assert quantum.holevo_chi(ens) == pytest.approx(result.value, abs=1e-9)
            avg_energy = sum(p * quantum.energy(rho) for p, rho in ens.items)
            assert avg_energy == pytest.approx(min(e, 0.5), abs=1e-9)
            for _, rho in ens.items:
                assert quantum.purity(rho) <= 0.9 + 1e-9
    report(11, "dual-constraint regimes and consistency checks",
           watch.check("criterion 11"))


def test_criterion_12_determinism(tmp_path):
    watch = Stopwatch(300.0)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", "--suite", "all", "--seed", "42", "--out", str(a)]) == 0
    assert cli.main(["verify", "--suite", "all", "--seed", "42", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())
    report(12, "verify --suite all is byte-deterministic", watch.check("criterion 12"))
