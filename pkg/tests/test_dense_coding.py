"""Tests for the energy-constrained dense-coding module."""
import math

import numpy as np
import pytest

from capcon import dense_coding as dc
from capcon import noiseless, optimize, quantum, thermal
from capcon.errors import DimensionMismatch, DomainError, IndexOutOfRange

D2_QUARTER = 1.2017520733857123   # 2 H((1 - sqrt(1/2))/2)
EP_QUARTER = 0.1464466094067262
SHIFT_D3 = 1.1513878188659974     # k=1 shift of the qutrit weights at E = 1/2

FAST_CFG = optimize.OptimizerConfig(max_evals=6000, refine_iters=3000)


class TestSharedState:
    def test_vector_and_entanglement(self):
        psi = dc.SharedState.from_energy(2, EP_QUARTER)
        v = psi.vector
        assert v[0] == pytest.approx(math.sqrt(1 - EP_QUARTER), abs=1e-12)
        assert v[3] == pytest.approx(math.sqrt(EP_QUARTER), abs=1e-12)
        assert psi.entanglement() == pytest.approx(
            quantum.binary_entropy(EP_QUARTER), abs=1e-12
        )

    def test_marginals(self):
        psi = dc.SharedState.from_energy(3, 0.5)
        rho = quantum.DensityOperator.from_pure(psi.vector)
        marginal = quantum.partial_trace(rho, (3, 3), keep="A")
        assert quantum.energy(marginal) == pytest.approx(0.5, abs=1e-10)


class TestShiftedEnergy:
    def test_identity_shift(self):
        assert dc.shifted_energy(0, [0.75, 0.25]) == pytest.approx(0.25, abs=1e-12)

    def test_qubit_flip(self):
        assert dc.shifted_energy(1, [0.75, 0.25]) == pytest.approx(0.75, abs=1e-12)

    def test_qutrit(self):
        w = thermal.d3_closed_form_weights(0.5)
        assert dc.shifted_energy(1, w) == pytest.approx(SHIFT_D3, abs=1e-10)

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            dc.shifted_energy(2, [0.5, 0.5])

    def test_matches_local_unitary_route(self):
        # independent route: actually rotate the shared state and trace out
        psi = dc.SharedState.from_energy(3, 0.7)
        rho = quantum.DensityOperator.from_pure(psi.vector)
        for k in range(3):
            u = dc.protocol_unitary(3, k, 0)
            rotated = quantum.apply_local_unitary(u, rho, (3, 3))
            marginal = quantum.partial_trace(rotated, (3, 3), keep="A")
            assert quantum.energy(marginal) == pytest.approx(
                dc.shifted_energy(k, psi.weights), abs=1e-10
            )


class TestUnconstrainedCapacity:
    def test_maximally_entangled(self):
        psi = dc.SharedState.from_energy(2, 0.5)
        assert dc.unconstrained_dc_capacity(psi) == pytest.approx(2.0, abs=1e-12)

    def test_product_state(self):
        psi = dc.SharedState(d=2, e_prime=0.0, weights=np.array([1.0, 0.0]))
        assert dc.unconstrained_dc_capacity(psi) == pytest.approx(1.0, abs=1e-12)

    def test_partially_entangled(self):
        psi = dc.SharedState.from_energy(2, EP_QUARTER)
        assert dc.unconstrained_dc_capacity(psi) == pytest.approx(
            1.6008760366928563, abs=1e-12
        )


class TestViolationCheck:
    def test_qubit_violation(self):
        psi = dc.SharedState.from_energy(2, 0.2)
        check = dc.violation_check(2, 0.3, psi)
        assert check.avg_energy == pytest.approx(0.5, abs=1e-12)
        assert check.violates

    def test_boundary_no_violation(self):
        psi = dc.SharedState.from_energy(2, 0.2)
        assert not dc.violation_check(2, 0.5, psi).violates

    def test_d4(self):
        psi = dc.SharedState.from_energy(4, 0.9)
        check = dc.violation_check(4, 1.2, psi)
        assert check.avg_energy == pytest.approx(1.5, abs=1e-12)
        assert check.violates


class TestProtocolCapacity:
    def test_saturated(self):
        assert dc.ec_dc_capacity(2, 0.5).value == pytest.approx(2.0, abs=1e-12)

    def test_quarter(self):
        assert dc.ec_dc_capacity(2, 0.25).value == pytest.approx(D2_QUARTER, abs=1e-6)

    def test_small_energy(self):
        assert dc.ec_dc_capacity(2, 1e-4).value < 0.01
        assert dc.ec_dc_capacity(2, 0.0).value == 0.0

    def test_matches_closed_form_grid(self):
        for e in np.linspace(0.01, 0.49, 50):
            e = float(e)
            assert dc.ec_dc_capacity(2, e).value == pytest.approx(
                dc.ec_dc_capacity_d2(e).value, abs=1e-6
            )

    def test_beats_unassisted(self):
        for d, e in ((2, 0.25), (3, 0.6), (4, 1.0)):
            assert (
                dc.ec_dc_capacity(d, e).value
                > noiseless.noiseless_capacity(d, e).value + 1e-4
            )

    def test_plan_feasible_and_consistent(self):
        for d, e in ((2, 0.3), (3, 0.8)):
            result = dc.ec_dc_capacity(d, e)
            plan = result.params["plan"]
            psi = result.params["shared"]
            assert plan.mean_energy() <= e + 1e-9
            # independent route: rebuild the full bipartite average state
            ens = dc.encoded_ensemble(plan, psi)
            marginal = quantum.partial_trace(ens.average_state(), (d, d), keep="A")
            assert quantum.energy(marginal) == pytest.approx(plan.mean_energy(), abs=1e-9)

    def test_less_entanglement_than_budget(self):
        for e in (0.1, 0.25, 0.4):
            result = dc.ec_dc_capacity(2, e)
            ep = result.params["e_prime"]
            assert ep < e
            assert quantum.shannon_entropy(
                thermal.thermal_weights(2, ep).weights
            ) < quantum.shannon_entropy(thermal.thermal_weights(2, e).weights)

    def test_forcing_full_energy_removes_advantage(self):
        psi = dc.SharedState.from_energy(2, 0.25)
        shifted = np.array([dc.shifted_energy(k, psi.weights) for k in range(2)])
        q, hq = dc._max_entropy_group_weights(shifted, 0.25)
        assert q[0] == pytest.approx(1.0, abs=1e-6)
        assert hq == pytest.approx(0.0, abs=1e-5)

    def test_d3_against_simplex_grid(self):
        e = 0.6
        best = -1.0
        for ep in np.linspace(0.01, e, 41):
            w = thermal.thermal_weights(3, float(ep)).weights
            shifted = np.array([dc.shifted_energy(k, w) for k in range(3)])
            ent = quantum.shannon_entropy(w)
            q0 = np.linspace(0, 1, 101)
            q1 = np.linspace(0, 1, 101)
            g0, g1 = np.meshgrid(q0, q1, indexing="ij")
            g2 = 1.0 - g0 - g1
            ok = (g2 >= -1e-12) & (g0 * shifted[0] + g1 * shifted[1] + g2 * shifted[2] <= e)
            with np.errstate(divide="ignore", invalid="ignore"):
                hq = -(
                    g0 * np.log2(g0) + g1 * np.log2(g1) + np.clip(g2, 0, None) * np.log2(np.clip(g2, 1e-300, None))
                )
            hq = np.nan_to_num(hq, nan=0.0)
            vals = np.where(ok, hq + ent, -np.inf)
            best = max(best, float(vals.max()))
        reduced = dc.ec_dc_capacity(3, e).value
        assert reduced >= best - 1e-4
        assert reduced <= math.log2(3) + quantum.shannon_entropy(
            thermal.thermal_weights(3, e).weights
        )


class TestClosedFormD2:
    def test_quarter(self):
        r = dc.ec_dc_capacity_d2(0.25)
        assert r.value == pytest.approx(D2_QUARTER, abs=1e-12)
        assert r.params["e_prime"] == pytest.approx(EP_QUARTER, abs=1e-12)
        assert r.params["q0"] == pytest.approx(1 - EP_QUARTER, abs=1e-12)
        assert r.params["concurrence"] == pytest.approx(math.sqrt(0.5), abs=1e-12)

    def test_concurrence_of_shared_state(self):
        for e in (0.1, 0.25, 0.4):
            r = dc.ec_dc_capacity_d2(e)
            w = thermal.thermal_weights(2, r.params["e_prime"]).weights
            con = 2.0 * math.sqrt(w[0] * w[1])
            assert con == pytest.approx(math.sqrt(2 * e), abs=1e-10)
            assert r.params["concurrence"] == pytest.approx(con, abs=1e-10)

    def test_saturation(self):
        assert dc.ec_dc_capacity_d2(0.5).value == 2.0
        assert dc.ec_dc_capacity_d2(0.9).value == 2.0

    def test_zero(self):
        assert dc.ec_dc_capacity_d2(0.0).value == 0.0

    def test_advantage_ratio_monotone(self):
        grid = np.linspace(0.005, 0.499, 100)
        ratios = [
            dc.ec_dc_capacity_d2(float(e)).value / quantum.binary_entropy(float(e))
            for e in grid
        ]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        assert dc.ec_dc_capacity_d2(0.5).value / noiseless.noiseless_capacity(
            2, 0.5
        ).value == pytest.approx(2.0, abs=1e-9)


class TestAverageStateSpectrum:
    def test_passive_only(self):
        psi = dc.SharedState.from_energy(2, 0.25)
        plan = dc.EncodingPlan.build([1.0, 0.0], psi)
        spectrum = dc.protocol_average_state_spectrum(plan, psi)
        assert np.allclose(sorted(spectrum), sorted([0.75, 0.25, 0.0, 0.0]), atol=1e-12)

    def test_uniform(self):
        psi = dc.SharedState.from_energy(2, 0.5)
        plan = dc.EncodingPlan.build([0.5, 0.5], psi)
        spectrum = dc.protocol_average_state_spectrum(plan, psi)
        assert np.allclose(spectrum, 0.25, atol=1e-12)
        assert quantum.shannon_entropy(spectrum) == pytest.approx(2.0, abs=1e-12)

    def test_entropy_additivity(self):
        psi = dc.SharedState.from_energy(2, EP_QUARTER)
        plan = dc.EncodingPlan.build([1 - EP_QUARTER, EP_QUARTER], psi)
        spectrum = dc.protocol_average_state_spectrum(plan, psi)
        assert quantum.shannon_entropy(spectrum) == pytest.approx(
            quantum.shannon_entropy(plan.q) + quantum.shannon_entropy(psi.weights),
            abs=1e-12,
        )

    def test_matches_rebuilt_state(self):
        for d, e, qv in ((2, 0.3, [0.8, 0.2]), (3, 0.7, [0.5, 0.3, 0.2])):
            psi = dc.SharedState.from_energy(d, e)
            plan = dc.EncodingPlan.build(qv, psi)
            ens = dc.encoded_ensemble(plan, psi)
            eigs = np.sort(np.linalg.eigvalsh(ens.average_state().matrix))
            formula = np.sort(dc.protocol_average_state_spectrum(plan, psi))
            assert np.abs(eigs - formula).max() < 1e-10

    def test_dimension_mismatch(self):
        psi = dc.SharedState.from_energy(2, 0.3)
        plan = dc.EncodingPlan.build([0.9, 0.1], psi)
        psi3 = dc.SharedState.from_energy(3, 0.3)
        with pytest.raises(DimensionMismatch):
            dc.protocol_average_state_spectrum(plan, psi3)


class TestNoGo:
    def test_random_passive_encodings_bounded(self):
        result = dc.passive_no_go_check(200, 0.25, seed=11)
        assert result.bound == pytest.approx(quantum.binary_entropy(0.25), abs=1e-12)
        assert result.holds
        assert result.max_chi <= result.bound + 1e-9

    def test_identity_z_pair(self):
        psi = dc.SharedState.from_energy(2, 0.25)
        rho = quantum.DensityOperator.from_pure(psi.vector)
        sz = np.diag([1.0, -1.0]).astype(complex)
        items = (
            (0.5, rho),
            (0.5, quantum.apply_local_unitary(sz, rho, (2, 2))),
        )
        chi = quantum.holevo_chi(quantum.Ensemble(items))
        assert chi <= quantum.binary_entropy(0.25) + 1e-9

    def test_half_energy_bound(self):
        result = dc.passive_no_go_check(50, 0.5, seed=12)
        assert result.bound == pytest.approx(1.0, abs=1e-12)
        assert result.holds

    def test_domain(self):
        with pytest.raises(DomainError):
            dc.passive_no_go_check(10, 0.75)


class TestGeneralEncodingSearch:
    def test_matches_protocol_at_quarter(self):
        numeric = dc.dc_noiseless_numeric(0.25, "average", "optimized", FAST_CFG)
        assert numeric.value == pytest.approx(D2_QUARTER, abs=1e-4)
        assert numeric.params["e_prime"] == pytest.approx(EP_QUARTER, abs=1e-3)
        assert numeric.params["q0"] == pytest.approx(1 - EP_QUARTER, abs=1e-3)

    def test_average_feasibility(self):
        numeric = dc.dc_noiseless_numeric(0.25, "average", "optimized", FAST_CFG)
        assert numeric.params["mean_energy"] <= 0.25 + 1e-9

    def test_strict_feasibility(self):
        numeric = dc.dc_noiseless_numeric(0.25, "strict", "optimized", FAST_CFG)
        assert max(numeric.params["energies"]) <= 0.25 + 1e-9

    def test_dephasing_strict_beats_unassisted(self):
        from capcon import dephasing as dp

        assisted = dc.dc_dephasing_capacity(0.5, "strict", "optimized", FAST_CFG)
        unassisted = dp.strict_optimal_capacity(0.5, 0.5)
        assert assisted.value > unassisted.value + 1e-3

    def test_dephasing_average_equals_unassisted(self):
        assisted = dc.dc_dephasing_capacity(0.25, "average", "optimized", FAST_CFG)
        assert assisted.value == pytest.approx(quantum.binary_entropy(0.25), abs=1e-4)

    def test_domain(self):
        with pytest.raises(DomainError):
            dc.dc_dephasing_capacity(1.2)
        with pytest.raises(DomainError):
            dc.dc_noiseless_numeric(0.7)
        with pytest.raises(DomainError):
            dc.dc_hierarchy([0.7])
