"""Classical capacities of finite-dimensional quantum channels under energy
and purity constraints: closed forms, constrained Holevo maximization, and
brute-force oracles for cross-checking."""

from .dense_coding import (
    EncodingPlan,
    SharedState,
    dc_dephasing_capacity,
    dc_hierarchy,
    ec_dc_capacity,
    ec_dc_capacity_d2,
    passive_no_go_check,
    protocol_average_state_spectrum,
    shifted_energy,
    unconstrained_dc_capacity,
    violation_check,
)
from .dephasing import (
    avg_equiprob_capacity,
    avg_optimal_capacity,
    strict_equiprob_capacity,
    strict_optimal_capacity,
)
from .dual import (
    DualQuery,
    dual_dephasing_equiprob_capacity,
    dual_dephasing_optimal_capacity,
    dual_noiseless_capacity,
    dual_optimal_probability,
)
from .noiseless import (
    bloch_ensemble_oracle,
    capacity_curve,
    infinite_dim_capacity,
    noiseless_capacity,
    optimal_encoding,
)
from .quantum import (
    ChannelSpec,
    DensityOperator,
    Ensemble,
    Hamiltonian,
    apply_channel,
    apply_channel_local,
    apply_local_unitary,
    binary_entropy,
    energy,
    holevo_chi,
    is_energy_preserving,
    partial_trace,
    purity,
    qft_phase_state,
    shannon_entropy,
    tensor,
    von_neumann_entropy,
)
from .results import CapacityResult, OptimizerInfo
from .thermal import (
    ThermalWeights,
    d3_closed_form_weights,
    emergent_scale,
    mean_energy,
    partition_function,
    solve_beta,
    thermal_weights,
)

__version__ = "0.1.0"
