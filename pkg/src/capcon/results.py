"""Shared result carrier for the capacity computations."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .quantum import Ensemble


@dataclass(frozen=True)
class OptimizerInfo:
    """Diagnostics of the maximization that produced a capacity value."""

    evaluations: int
    converged: bool
    argmax: tuple


@dataclass(frozen=True)
class CapacityResult:
    """Capacity in bits plus the argmax that achieves it.

    `params` holds named scalars of the optimal configuration (delta, p0,
    e_prime, ...); `unique` marks cases where the optimal ensemble is known
    to be the only maximizer.
    """

    value: float
    optimal_ensemble: Ensemble = None
    optimizer_info: OptimizerInfo = None
    params: dict = field(default_factory=dict)
    unique: bool = None

    def __post_init__(self):
        if self.value < -1e-12:
            raise DomainError(f"capacity {self.value} below 0")
        if self.optimal_ensemble is not None:
            import math

            cap = 2.0 * math.log2(self.optimal_ensemble.dim)
            if self.value > cap + 1e-9:
                raise DomainError(f"capacity {self.value} above 2 log2(dim)")
