"""Exception types shared across the package."""


class CapconError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CapconError, ValueError):
    """An argument lies outside its mathematically valid domain."""


class NonNormalized(DomainError):
    """A probability vector does not sum to one within tolerance."""


class NegativeProbability(DomainError):
    """A probability entry is negative beyond tolerance."""


class NotAState(DomainError):
    """A matrix violates the density-operator invariants."""


class NotUnitary(DomainError):
    """A matrix is not unitary within tolerance."""


class DimensionMismatch(CapconError, ValueError):
    """Operands have incompatible dimensions."""


class IndexOutOfRange(CapconError, IndexError):
    """An index lies outside its valid range."""


class DegenerateRadius(DomainError):
    """Purity bound L = 1/2 leaves only the maximally mixed state."""


class InfeasibleProblem(CapconError, RuntimeError):
    """No point satisfying all constraints was found."""


class ResolutionTooLarge(CapconError, ValueError):
    """Grid oracle resolution exceeds the hard evaluation budget."""


class UnknownFigure(CapconError, ValueError):
    """Figure name is not one of the known figure ids."""
