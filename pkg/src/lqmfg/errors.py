"""Exception types shared across the library."""


class ModelValidationError(ValueError):
    """A model parameter violates its admissibility constraint."""


class ZeroControlCoefficient(ModelValidationError):
    """The control coefficient b is zero, so no control channel exists."""


class NonpositiveCostWeight(ModelValidationError):
    """A cost weight (c_z or c_u) is not strictly positive."""


class DiscountOutOfRange(ModelValidationError):
    """The discount factor is outside [0, 1)."""


class NegativeVariance(ModelValidationError):
    """An initial-state variance is negative."""


class NegativeNoiseScale(ModelValidationError):
    """A noise standard deviation is negative."""


class NonFiniteParameter(ModelValidationError):
    """A parameter is NaN or infinite."""


class AssumptionViolated(RuntimeError):
    """The contraction condition T_p < 1 (or a stability precondition) fails."""


class RatioMismatch(ValueError):
    """Two sequences do not share a tail ratio, so their sup distance has no finite reduction."""


class DegenerateDenominator(ArithmeticError):
    """A geometric-sum denominator is numerically zero."""


class IndexOutOfRange(IndexError):
    """A replication index lies outside the stored results."""
