"""Exception hierarchy shared across the package."""


class PromwalkError(Exception):
    """Base class for all errors raised by promwalk."""


class RangeError(PromwalkError):
    """A label or index is outside its permitted range."""


class CycleError(PromwalkError):
    """Cover relations contain a directed cycle."""


class RedundantCoverError(PromwalkError):
    """A cover pair is already implied by transitivity."""


class CapacityError(PromwalkError):
    """An enumeration would exceed the configured cap."""


class NotNaturalError(PromwalkError):
    """Operation requires a naturally labeled poset."""


class ClassError(PromwalkError):
    """Poset is outside the structural class required by the operation."""


class LabelingError(PromwalkError):
    """Chains are not labeled consecutively."""


class PositionError(PromwalkError):
    """Position argument out of range for the word."""


class PairError(PromwalkError):
    """Pair is not breakable in this poset."""


class UpsetPropertyError(PromwalkError):
    """An eigenvalue violates the support conditions needed to split it."""


class DimensionError(PromwalkError):
    """Mismatched dimensions."""


class NonPositiveError(PromwalkError):
    """Probability entries must be strictly positive."""


class MultiplicityError(PromwalkError):
    """Eigenvalue multiplicities do not sum to the number of states."""
