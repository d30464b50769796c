class XYOptError(Exception):
    """Base exception for every error raised by xyopt."""

    pass


class ConfigError(XYOptError):
    """Raised when a run configuration or potential document is invalid."""

    pass


class ComputationError(XYOptError):
    """Base exception for failures inside the numerical modules."""

    pass


class DomainError(ComputationError, ValueError):
    """Raised when an argument lies outside the alphabet [0, 1] or its allowed range."""

    pass


class NondifferentiablePointError(ComputationError):
    """Raised when a derivative is requested on the diagonal of a potential with an |x-y| term."""

    pass


class NegativeCycleError(ComputationError):
    """Raised when the reduced-cost digraph carries a materially negative cycle."""

    pass


class SourceNotInAubryError(ComputationError):
    """Raised when a barrier source lies outside the minimizer set."""

    pass


class InfiniteBarrierError(ComputationError):
    """Raised when a word's tail leaves the minimizer set and no orbit match exists."""

    pass


class HypothesisError(ComputationError):
    """Raised when an operation is called outside the hypotheses it relies on."""

    pass


class InstanceSizeError(ComputationError):
    """Raised when an exhaustive enumerator is asked for more than desk scale."""

    pass


class FamilyError(ComputationError):
    """Raised when a potential is not a member of the required family."""

    pass


class EmptyGroundStateError(ComputationError):
    """Raised when a ground state carries no minimizer components."""

    pass
