"""Exception hierarchy shared by all modules."""

from .poly import RingMismatch  # noqa: F401  (re-exported)


class HolonomicError(Exception):
    """Base class for engine errors."""


class ParseError(HolonomicError):
    def __init__(self, message: str, pos: int = -1):
        self.pos = pos
        if pos >= 0:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class UnknownPrimitive(HolonomicError):
    pass


class NonHolonomicInput(HolonomicError):
    pass


class NotHypergeometric(HolonomicError):
    pass


class ConstantSubstitution(HolonomicError):
    pass


class PoleAtExpansionPoint(HolonomicError):
    pass


class InsufficientDepth(HolonomicError):
    pass


class OrderExceeded(HolonomicError):
    def __init__(self, max_order: int, message: str = ""):
        self.max_order = max_order
        super().__init__(message or f"no telescoping recurrence of order <= {max_order}")


class InadmissibleOrder(HolonomicError):
    pass


class NoKFreeElement(HolonomicError):
    pass


class NoXFreeElement(HolonomicError):
    pass


class DegreeBoundExceeded(HolonomicError):
    pass


class SingularPoint(HolonomicError):
    pass


class NotTwoTerm(HolonomicError):
    pass


class EvaluationPole(HolonomicError):
    pass


class ExtendedAlgorithmRequired(HolonomicError):
    """The input needs the extended telescoping algorithm (out of scope)."""


class DiagnosticAbort(HolonomicError):
    """Deterministic resource cap hit (basis size / degree safety valve)."""
