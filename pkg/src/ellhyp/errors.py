"""Exception hierarchy shared by every layer of the package."""


class EllHypError(Exception):
    """Base class for all package errors."""


class DomainError(EllHypError, ValueError):
    """Input outside the domain of an operation (bad bases, broken constraints)."""


class PoleError(EllHypError, ArithmeticError):
    """Argument lies on (or within the proximity threshold of) a pole."""


class ZeroError(EllHypError, ArithmeticError):
    """A vanishing factor that the operation would have to divide by, or return."""


class NonConvergence(EllHypError, RuntimeError):
    """Quadrature or summation budget exhausted before reaching tolerance."""


class PolePinch(NonConvergence):
    """Integrand blows up on the contour: a pole sits on or next to it."""


class OverflowGuard(EllHypError, OverflowError):
    """Result magnitude is not representable in double precision."""


class ParseError(EllHypError, ValueError):
    """Malformed parameter file."""
