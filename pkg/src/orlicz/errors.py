"""Exception hierarchy shared by all modules."""


class OrliczError(Exception):
    """Base class for every error raised by this package."""


class DomainError(OrliczError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterError(OrliczError, ValueError):
    """Invalid parameters for a Young function, integrand or constructor."""


class NonInvertible(OrliczError):
    """The Young function has no well-defined inverse at the requested value."""


class NonStrict(OrliczError):
    """The operation needs a strict Young function."""


class Delta2Required(OrliczError):
    """The operation needs the Delta_2 condition (finite upper exponent)."""


class LimitsRequired(OrliczError):
    """The limits of t*phi'(t)/phi(t) at 0 or infinity could not be established."""


class Infeasible(OrliczError):
    """Constructor parameters lie outside the regime where the splice exists."""


class NonConvergence(OrliczError):
    """An iterative search did not converge within its budget."""


class QuadratureFailure(OrliczError):
    """Quadrature did not reach its error target and did not diverge either."""


class ZeroFunction(OrliczError):
    """The integrand vanishes identically, the norm problem is degenerate."""


class Divergent(OrliczError):
    """A modular or norm is infinite."""


class InnerFailure(OrliczError):
    """An inner norm of a mixed-norm computation failed."""

    def __init__(self, y, cause):
        super().__init__(f"inner norm failed at y={y!r}: {cause}")
        self.y = y
        self.cause = cause


class SpecParseError(OrliczError, ValueError):
    """Malformed spec text."""

    def __init__(self, message, text="", pos=0):
        # usage errors have no source text and so no position
        line = col = None
        if text:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.column = col


class BoundViolation(OrliczError):
    """A bound that should follow from the inputs fails on the grid."""


class InvalidYoungFunction(ParameterError):
    """A parsed function violates a Young-function axiom on the validation grid."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
