"""Exception types shared across the toolkit.

The CLI maps :class:`PreconditionError` to exit code 2 and
:class:`NumericalError` to exit code 3.
"""


class RatchebError(Exception):
    """Base class for all toolkit errors."""


class PreconditionError(RatchebError):
    """A documented precondition of an operation was violated by the caller."""


class NumericalError(RatchebError):
    """A numerical procedure could not certify its result."""


class PoleAtEvaluationPoint(NumericalError):
    """Rational evaluation requested at (or too close to) a pole."""


class UnknownFunction(PreconditionError):
    """Requested function name is not registered."""


class NodeOutsideDomain(PreconditionError):
    """An interpolation or quadrature node lies outside the holomorphy domain."""


class ContourTooSmall(PreconditionError):
    """Quadrature contour does not enclose all nodes."""


class ContourOutsideDomain(PreconditionError):
    """Quadrature contour leaves the holomorphy domain."""


class DegeneratePade(PreconditionError):
    """Operation requires a non-degenerate Pade approximant (or a nonzero
    leading error coefficient) and the input does not provide one."""


class NoNontrivialSolution(NumericalError):
    """The linearized interpolation system produced no usable null vector.

    A solution always exists mathematically, so this signals a tolerance
    failure of the solver, not an unsolvable problem.
    """


class PoleAtNode(NumericalError):
    """A denominator root coincides with an interpolation node."""


class UnsupportedDomain(PreconditionError):
    """Domain specification cannot support the requested operation."""


class LawsonStagnation(NumericalError):
    """Lawson iteration plateaued above its levelling tolerance."""


class WindingMismatch(NumericalError):
    """Contour winding number disagrees with the expected zero count."""

    def __init__(self, message, winding=None):
        super().__init__(message)
        self.winding = winding


class NewtonDivergence(NumericalError):
    """Newton refinement failed to locate the expected zeros."""


class UnitarityViolated(NumericalError):
    """A converged unitary approximant failed the modulus-one check."""


class ConditioningWarning(UserWarning):
    """Nearly-confluent nodes were handled by the plain difference quotient."""
