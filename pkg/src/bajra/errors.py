"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` for bad inputs
(domain, shape, parameter problems) and :class:`NumericError` for failures
inside the numerical machinery. The CLI maps them to exit codes 1 and 2.
"""


class BajraError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(BajraError, ValueError):
    """Input rejected before any numerical work was attempted."""


class NumericError(BajraError, ArithmeticError):
    """A numerical routine could not produce a trustworthy answer."""


# profiles
class EmptyProfile(ValidationError):
    pass


class MismatchedLengths(ValidationError):
    pass


class RaggedDecisions(ValidationError):
    pass


class NegativeWeight(ValidationError):
    pass


class NonFiniteWeight(ValidationError):
    pass


class ZeroWeightVector(ValidationError):
    pass


# maps / families
class DomainViolation(ValidationError):
    pass


class NonPositiveDecision(DomainViolation):
    pass


class NonMonotoneRatio(ValidationError):
    pass


class ZeroCrossingInF2(ValidationError):
    pass


class WrongDimension(ValidationError):
    pass


class ExpressionError(ValidationError):
    pass


class UnknownMap(ValidationError):
    pass


class MismatchedShapes(ValidationError):
    pass


class ConstantDecisions(ValidationError):
    pass


class TooFewParties(ValidationError):
    pass


class RankDeficientSamples(ValidationError):
    pass


class BadArguments(ValidationError):
    pass


class OutsideCone(NumericError):
    """The vector handed to a ray solver is not in the cone of the image."""


class RootNotBracketed(OutsideCone):
    """The target ratio lies outside the range of f1/f2 on the interval."""


class ConvergenceFailure(NumericError):
    pass


class ConsistencyError(NumericError):
    """Two computation routes that must agree did not."""
