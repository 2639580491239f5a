"""Exception types raised by the engine.

Every mathematical precondition failure derives from :class:`PreconditionError`
so the CLI can map them onto a single exit code.
"""


class HilbMotiveError(Exception):
    pass


class PreconditionError(HilbMotiveError):
    """A mathematical precondition of an operation is violated."""


class NonUnitLeadingTerm(PreconditionError):
    pass


class ConstantTermPresent(PreconditionError):
    pass


class ConstantTermNotOne(PreconditionError):
    pass


class MixedHodgeExponents(PreconditionError):
    pass


class PartitionMismatch(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class OnWall(PreconditionError):
    pass


class DegeneratePair(PreconditionError):
    pass


class BoundaryContact(PreconditionError):
    pass


class ProductFormUnavailable(PreconditionError):
    pass


class HalfIntegerLefschetzPower(PreconditionError):
    pass


class NonIntegralExponent(PreconditionError):
    pass


class ExponentOffGrid(PreconditionError):
    pass


class InvalidSurface(PreconditionError):
    pass
