"""Exception hierarchy.

``InputError`` subclasses signal malformed or inconsistent problem data,
``SolveError`` subclasses signal that a well-formed problem could not be
solved.
"""


class CauchyError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CauchyError, ValueError):
    pass


class RaggedShape(InputError):
    pass


class OrderZero(InputError):
    pass


class ZeroTopLayer(InputError):
    pass


class NegativeCoordinate(InputError):
    pass


class OutOfRange(InputError):
    pass


class IncompatibleExtents(InputError):
    pass


class ParseError(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class LCellMissing(InputError):
    """A cell of the initial-data set carries no value."""


class UnknownCellGiven(InputError):
    """A cell that the solver must compute was given a value in the input."""


class ExtentViolation(IncompatibleExtents):
    pass


class DimensionMismatch(InputError):
    pass


class SolveError(CauchyError):
    pass


class MissingData(SolveError):
    pass


class NotSolvable(SolveError):
    pass


class Singular(SolveError):
    pass


class CapExceeded(SolveError):
    pass
