"""Exception hierarchy shared by the series engine and the invariant extractors."""


class SeriesError(ArithmeticError):
    """Base class for all errors raised by this package."""


class NonUnitLeading(SeriesError):
    """The leading coefficient of a series is not invertible in the coefficient ring."""


class BadConstantTerm(SeriesError):
    """``series_log`` was given a series that does not start with 1."""


class TruncationError(SeriesError):
    """A coefficient beyond the known window was requested."""


class HalfIntegerLeak(SeriesError):
    """A half-integer exponent reached an operation that needs integral exponents."""


class NotSymmetric(SeriesError):
    """A polynomial expected to be invariant under y <-> 1/y and w <-> 1/w is not."""


class NotIntegral(SeriesError):
    """A coefficient expected to be an integer has a nontrivial denominator."""


class NotPolynomial(SeriesError):
    """A window series that should be a Laurent polynomial has a nonzero tail."""


class WindowTooSmall(SeriesError):
    """The y-window cannot hold the terms required by a computation."""
