"""Named error conditions raised by the series engine.

Each error subclasses the built-in exception it specialises, so callers that
only care about the broad category can keep catching ``ValueError`` or
``ZeroDivisionError``.
"""


class DivisionByZero(ZeroDivisionError):
    """Division (or a negative power) of the zero scalar."""


class InvalidOperator(ValueError):
    """An operator index or case precondition is violated (e.g. U_0)."""


class InvalidParameter(ValueError):
    """A lower hypergeometric parameter is a nonpositive integer."""


class TruncationTooShort(ValueError):
    """A coefficient beyond a series' known range was requested."""


class ZeroSeries(ValueError):
    """An eigen test was asked about a series with no nonzero coefficient."""


class InsufficientOrder(ValueError):
    """Too few known coefficients to decide an eigen relation."""


class NotClosedForm(Exception):
    """The expression has no hypergeometric closed form (a signal, not a bug)."""


class ConsistencyError(AssertionError):
    """Two independent derivations of the same quantity disagree."""
