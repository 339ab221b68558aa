"""Exception hierarchy shared by every layer of the package."""


class ShiftcoverError(Exception):
    """Base class for all errors raised by shiftcover."""


class ParseError(ShiftcoverError):
    """A text input (group, presentation, cobordism, matrix, knot file) is malformed."""


class MalformedWordError(ShiftcoverError):
    """A word references a generator outside its presentation."""


class BudgetError(ShiftcoverError):
    """A configured work bound was exceeded."""

    def __init__(self, what, bound):
        super().__init__(f"{what} exceeded the configured bound of {bound}")
        self.what = what
        self.bound = bound


class SizeLimitError(BudgetError):
    """Group closure grew past the configured order bound."""


class DataConsistencyError(ShiftcoverError):
    """Cobordism data or a count violates a structural identity."""


class DivisibilityError(DataConsistencyError):
    """A trace is not divisible by |G|^(mu-1); usually a wrong component count."""


class ShapeError(ShiftcoverError):
    """Matrix shapes or bases are incompatible for the requested operation."""
