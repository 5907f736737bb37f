"""Exception types shared across the toolkit."""


class FormatError(ValueError):
    """Raised when an input file or document does not match its declared format."""


class NumericError(RuntimeError):
    """Raised when a numeric procedure fails (divergence, undefined statistic)."""


class AlignmentError(RuntimeError):
    """Raised when a passage cannot be aligned (e.g. it exceeds the size cap)."""
