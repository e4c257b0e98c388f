"""Exception types shared across the toolkit."""


class BendwebError(Exception):
    """Base class for all toolkit errors."""


class FileError(BendwebError):
    """An input file is missing or unreadable."""


class ParseError(BendwebError):
    """An input file is structurally invalid.

    Carries the offending 1-based row number when known (the header
    counts as row 1).
    """

    def __init__(self, message, path=None, row=None):
        self.path = path
        self.row = row
        prefix = ""
        if path is not None:
            prefix += f"{path}: "
        if row is not None:
            prefix += f"row {row}: "
        super().__init__(prefix + message)


class DuplicateDomain(ParseError):
    """The same domain appears in more than one profile row."""


class DuplicateTarget(ParseError):
    """The same domain is assigned to more than one group."""


class UnknownTarget(BendwebError):
    """A domain was expected to be a member of the target set but is not."""


class MissingSnapshot(BendwebError):
    """A snapshot label was requested that is not available."""


class EmptyInput(BendwebError):
    """An operation that requires at least one value received none."""


class LengthMismatch(BendwebError):
    """Paired sequences have different lengths."""


class TooFewPoints(BendwebError):
    """Not enough observations for the requested statistic."""


class SpecError(BendwebError):
    """A synthetic scenario specification violates its invariants."""


class InvariantError(BendwebError):
    """An internal consistency check failed; indicates a bug."""
