"""Exception hierarchy shared by every fairnet module."""


class FairnetError(Exception):
    """Base class for all errors raised by fairnet."""


class InstanceError(FairnetError, ValueError):
    """A fair-division instance violates a structural invariant."""


class AllocationError(FairnetError, ValueError):
    """An allocation is not a valid partial assignment of the goods."""


class PreconditionError(FairnetError, ValueError):
    """An operation was called on an input outside its domain."""


class ParseError(FairnetError, ValueError):
    """A text file could not be parsed."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ReductionError(FairnetError, ValueError):
    """A hardness-reduction construction is undefined for its source."""


class WitnessError(FairnetError, ValueError):
    """A witness could not be mapped across a reduction."""


class OracleLimitError(FairnetError, ValueError):
    """A brute-force oracle was asked to solve an instance beyond its size guard."""


class InputError(ParseError):
    """An input file could not be opened or read."""
