"""Exception hierarchy shared by all modules."""


class OrthographError(Exception):
    """Base class for errors raised by this package."""


class InputError(OrthographError, ValueError):
    """Malformed input: wrong shape, non-finite entries, mismatched signatures."""


class DegenerateInputError(InputError):
    """Input is well-formed but degenerate for the operation (e.g. the zero element)."""


class NoWitnessError(OrthographError):
    """An annihilating partner was requested for an invertible matrix."""


class ConstructionError(OrthographError):
    """A path constructor's preconditions failed, or a built edge did not certify."""


class NoPathError(OrthographError):
    """No certified path could be produced between two vertices."""
