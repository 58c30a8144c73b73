"""Exception types shared by every module."""


class InputError(ValueError):
    """Malformed or inconsistent input data (bad table, wrong target, ...)."""


class PreconditionError(ValueError):
    """An operation was called on data that does not meet its precondition."""


class UnsupportedError(NotImplementedError):
    """A feature that is deliberately not computed (e.g. nonabelian H^2)."""


class InvariantError(AssertionError):
    """An internal invariant failed. Always a bug, never a user error."""
