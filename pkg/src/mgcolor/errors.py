"""Exception hierarchy shared by all modules."""


class MgColorError(Exception):
    """Base class for every error raised by the package."""


class InputError(MgColorError, ValueError):
    """A caller supplied malformed or out-of-range input."""


class DomainError(MgColorError, ValueError):
    """Input is well formed but violates a mathematical precondition."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceError(MgColorError, RuntimeError):
    """A configured search cap or retry budget was exceeded."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class InternalError(MgColorError, RuntimeError):
    """An invariant that should always hold was violated."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace
