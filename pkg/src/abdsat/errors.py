"""Exception types shared across the package."""


class AbdsatError(Exception):
    """Base class for errors raised by this package."""


class InstanceError(AbdsatError):
    """Malformed abduction instance (syntax or semantics).

    Carries the 1-based line number for text-format parse errors,
    or None for semantic errors without a useful location.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapExceeded(AbdsatError):
    """A configured resource cap was hit (oracle size, closure size)."""


class BackdoorError(AbdsatError):
    """A backdoor set failed verification for the requested base class."""


class SolverError(AbdsatError):
    """Base class for SAT backend failures."""


class SolverNotFound(SolverError):
    """The external solver executable could not be started."""


class SolverOutputError(SolverError):
    """The external solver produced unusable output or a bogus model."""
