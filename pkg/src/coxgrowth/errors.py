"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class CoxGrowthError(Exception):
    exit_code = 1


class InputError(CoxGrowthError, ValueError):
    """Malformed or out-of-contract input."""

    exit_code = 2


class CapExceeded(CoxGrowthError):
    """A configured size cap (word length, radius, vertex budget, rank) was hit."""

    exit_code = 3


class InconsistencyError(CoxGrowthError):
    """Two independent routes disagreed; indicates a numerical or logic bug."""

    exit_code = 4


class NonConvergence(InconsistencyError):
    """Root iteration hit its cap; ``roots`` holds the partial result."""

    def __init__(self, message, roots=None):
        super().__init__(message)
        self.roots = roots
