"""Exception types shared by the library and the CLI."""


class VortexLensError(Exception):
    """Base class for all library errors."""


class InvalidInputError(VortexLensError, ValueError):
    """Raised for nonphysical or malformed inputs (CLI exit code 2)."""


class ConvergenceError(VortexLensError, RuntimeError):
    """Raised when an iterative or quadrature computation fails to converge
    (CLI exit code 3).

    ``achieved`` carries the best value reached (e.g. the remaining tail of a
    truncated expansion) when one is meaningful.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
