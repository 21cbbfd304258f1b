"""Exception hierarchy shared by all tomokit modules."""


class TomokitError(Exception):
    """Base class for library errors."""


class InvalidStateError(TomokitError, ValueError):
    """Parameters do not describe a physical state (e.g. odd cat with all amplitudes zero)."""


class GridCoverageError(TomokitError, ValueError):
    """A grid is too narrow or too coarse for the requested object."""


class SingularKernelError(TomokitError, ValueError):
    """A kernel denominator or constraint system is singular at the given arguments."""


class AccuracyError(TomokitError, ArithmeticError):
    """A numerical integral failed to reach its accuracy target."""
