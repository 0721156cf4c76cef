"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user-supplied data: bad files, bad parameters, bad dimensions."""


class NumericalError(RuntimeError):
    """A numerical routine failed: singular system, non-convergence, non-finite result."""
