"""Shared exception types for the exact toolkit."""


class DegeneratePathError(ValueError):
    """The operation needs det L(lambda) != 0 as a polynomial, but the path
    is identically singular (its spectrum is the whole parameter domain)."""


class RegularityError(ValueError):
    """An evaluation point hits a denominator zero, i.e. lies outside the
    validity region of a local object."""


class CapExceededError(ValueError):
    """A combinatorial feasibility cap was exceeded."""


class InvariantViolationError(RuntimeError):
    """An internally verified identity failed.  This signals a bug in the
    library, never a bad input."""


class NewtonConvergenceError(RuntimeError):
    """Newton iteration failed to reach the requested residual."""

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"Newton did not converge: residual {residual:.3e} "
            f"after {iterations} iterations"
        )


class ProblemFormatError(ValueError):
    """A problem file failed to parse; `location` points at the offending key."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")
