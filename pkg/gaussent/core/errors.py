"""
Exception hierarchy shared by the state, entanglement and dynamics modules.
"""


class GaussEntError(Exception):
    """Base class for every error raised by gaussent."""


class DomainError(GaussEntError, ValueError):
    """Raised when a parameter lies outside the domain of an operation."""


class PreconditionError(DomainError):
    """Raised when an operation is applied to a model or state it does not cover."""


class NotStandardForm(GaussEntError):
    """Raised when a covariance matrix breaks the two-mode standard-form pattern."""

    def __init__(self, entry: tuple[int, int], deviation: float):
        self.entry = entry
        self.deviation = deviation
        super().__init__(
            f"covariance is not in standard form: entry {entry} deviates by {deviation:.3e}"
        )


class UnphysicalState(GaussEntError):
    """Raised when a state violates the uncertainty principle."""


class SingularCovariance(GaussEntError):
    """Raised when a covariance matrix cannot be inverted."""


class NumericalError(GaussEntError):
    """Raised when a numerical routine produces an inconsistent result."""


class DivergenceError(NumericalError):
    """Raised when the moment integrator produces non-finite values."""

    def __init__(self, step: int, t: float):
        self.step = step
        self.t = t
        super().__init__(f"integration diverged at step {step} (t={t:.6g})")
