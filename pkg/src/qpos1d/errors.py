"""Exception types shared across the package.

Numerical-guard errors signal that a computation tripped one of its own
consistency checks (cutoff instability, spectral overflow, ...); the CLI
maps them to exit code 3, while configuration problems map to exit code 2.
"""


class NumericalGuardError(RuntimeError):
    """A numerical invariant guard tripped; the result cannot be trusted."""


class SpectralOverflowError(NumericalGuardError):
    """A boosted spectrum would leave the grid's momentum window."""


class CutoffInstabilityError(NumericalGuardError):
    """A regularized-kernel result changed materially under p_max doubling."""


class ProjectionLossError(NumericalGuardError):
    """A state lost too much norm when restricted to a coarse basis."""


class ShapeDomainError(ValueError):
    """A packet shape does not fit inside the grid with the required margin."""


class ConfigError(ValueError):
    """Bad experiment configuration (unknown key, malformed line, ...)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
