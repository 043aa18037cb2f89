"""Exception hierarchy shared by all modules."""


class DiracOscillatorError(Exception):
    """Base class for every error raised by this package."""


class DegenerateResolvent(DiracOscillatorError):
    """Resolvent root too close to zero for Ferrari's division by sqrt(2*pi)."""


class NoConvergence(DiracOscillatorError):
    """An iterative root finder did not reach its residual target."""


class DomainError(DiracOscillatorError, ValueError):
    """Argument outside the domain of a closed-form expression."""


class NegativeRadicand(DiracOscillatorError, ValueError):
    """A square root that must be real received a negative argument."""


class NoPhysicalRoot(DiracOscillatorError):
    """Every quartic root was rejected by the unsquared eigenvalue relation."""

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class DegenerateEnergy(DiracOscillatorError):
    """The lower-component formula has a pole at eps = -1."""


class TailNotConverged(DiracOscillatorError):
    """Normalization integral still changes when the cutoff radius is doubled."""


class TruncationNotConverged(DiracOscillatorError):
    """Truncated representation too small for the requested displacement."""
