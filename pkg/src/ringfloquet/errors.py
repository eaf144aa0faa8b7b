"""Exception hierarchy."""


class RingFloquetError(Exception):
    """Base class for all package errors."""


class DomainError(RingFloquetError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ResourceError(RingFloquetError):
    """Requested table, array or transform exceeds a size cap."""


class DegenerateError(RingFloquetError, ValueError):
    """Input collapses the quantity being asked for (static drive, empty peak)."""


class InconsistencyError(RingFloquetError, ValueError):
    """Two inputs that must agree do not."""


class RegimeError(RingFloquetError, ValueError):
    """Parameters fall outside the regime an approximation is valid in."""


class TruncationError(RingFloquetError):
    """A truncated series failed to converge within its index cap.

    Carries the last two partial sums so the caller can judge how far off it was.
    """

    def __init__(self, message, last_partials=(float("nan"), float("nan"))):
        super().__init__(message)
        self.last_partials = tuple(last_partials)


class IntegrationError(RingFloquetError):
    """An ODE integration lost unitarity beyond tolerance."""


class VerificationError(RingFloquetError):
    """An internal cross-check between two computation routes failed."""
