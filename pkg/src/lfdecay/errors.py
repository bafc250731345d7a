"""Exception hierarchy.

Argument-type problems (bad ranges, malformed tables) subclass ``ValueError``
so callers can catch them generically; numerical failures derive from
:class:`NumericalError` and map to exit code 3 in the CLI.
"""


class LFDecayError(Exception):
    """Base class for all package errors."""


class DomainError(LFDecayError, ValueError):
    """Input outside the domain an operation is defined on."""


class NumericalError(LFDecayError):
    """A computation could not produce a trustworthy number."""


class PoleError(NumericalError):
    """Undamped Lorentz resonance evaluated exactly on the pole."""


class ConvergenceError(NumericalError):
    """Successive quadrature orders disagree beyond the requested tolerance."""


class NoSignChangeError(NumericalError):
    """The transverse rate never turns negative over the scanned cavity range."""


class MonotonicityError(NumericalError):
    """The spectral minimum of the transverse rate is not monotone in r."""
