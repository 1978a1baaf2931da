"""Exception taxonomy shared by the decision engine and the operator lab.

Two families matter to callers: malformed input (``InvalidInterval``,
``NegativeEndpoint``, ``DimensionMismatch``) and mathematically inadmissible
requests (everything deriving from ``AdmissibilityError``).  The CLI maps the
first family to exit code 2 and the second to exit code 3.
"""


class ScalexError(Exception):
    """Base class for all package-specific errors."""


class InvalidInterval(ScalexError, ValueError):
    """An interval with lo > hi, or a non-finite endpoint."""


class NegativeEndpoint(ScalexError, ValueError):
    """Spectrum values live in [0, oo); a negative endpoint was supplied."""


class DimensionMismatch(ScalexError, ValueError):
    """Operands whose shapes cannot be combined."""


class AdmissibilityError(ScalexError):
    """A request that is well-formed but mathematically inadmissible."""


class NotMember(AdmissibilityError):
    """A point required to lie in a set does not."""


class NotAdmissible(AdmissibilityError):
    """A spectrum/flag combination ruled out by the classification."""


class NotIsolated(AdmissibilityError):
    """The marked point is not isolated, so its indicator is ill-defined."""


class NoGap(AdmissibilityError):
    """No spectral gap at the requested cut point."""


class NotScalinglike(AdmissibilityError):
    """The scaling identity fails beyond tolerance and not only at the boundary."""


class NoConvergence(AdmissibilityError):
    """An iteration exhausted its step budget without terminating."""


class IllConditioned(AdmissibilityError):
    """Singular values fall inside the ambiguity band of a threshold test."""


class IndexOutOfDepth(ScalexError, IndexError):
    """A matrix-unit index beyond the truncation depth."""


class UndefinedAt(ScalexError, ValueError):
    """A piecewise function was evaluated outside its pieces."""
