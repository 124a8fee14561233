"""Exception hierarchy.

Every error carries the name of the module that raised it so the CLI can
report where a failure originated.
"""

from __future__ import annotations


class SCLError(Exception):
    module = "scl"


class InputError(SCLError):
    """Malformed matrix, curve or config input."""

    module = "cli"


# linalg
class SingularResolvent(SCLError):
    module = "linalg"


class ConvergenceFailure(SCLError):
    module = "linalg"


class NotPSD(SCLError):
    module = "linalg"


# curves
class AmbiguousProjection(SCLError):
    """Raised in strict mode when a point sits near the medial axis.

    The projection that would have been returned is attached as
    ``.projection``.
    """

    module = "curves"

    def __init__(self, message, projection=None):
        super().__init__(message)
        self.projection = projection


class NotStarShaped(SCLError):
    module = "curves"


class BetaTooLarge(SCLError):
    module = "curves"


class BadCurve(SCLError):
    module = "curves"


# pseudoanalytic
class TubeTooWide(SCLError):
    module = "pseudoanalytic"


# dynkin
class SpectrumOffCurve(SCLError):
    module = "dynkin"


class QuadratureDiverged(SCLError):
    module = "dynkin"


# criteria
class NotAContraction(SCLError):
    module = "criteria"


class SingularFactor(SCLError):
    module = "criteria"


# zoo
class BadParams(SCLError):
    module = "zoo"


class DomainError(SCLError):
    module = "zoo"
