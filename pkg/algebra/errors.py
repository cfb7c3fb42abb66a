"""
Exception root shared by every package.

Each package defines its own subclasses next to the code that raises them;
callers that only care about "the analysis could not proceed" catch
FewnomialError.
"""


class FewnomialError(Exception):
    """Base class for all analysis errors."""


class PowOfNonpositive(FewnomialError):
    """A rational power was applied to a quantity not certified positive."""


class ZeroDivisorUndecided(FewnomialError):
    """A divisor interval kept containing zero at the working precision."""


class NotSquarefree(FewnomialError):
    """Root isolation was asked for a polynomial with repeated roots."""


class DegreeAmbiguous(FewnomialError):
    """The leading coefficient of a polynomial could not be signed."""


class UndecidedCoefficient(FewnomialError):
    """A coefficient sign is needed but stayed undecided."""
