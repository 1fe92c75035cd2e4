"""Exception hierarchy shared by all squot modules."""


class SquotError(Exception):
    """Base class for all squot-specific errors."""


class ZeroWeight(SquotError):
    """A weight vector contains a zero entry."""


class DegenerateWeights(SquotError):
    """A generic-only code path was handed repeated weights."""


class DenominatorVanishesAtZero(SquotError):
    """Series expansion at 0 requested for a function with a pole there."""


class ReconstructionMismatch(SquotError):
    """Verification coefficients of a rational reconstruction are nonzero.

    Signals a wrong denominator ansatz or an insufficient series prefix.
    """


class OracleMismatch(SquotError):
    """A computed Hilbert series disagrees with brute-force monomial counts."""


class PartitionPointsMismatch(SquotError):
    """Schur evaluation called with len(points) != len(partition)."""


class UnsupportedDimension(SquotError):
    """Closed-form Laurent coefficient requested below its minimal n."""


class InsufficientCoefficients(SquotError):
    """A Laurent expansion is too short for the requested constraint order."""


class PrimitiveCoverFailure(SquotError):
    """The chosen primitive pseudoreflections do not cover the reflections."""


class TheoremInconsistency(SquotError):
    """The two closed-form routes to a finite-group coefficient disagree."""


class NotApplicable(SquotError):
    """An operation's precondition (e.g. integrality of 1/gamma0) fails."""
