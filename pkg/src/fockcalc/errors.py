"""Exception hierarchy for the engine.

Everything derives from FockcalcError so callers can catch broadly; the CLI
maps subclasses onto exit codes (input errors vs resource caps).
"""


class FockcalcError(Exception):
    """Base class for all engine errors."""


class ParseError(FockcalcError):
    """Malformed algebra file, coefficient string, or element expression."""


class DegreeError(FockcalcError):
    """A cohomological degree outside the allowed range 0..4."""


class AxiomViolation(FockcalcError):
    """A loaded algebra fails commutativity, associativity, the unit law,
    graded-product bookkeeping, or integral support."""


class SingularPairing(FockcalcError):
    """The Poincare pairing matrix of an algebra is not invertible."""


class InvalidPart(FockcalcError):
    """A creation part with size < 1."""


class MixedDegree(FockcalcError):
    """Bidegree requested for an operator or vector that is not homogeneous."""


class TruncationExceeded(FockcalcError):
    """A computation produced a monomial above the configured weight cap."""


class SingularGram(FockcalcError):
    """A Gram matrix needed for an adjoint computation is not invertible."""


class DomainError(FockcalcError):
    """An operator was applied outside the domain where it is determined."""


class OracleMissing(FockcalcError):
    """A required iterated commutator is not available from the oracle."""


class CapExceeded(FockcalcError):
    """A symmetric-group computation beyond the configured rank cap."""


class UnknownBasisId(FockcalcError):
    """A basis id that does not exist in the algebra."""
