"""Exact rational scalars.

gmpy2.mpq when available (much faster), fractions.Fraction otherwise.  Both
store reduced fractions with positive denominator and stringify as "p/q"/"p",
which is exactly the coefficient grammar used by algebra files and reports.
"""

from .errors import ParseError

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


def parse_rat(text):
    """Parse "p" or "p/q" into an exact rational."""
    try:
        return Rat(str(text).strip())
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad rational coefficient {text!r}: {exc}") from exc
