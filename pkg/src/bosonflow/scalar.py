"""Exact rational scalars and their canonical text form.

The coefficient field everywhere in this package is the rationals,
represented by :class:`fractions.Fraction` (always in lowest terms,
positive denominator, exact arithmetic).  Rationals cross the JSON/CSV
boundary as strings ``"p/q"`` (or just ``"p"`` for integers) so that no
precision is ever lost.
"""

from fractions import Fraction

Scalar = Fraction


def parse_rational(text):
    """Parse ``"p"`` or ``"p/q"`` into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value):
    """Canonical string form: ``"p"`` when the denominator is 1, else ``"p/q"``."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
