"""Small conversion helpers between exact rationals and gmpy2 values.

gmpy2 constructors reject Fraction *subclasses* (they type-check exactly),
so every rational-to-mpfr crossing goes through here.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpfr


def to_mpfr(x, prec: int | None = None) -> mpfr:
    """Round any rational-ish value to mpfr (a single rounding via mpq)."""
    if isinstance(x, (mpfr, int, float)):
        return mpfr(x, prec) if prec else mpfr(x)
    f = Fraction(x)
    q = gmpy2.mpq(f.numerator, f.denominator)
    return mpfr(q, prec) if prec else mpfr(q)


def to_fraction(x) -> Fraction:
    """Exact Fraction from an mpfr (dyadic) or any rational-ish value."""
    if isinstance(x, mpfr):
        n, d = x.as_integer_ratio()
        return Fraction(int(n), int(d))
    return Fraction(x)
