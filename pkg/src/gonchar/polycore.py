"""Exact construction and arithmetic of the Gonchar polynomial family.

Everything in this module is exact: coefficients are arbitrary-precision
integers, parameters are rationals, and every operation either returns a
correct value or raises.  The polynomial G(d;z) is

    G(d;z) = [(z-1)^d - z - 1] z^(d-1) + (z-1)^d,

monic of degree 2d-1.  The charged variant G(d,q;z) replaces the first
(z-1)^d by (z-1)^d / q; we store it denominator-cleared (multiplied by the
numerator of q) so downstream sign tests stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb, gcd
from typing import Iterable, Sequence, Union

from .errors import DomainError, InexactDivisionError

RatLike = Union[int, Fraction, "RatQ"]


class RatQ(Fraction):
    """Exact rational, used for charges q and for exact evaluation points.

    A thin subclass of Fraction: normalization (gcd(num, den) = 1, den > 0)
    comes for free; `num`/`den` are exposed under the contract names.
    Arithmetic falls back to Fraction, so results may need re-wrapping.
    """

    __slots__ = ()

    @property
    def num(self) -> int:
        return self.numerator

    @property
    def den(self) -> int:
        return self.denominator


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; coeffs[k] multiplies z^k.

    Canonical form: no trailing zero coefficients, and the zero polynomial
    is the empty tuple.  Construction canonicalizes, so equality of values
    is equality of tuples.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(tuple(out))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(other * c for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def shifted(self, k: int) -> "IntPoly":
        """Multiply by z^k."""
        if self.is_zero:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        return reduce(gcd, self.coeffs, 0)

    def primitive_part(self) -> "IntPoly":
        """Content removed, leading coefficient made positive."""
        c = self.content()
        if c == 0:
            return self
        if self.coeffs[-1] < 0:
            c = -c
        return IntPoly(tuple(a // c for a in self.coeffs))

    def norm1(self) -> int:
        return sum(abs(c) for c in self.coeffs)


@dataclass(frozen=True)
class GoncharInstance:
    """A concrete (d, q) pair with its cleared integer polynomial.

    poly = clearing_factor * G(d,q;z) where clearing_factor = q.num, so the
    roots are exactly those of G(d,q;z).  For q = 1 this is gonchar_poly(d).
    """

    d: int
    q: RatQ
    poly: IntPoly
    clearing_factor: int


def _as_ratq(x: RatLike) -> RatQ:
    if isinstance(x, RatQ):
        return x
    return RatQ(x)


def sign_changes(seq: Iterable[int]) -> int:
    """Number of sign changes in a sequence, zeros skipped."""
    count = 0
    prev = 0
    for c in seq:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


@lru_cache(maxsize=None)
def _binomial_row(d: int) -> tuple[int, ...]:
    return tuple(comb(d, k) for k in range(d + 1))


def gonchar_poly(d: int) -> IntPoly:
    """The monic degree 2d-1 polynomial [(z-1)^d - z - 1] z^(d-1) + (z-1)^d."""
    if d < 1:
        raise DomainError(f"d must be a positive integer, got {d}")
    a = [0] * (2 * d)
    row = _binomial_row(d)
    for k in range(d + 1):
        c = row[k] if (d - k) % 2 == 0 else -row[k]
        a[k + d - 1] += c  # (z-1)^d z^(d-1)
        a[k] += c          # + (z-1)^d
    a[d] -= 1              # - z * z^(d-1)
    a[d - 1] -= 1          # - 1 * z^(d-1)
    return IntPoly(tuple(a))


def gonchar_poly_q(d: int, q: RatLike) -> GoncharInstance:
    """Denominator-cleared G(d,q;z): q.num * G = b(z-1)^d z^(d-1) - a(z+1)z^(d-1) + a(z-1)^d.

    Here q = a/b in lowest terms; the leading coefficient of the cleared
    polynomial is b and its value at z=1 is -2a < 0.
    """
    if d < 1:
        raise DomainError(f"d must be a positive integer, got {d}")
    q = _as_ratq(q)
    if q <= 0:
        raise DomainError(f"q must be positive, got {q}")
    a, b = q.num, q.den
    out = [0] * (2 * d)
    row = _binomial_row(d)
    for k in range(d + 1):
        c = row[k] if (d - k) % 2 == 0 else -row[k]
        out[k + d - 1] += b * c
        out[k] += a * c
    out[d] -= a
    out[d - 1] -= a
    return GoncharInstance(d=d, q=q, poly=IntPoly(tuple(out)), clearing_factor=a)


def reciprocal(p: IntPoly) -> IntPoly:
    """z^deg(p) * p(1/z): the reversed coefficient sequence."""
    if p.is_zero:
        raise DomainError("reciprocal of the zero polynomial is undefined")
    return IntPoly(tuple(reversed(p.coeffs)))


def eval_exact(p: IntPoly, x: RatLike) -> RatQ:
    """Exact value of p at a rational point (Horner)."""
    x = _as_ratq(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return RatQ(acc)


def derivative(p: IntPoly) -> IntPoly:
    return IntPoly(tuple(k * c for k, c in enumerate(p.coeffs) if k > 0))


@lru_cache(maxsize=512)
def exact_gcd(p: IntPoly, r: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS).

    Pseudo-remainders with content stripping after each step; coefficient
    growth stays tame at the degrees this package meets.
    """
    if p.is_zero and r.is_zero:
        raise DomainError("gcd(0, 0) is undefined")
    if p.is_zero:
        return r.primitive_part()
    if r.is_zero:
        return p.primitive_part()
    f, g = p.primitive_part(), r.primitive_part()
    if f.degree < g.degree:
        f, g = g, f
    while not g.is_zero:
        rem = _pseudo_rem(f, g)
        f, g = g, rem.primitive_part()
    return f.primitive_part()


def _pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    """Pseudo-remainder of lc(g)^(deg f - deg g + 1) * f by g."""
    df, dg = f.degree, g.degree
    if df < dg:
        return f
    lc = g.coeffs[-1]
    rem = list(f.coeffs)
    gc = g.coeffs
    for i in range(df - dg, -1, -1):
        top = rem[i + dg]
        if top == 0:
            continue
        for j in range(i + dg + 1):
            rem[j] *= lc
        for j in range(dg + 1):
            rem[i + j] -= top * gc[j]
    return IntPoly(tuple(rem[:dg]))


def divide_exact(p: IntPoly, divisor: IntPoly) -> IntPoly:
    """Quotient p / divisor when the division is exact over the integers.

    Raises InexactDivisionError (with the remainder attached) otherwise —
    including the case of an exact rational quotient with non-integer
    coefficients.
    """
    if divisor.is_zero:
        raise DomainError("division by the zero polynomial")
    if p.is_zero:
        return IntPoly(())
    if p.degree < divisor.degree:
        raise InexactDivisionError("degree of dividend below divisor", remainder=p)
    lead = Fraction(divisor.coeffs[-1])
    dd = divisor.degree
    rem = [Fraction(c) for c in p.coeffs]
    quo = [Fraction(0)] * (p.degree - dd + 1)
    for i in range(p.degree - dd, -1, -1):
        c = rem[i + dd] / lead
        quo[i] = c
        if c:
            for j, b in enumerate(divisor.coeffs):
                rem[i + j] -= c * b
    tail = rem[:dd]
    if any(tail) or any(c.denominator != 1 for c in quo):
        if all(c.denominator == 1 for c in tail):
            attached = IntPoly(tuple(int(c) for c in tail))
        else:
            attached = tuple(tail)
        raise InexactDivisionError(
            f"division of degree-{p.degree} polynomial by degree-{dd} polynomial is not exact",
            remainder=attached,
        )
    return IntPoly(tuple(int(c) for c in quo))


def shift_at_one(inst: GoncharInstance) -> IntPoly:
    """Cleared G(d,q;1+w) as a polynomial in w.

    The substitution z = 1+w collapses to two binomial blocks (the w^d terms
    of the two sums cancel exactly):

        s[m]   = -a (C(d,m) + C(d-1,m))   0 <= m <= d-1
        s[d+m] =  b C(d-1,m)              0 <= m <= d-1

    with q = a/b.  All low-order coefficients are negative and all
    high-order ones positive, so the sequence has exactly one sign change —
    the Descartes certificate for the unique root beyond z = 1.
    """
    d = inst.d
    a, b = inst.q.num, inst.q.den
    s = [0] * (2 * d)
    row_d = _binomial_row(d)
    row_dm1 = _binomial_row(d - 1)
    for m in range(d):
        s[m] = -a * (row_d[m] + row_dm1[m])
        s[d + m] = b * row_dm1[m]
    return IntPoly(tuple(s))
