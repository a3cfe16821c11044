"""Certified real-root isolation and the critical distance R_q.

Certification discipline: every returned enclosure is backed by exact
integer sign evaluations at rational points.  Floating point (gmpy2 mpfr)
only *proposes* approximations via Newton steps; it never decides anything.

Counting machinery comes in two independent flavours:

* Sturm chains (sturm_count) — the classical signed-remainder sequence;
* Descartes / Vincent-Collins-Akritas bisection (isolate_real_roots), plus
  the one-sign-change shift certificate for the root beyond z = 1.

critical_distance uses the shift certificate by default (O(d) integer work)
and can be asked to re-derive uniqueness through a Sturm count; tests run
both routes against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import NamedTuple, Optional, Sequence

import gmpy2
from gmpy2 import mpfr

from ._mp import to_fraction, to_mpfr
from .errors import DomainError, InternalInvariantError, NumericFailure
from .polycore import (
    IntPoly,
    RatQ,
    derivative,
    divide_exact,
    exact_gcd,
    gonchar_poly_q,
    shift_at_one,
    sign_changes,
)

PRECISION_START = 128
PRECISION_CEILING = 16384


@dataclass(frozen=True)
class Interval:
    """Open-ish rational interval (lo, hi); used as an isolating interval."""

    lo: RatQ
    hi: RatQ

    def __post_init__(self):
        lo = RatQ(self.lo)
        hi = RatQ(self.hi)
        if not lo < hi:
            raise DomainError(f"interval requires lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> RatQ:
        return RatQ(self.hi - self.lo)

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi


@dataclass(frozen=True)
class RootApprox:
    """A certified enclosure: the true root lies in [value-radius, value+radius].

    radius = 0 together with a non-None `exact` means the root is known as
    an exact rational.
    """

    value: mpfr
    radius: mpfr
    working_precision: int
    exact: Optional[RatQ] = None


# ---------------------------------------------------------------------------
# Exact evaluation / bounds
# ---------------------------------------------------------------------------


def eval_sign(p: IntPoly, x) -> int:
    """Sign of p(x) at a rational point, via integer-only Horner.

    Returns -1, 0, or 1.  Clears denominators on the fly so no Fraction
    normalization happens in the loop.
    """
    if p.is_zero:
        return 0
    fx = Fraction(x)
    num, den = fx.numerator, fx.denominator
    cs = p.coeffs
    acc = cs[-1]
    dpow = 1
    for k in range(len(cs) - 2, -1, -1):
        dpow *= den
        acc = acc * num + cs[k] * dpow
    return (acc > 0) - (acc < 0)


def squarefree_part(p: IntPoly) -> IntPoly:
    """p with repeated factors collapsed (primitive, positive leading coeff)."""
    if p.is_zero:
        raise DomainError("zero polynomial has no squarefree part")
    if p.degree == 0:
        return IntPoly((1,))
    g = exact_gcd(p, derivative(p))
    if g.degree == 0:
        return p.primitive_part()
    return divide_exact(p.primitive_part() * g.leading, g).primitive_part()


def cauchy_bound(p: IntPoly) -> RatQ:
    """Every real root of p has |root| < this bound (1 + max |a_i/a_n|)."""
    if p.is_zero or p.degree == 0:
        raise DomainError("root bound needs degree >= 1")
    lc = abs(p.coeffs[-1])
    m = max(abs(c) for c in p.coeffs[:-1])
    return RatQ(1 + Fraction(m, lc))


# ---------------------------------------------------------------------------
# Sturm chains
# ---------------------------------------------------------------------------


def _prem_tracked(f: IntPoly, g: IntPoly) -> tuple[IntPoly, int]:
    """Pseudo-remainder of lc(g)^(deg f - deg g + 1) * f by g, plus the sign
    of that multiplier (so callers can restore true remainder signs)."""
    df, dg = f.degree, g.degree
    lc = g.coeffs[-1]
    steps = df - dg + 1
    rem = list(f.coeffs)
    gc = g.coeffs
    for i in range(df - dg, -1, -1):
        top = rem[i + dg]
        for j in range(i + dg):
            rem[j] *= lc
        for j in range(dg):
            rem[i + j] -= top * gc[j]
        rem[i + dg] = 0
    mult_sign = 1 if lc > 0 or steps % 2 == 0 else -1
    return IntPoly(tuple(rem[:dg])), mult_sign


def _strip_positive(p: IntPoly) -> IntPoly:
    """Divide out the content but keep the sign of the leading coefficient."""
    c = p.content()
    if c <= 1:
        return p
    return IntPoly(tuple(a // c for a in p.coeffs))


def _sturm_chain(sf: IntPoly) -> list[IntPoly]:
    chain = [sf, derivative(sf)]
    if chain[1].is_zero:
        return chain[:1]
    while True:
        r, mult_sign = _prem_tracked(chain[-2], chain[-1])
        if r.is_zero:
            return chain
        # next element is -(f mod g) up to a positive factor
        nxt = -r if mult_sign > 0 else r
        chain.append(_strip_positive(nxt))


def _variations_at(chain: Sequence[IntPoly], x: Fraction) -> int:
    return sign_changes([eval_sign(p, x) for p in chain])


def sturm_count(p: IntPoly, a, b) -> int:
    """Number of distinct real roots of p in (a, b].

    Endpoints that happen to be roots are nudged up by the exact rational
    1/(2 * ||p||_1 * deg p), which keeps (a, b] semantics: a root at `a`
    stays excluded, a root at `b` stays included.
    """
    if p.is_zero:
        raise DomainError("sturm_count of the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    sf = squarefree_part(p)
    if sf.degree == 0:
        return 0
    eps = Fraction(1, 2 * p.norm1() * p.degree)
    if eval_sign(sf, a) == 0:
        a += eps
    if eval_sign(sf, b) == 0:
        b += eps
    chain = _sturm_chain(sf)
    return _variations_at(chain, a) - _variations_at(chain, b)


# ---------------------------------------------------------------------------
# Descartes / VCA isolation
# ---------------------------------------------------------------------------


def _compose_unit(p: IntPoly, l: Fraction, h: Fraction) -> tuple[int, ...]:
    """Integer coefficients of den^n * p(l + (h-l)u); roots in (l,h) map to (0,1)."""
    den = (l.denominator * h.denominator) // gcd_int(l.denominator, h.denominator)
    alpha = l.numerator * (den // l.denominator)
    beta = (h - l).numerator * (den // (h - l).denominator)
    cs = p.coeffs
    res = [cs[-1]]
    cpow = 1
    for k in range(len(cs) - 2, -1, -1):
        cpow *= den
        nxt = [alpha * res[0]]
        for j in range(1, len(res)):
            nxt.append(alpha * res[j] + beta * res[j - 1])
        nxt.append(beta * res[-1])
        nxt[0] += cs[k] * cpow
        res = nxt
    return tuple(res)


def gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _descartes_on(p: IntPoly, l: Fraction, h: Fraction) -> int:
    """Descartes bound for the number of roots of p in the open interval (l, h)."""
    q = list(_compose_unit(p, l, h))
    # u -> 1/(1+s): reverse, then Taylor-shift by one
    q.reverse()
    n = len(q)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            q[j] += q[j + 1]
    return sign_changes(q)


class _ExactHit(Exception):
    def __init__(self, root: Fraction):
        self.root = root


def _vca(sf: IntPoly, l: Fraction, h: Fraction, out: list[Interval]):
    cnt = _descartes_on(sf, l, h)
    if cnt == 0:
        return
    if cnt == 1:
        out.append(Interval(RatQ(l), RatQ(h)))
        return
    mid = (l + h) / 2
    if eval_sign(sf, mid) == 0:
        raise _ExactHit(mid)
    _vca(sf, l, mid, out)
    _vca(sf, mid, h, out)


def _small_divisors(n: int, cap: int = 4096) -> list[int]:
    """Positive divisors of |n|, abandoning completeness politely on huge inputs:
    only divisors composed of prime factors found by bounded trial division."""
    n = abs(n)
    divs = [1]
    f = 2
    while f * f <= n and f < 100_000:
        if n % f == 0:
            mult = []
            while n % f == 0:
                n //= f
                mult.append(f)
            cur = list(divs)
            power = 1
            for _ in mult:
                power *= f
                cur.extend(d * power for d in divs)
            divs = cur
            if len(divs) > cap:
                return divs[:cap]
        f += 1 if f == 2 else 2
    if n > 1:
        divs = divs + [d * n for d in divs]
    return divs


def _rational_root_sweep(sf: IntPoly) -> tuple[IntPoly, list[RatQ]]:
    """Find rational roots among divisor candidates of trailing/leading coeffs,
    deflating each one found.  Complete when both coefficients factor within
    the trial-division bound; always sound."""
    exacts: list[RatQ] = []
    # roots at zero: strip z^k
    k = 0
    while k < len(sf.coeffs) and sf.coeffs[k] == 0:
        k += 1
    if k:
        exacts.append(RatQ(0))
        sf = IntPoly(sf.coeffs[k:])
    if sf.degree < 1:
        return sf, exacts
    num_cands = _small_divisors(sf.coeffs[0])
    den_cands = _small_divisors(sf.coeffs[-1])
    seen = set()
    for v in den_cands:
        for u in num_cands:
            for cand in (Fraction(u, v), Fraction(-u, v)):
                if cand in seen:
                    continue
                seen.add(cand)
                if sf.degree >= 1 and eval_sign(sf, cand) == 0:
                    exacts.append(RatQ(cand))
                    lin = IntPoly((-cand.numerator, cand.denominator))
                    sf = divide_exact(sf * cand.denominator, lin).primitive_part()
    return sf, exacts


def isolate_real_roots(p: IntPoly) -> tuple[list[Interval], list[RatQ]]:
    """Disjoint isolating intervals plus exactly-known rational roots.

    Intervals carry exactly one (simple, irrational-or-undetected-rational)
    root each, with nonzero values at both endpoints; every real root of p
    is covered by exactly one interval or one exact entry.
    """
    if p.is_zero:
        raise DomainError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return [], []
    sf = squarefree_part(p)
    sf, exacts = _rational_root_sweep(sf)
    intervals: list[Interval] = []
    while sf.degree >= 1:
        bound = Fraction(cauchy_bound(sf))
        # next power of two, so bisection points stay dyadic
        b = Fraction(1)
        while b < bound:
            b *= 2
        out: list[Interval] = []
        try:
            _vca(sf, -b, b, out)
        except _ExactHit as hit:
            exacts.append(RatQ(hit.root))
            lin = IntPoly((-hit.root.numerator, hit.root.denominator))
            sf = divide_exact(sf * hit.root.denominator, lin).primitive_part()
            continue
        intervals = out
        break
    narrowed: list[Interval] = []
    for iv in intervals:
        tight = _narrow_interval(sf, iv, exacts)
        if tight is not None:
            narrowed.append(tight)
    narrowed.sort(key=lambda iv: iv.lo)
    exacts.sort()
    return narrowed, exacts


_NARROW_WIDTH = Fraction(1, 256)


def _narrow_interval(sf: IntPoly, iv: Interval,
                     exacts: list[RatQ]) -> Optional[Interval]:
    """Shrink an isolating interval by exact-sign bisection.

    Keeps endpoints dyadic-friendly and the single enclosed root strictly
    interior; a midpoint that lands on the root moves it to ``exacts`` and
    drops the interval.
    """
    lo, hi = Fraction(iv.lo), Fraction(iv.hi)
    s_lo = eval_sign(sf, lo)
    while hi - lo > _NARROW_WIDTH:
        mid = (lo + hi) / 2
        s_mid = eval_sign(sf, mid)
        if s_mid == 0:
            exacts.append(RatQ(mid))
            return None
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return Interval(RatQ(lo), RatQ(hi))


# ---------------------------------------------------------------------------
# Refinement
# ---------------------------------------------------------------------------


def _mpfr_horner(p: IntPoly, x: mpfr) -> mpfr:
    acc = mpfr(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _mpfr_horner_err(p: IntPoly, x: mpfr) -> tuple[mpfr, mpfr]:
    """Horner value together with a rigorous bound on its rounding error.

    Running-error analysis: each step acc = fl(fl(acc*x) + c) commits at most
    one ulp of |acc*x| plus one of the new |acc|, and earlier errors are
    amplified by |x| per remaining step.  A value whose magnitude falls at or
    below this bound is indistinguishable from zero at the working precision
    (total cancellation), so Newton steps based on it carry no information.
    """
    acc = mpfr(0)
    mu = mpfr(0)
    ax = abs(x)
    for c in reversed(p.coeffs):
        t = acc * x
        acc = t + c
        mu = mu * ax + abs(t) + abs(acc)
    prec = gmpy2.get_context().precision
    return acc, mu * mpfr(2) ** (3 - prec)


def refine_root(p: IntPoly, iso: Interval, tol) -> RootApprox:
    """Certified refinement of the unique simple root in `iso` to radius <= tol.

    Bisection (exact signs) narrows the bracket; Newton in mpfr proposes fast
    improvements; the final enclosure is always certified by exact sign
    changes at value +- radius.  Precision doubles on failure up to the
    ceiling, then raises NumericFailure.
    """
    if p.is_zero:
        raise DomainError("cannot refine a root of the zero polynomial")
    lo, hi = Fraction(iso.lo), Fraction(iso.hi)
    s_lo, s_hi = eval_sign(p, lo), eval_sign(p, hi)
    if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
        raise DomainError("interval does not bracket a single simple root by sign")
    dp = derivative(p)
    tol_frac = to_fraction(tol) if not isinstance(tol, Fraction) else tol
    if tol_frac <= 0:
        raise DomainError("tol must be positive")

    # start the ladder high enough to resolve tol at all
    tol_bits = max(0, -(tol_frac.numerator.bit_length() - tol_frac.denominator.bit_length()))
    prec = max(PRECISION_START, tol_bits + 64)
    while prec <= PRECISION_CEILING:
        with gmpy2.context(precision=prec):
            result = _refine_at_precision(p, dp, lo, hi, s_lo, s_hi, tol_frac, prec)
        if isinstance(result, RootApprox):
            return result
        lo, hi, s_lo, s_hi = result  # carry the narrowed bracket upward
        prec *= 2
    raise NumericFailure(
        f"no certified enclosure at radius {tol_frac} within {PRECISION_CEILING} bits"
    )


def _refine_at_precision(p, dp, lo, hi, s_lo, s_hi, tol_frac, prec):
    """One rung of the ladder.  Returns RootApprox on success, else the
    narrowed bracket (lo, hi, s_lo, s_hi)."""
    for _round in range(3):
        # --- exact bisection toward a Newton basin; the first round trusts
        # the incoming bracket and goes straight to Newton
        steps = 0
        while steps < 24 * _round and (hi - lo) > tol_frac:
            mid = (lo + hi) / 2
            s = eval_sign(p, mid)
            if s == 0:
                return RootApprox(to_mpfr(mid), mpfr(0), prec, exact=RatQ(mid))
            if s == s_lo:
                lo = mid
            else:
                hi = mid
            steps += 1
        if (hi - lo) <= tol_frac:
            # pure bisection already certifies: root strictly inside (lo, hi);
            # inflate the reported radius past the value's own rounding error
            mid = (lo + hi) / 2
            value = to_mpfr(mid)
            rad = Fraction(3, 4) * (hi - lo) + abs(mid - to_fraction(value))
            return RootApprox(value, to_mpfr(rad), prec, exact=None)

        # --- Newton proposals from the bracket midpoint
        x = to_mpfr(Fraction(lo + hi, 2))
        converged = False
        step = None
        for it in range(120):
            fx, floor = _mpfr_horner_err(p, x)
            if abs(fx) <= floor:
                if it == 0:
                    # this precision cannot even see the function near the
                    # bracket.  An exactly-zero evaluation means the start
                    # point itself is suspect: settle it with integer
                    # arithmetic.  Otherwise escalate immediately -- exact
                    # work on rounding noise would be wasted.
                    if fx == 0:
                        mid = to_fraction(x)
                        s_mid = eval_sign(p, mid)
                        if s_mid == 0:
                            return RootApprox(x, mpfr(0), prec, exact=RatQ(mid))
                        if s_mid == s_lo:
                            return mid, hi, s_mid, s_hi
                        return lo, mid, s_lo, s_mid
                    return lo, hi, s_lo, s_hi
                converged = True  # at the eval-noise floor; certify exactly below
                break
            dfx = _mpfr_horner(dp, x)
            if dfx == 0:
                break
            step = fx / dfx
            x = x - step
            if not (lo < to_fraction(x) < hi):
                break
            if abs(step) < to_mpfr(tol_frac) / 8:
                converged = True
                break
        if converged and step is not None:
            # snap the candidate to a coarse dyadic grid: exact sign checks
            # get small denominators, at the cost of a grid cell in radius
            g = max(
                0, tol_frac.denominator.bit_length() - tol_frac.numerator.bit_length()
            ) + 24
            xf = to_fraction(x)
            xq = Fraction(round(xf * (1 << g)), 1 << g)
            r = max(to_fraction(abs(step)) * 4 + abs(xf - xq), Fraction(4, 1 << g))
            while r <= Fraction(2, 3) * tol_frac:
                a, b = xq - r, xq + r
                sa, sb = eval_sign(p, a), eval_sign(p, b)
                if sa == 0:
                    return RootApprox(to_mpfr(a), mpfr(0), prec, exact=RatQ(a))
                if sb == 0:
                    return RootApprox(to_mpfr(b), mpfr(0), prec, exact=RatQ(b))
                if sa != sb and lo <= a and b <= hi:
                    # xq is exactly representable at this precision, so only
                    # the radius needs headroom against its own rounding
                    return RootApprox(to_mpfr(xq), to_mpfr(r * Fraction(5, 4)), prec, exact=None)
                r *= 16
        # Newton failed to certify: bisect more and try again
    return lo, hi, s_lo, s_hi


# ---------------------------------------------------------------------------
# Critical distance and derived quantities
# ---------------------------------------------------------------------------


def critical_distance(d: int, q, tol=Fraction(1, 10**30), *, certify: str = "descartes") -> RootApprox:
    """The unique root R_q of the cleared instance polynomial in (1, oo).

    Existence and uniqueness are certified before refinement:
    - "descartes" (default): the shift-to-1 coefficient sequence has exactly
      one sign change, so there is exactly one root with z > 1;
    - "sturm": additionally run a Sturm count over (1, B].
    The bracket endpoint B starts at 3 + ceil(q) and doubles until the sign
    goes positive (covers small d, where R_q = 1 + 2q can exceed 3 + q).
    """
    inst = gonchar_poly_q(d, q)
    poly = inst.poly
    shifted = shift_at_one(inst)
    if sign_changes(shifted.coeffs) != 1:
        raise InternalInvariantError(
            f"shift coefficient sequence of (d={d}, q={inst.q}) lost its single sign change"
        )
    if d == 1:
        root = RatQ(1 + 2 * inst.q)
        return RootApprox(to_mpfr(root, PRECISION_START), mpfr(0), PRECISION_START, exact=root)
    qf = Fraction(inst.q)
    b = Fraction(3 + ceil(qf))
    while True:
        s = eval_sign(poly, b)
        if s > 0:
            break
        if s == 0:
            return RootApprox(to_mpfr(b, PRECISION_START), mpfr(0), PRECISION_START, exact=RatQ(b))
        b *= 2
    if certify == "sturm":
        n = sturm_count(poly, 1, b)
        if n != 1:
            raise InternalInvariantError(
                f"Sturm count over (1, {b}] returned {n}, expected 1 (d={d}, q={inst.q})"
            )
    elif certify != "descartes":
        raise DomainError(f"unknown certification mode {certify!r}")
    iso = _tight_bracket(poly, Fraction(1), b, d, qf) or Interval(RatQ(1), RatQ(b))
    return refine_root(poly, iso, tol)


def _tight_bracket(poly: IntPoly, lo: Fraction, hi: Fraction, d: int, qf: Fraction) -> Optional[Interval]:
    """Cheap uncertified Newton from the first-order seed 2 + ln(3q)/d, then
    an exact sign check of a narrow window around the landing point.  Saves
    refine_root most of its exact bisection work; returning None is always
    safe (caller falls back to the wide bracket).

    mpfr precision escalates until the evaluation-noise floor clears; mpfr
    rungs cost milliseconds, exact sign evaluations cost far more, so the
    exact checks only run once Newton has genuinely settled.
    """
    dp = derivative(poly)
    n = poly.degree
    prec = 256
    while prec <= 1 << 13:
        with gmpy2.context(precision=prec):
            x = mpfr(2) + gmpy2.log(to_mpfr(3 * qf)) / d
            if not (lo < to_fraction(x) < hi):
                x = to_mpfr((lo + hi) / 2)
            settled = False
            step = None
            for it in range(90):
                fx, floor = _mpfr_horner_err(poly, x)
                if abs(fx) <= floor:
                    settled = step is not None
                    break
                dfx = _mpfr_horner(dp, x)
                if dfx == 0:
                    break
                step = fx / dfx
                x = x - step
                if abs(step) < mpfr(2) ** -140:
                    settled = True
                    break
            if settled:
                xf = to_fraction(x)
                xq = Fraction(round(xf * (1 << 130)), 1 << 130)
                w = max(to_fraction(abs(step)) * 16 + abs(xf - xq), Fraction(1, 2**120))
                for _ in range(3):
                    a, b = xq - w, xq + w
                    if lo < a and b < hi:
                        sa, sb = eval_sign(poly, a), eval_sign(poly, b)
                        if sa != 0 and sb != 0 and sa != sb:
                            return Interval(RatQ(a), RatQ(b))
                    w *= 2**10
        prec *= 2
    return None


def rho(d: int, tol=Fraction(1, 10**30)) -> RootApprox:
    """rho(d) = R_1(d) - 1: critical distance measured from the sphere surface."""
    r = critical_distance(d, 1, tol)
    exact = RatQ(r.exact - 1) if r.exact is not None else None
    # R_1 lies in (2, 3], so subtracting 1 at a couple of guard bits above
    # the working precision is exact and the radius carries over unchanged
    with gmpy2.context(precision=r.working_precision + 8):
        shifted = r.value - 1
    return RootApprox(shifted, r.radius, r.working_precision, exact=exact)


def asymptotic_estimate(d: int, q, precision: int = 128) -> mpfr:
    """First-order law 2 + ln(3q)/d for the critical distance."""
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    q = RatQ(q)
    if q <= 0:
        raise DomainError(f"q must be positive, got {q}")
    with gmpy2.context(precision=precision):
        if 3 * q == 1:
            return mpfr(2)
        return mpfr(2) + gmpy2.log(to_mpfr(3 * q)) / d


class ScanRow(NamedTuple):
    d: int
    r_q: mpfr
    residual: mpfr
    scaled: mpfr  # residual * d^2


def residual_scan(q, d_list: Sequence[int], tol=Fraction(1, 10**40)) -> list[ScanRow]:
    """R_q against the first-order law; `scaled` probes the O(1/d^2) remainder."""
    if any(d < 2 for d in d_list):
        raise DomainError("residual_scan requires every d >= 2")
    rows = []
    for d in d_list:
        r = critical_distance(d, q, tol)
        with gmpy2.context(precision=max(r.working_precision, 128)):
            est = asymptotic_estimate(d, q, precision=max(r.working_precision, 128))
            resid = r.value - est
            rows.append(ScanRow(d, r.value, resid, resid * d * d))
    return rows


def xi_monotone_check(d_list: Sequence[int], tol=Fraction(1, 10**30)) -> tuple[bool, list[tuple[int, RootApprox]]]:
    """Strict decrease of R_1 along d_list, with the final value above 2.

    Comparisons are certified: decrease must exceed the sum of the two
    enclosure radii, and the last value must exceed 2 by more than its
    radius.  Returns (verdict, [(d, RootApprox), ...]).
    """
    if not d_list:
        raise DomainError("empty d_list")
    if any(d < 1 for d in d_list):
        raise DomainError("every d must be >= 1")
    if any(b <= a for a, b in zip(d_list, d_list[1:])):
        raise DomainError("d_list must be strictly increasing")
    rows = [(d, critical_distance(d, 1, tol)) for d in d_list]
    ok = True
    for (_, ra), (_, rb) in zip(rows, rows[1:]):
        if not (ra.value - rb.value > ra.radius + rb.radius):
            ok = False
            break
    last = rows[-1][1]
    if not (last.value - last.radius > 2):
        ok = False
    return ok, rows
