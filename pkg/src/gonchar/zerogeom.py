"""Zero geometry: region census, on-circle angles, and the limit curve.

The zero set of G(d;z) organizes itself around three pieces of geometry:
the unit circle C0, the shifted unit circle C1 = {|z-1| = 1}, and the
vertical line Re z = 1/2.  For even d a sub-family of zeros sits *exactly*
on C0; their angles solve a trigonometric equation with a closed-form
root count.  Everything else falls into one of three open regions

    A1:  Re z < 1/2  and  |z-1| > 1
    A2:  |z| < 1     and  |z-1| < 1
    A3:  Re z > 1/2  and  |z| > 1

whose closures cover the plane.  As d grows, all zeros migrate toward
the curve Gamma = boundary of D(0,1) union D(1,1) plus the vertical
chord joining the two circle intersection points (1 +- i*sqrt(3))/2.

Census bookkeeping is certificate-driven end to end: a zero is tallied
only when its inclusion disk lies wholly inside one region, matches a
certified on-circle angle, or contains an intersection point that exact
divisibility already guarantees to be a zero.  A disk that straddles a
boundary is never guessed at.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import gmpy2
from gmpy2 import mpfr

from ._mp import to_fraction, to_mpfr
from .errors import (
    DomainError,
    InexactDivisionError,
    InternalInvariantError,
    NumericFailure,
    UnresolvedClassification,
)
from .polycore import IntPoly, RatQ, divide_exact, eval_exact
from .rootkit_complex import ComplexMP, ZeroDisk, ZeroSet, all_zeros, gonchar_zero_set

__all__ = [
    "Region",
    "Census",
    "ThetaSolution",
    "ThetaSolutionSet",
    "ProbeReport",
    "QStructureReport",
    "classify",
    "theta_solutions",
    "census",
    "gamma_distance",
    "max_gamma_distance",
    "conjecture_probes",
    "q_structure_check",
    "q_aux_poly",
    "q_aux_variant",
]

_THETA_PREC_CEILING = 1 << 13


class Region(enum.Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    OnC0 = "OnC0"
    IntersectionPoint = "IntersectionPoint"

    @property
    def tag(self) -> str:
        return self.value


@dataclass(frozen=True)
class Census:
    """Region tallies for the 2d-1 zeros of one degree.

    The two intersection-point zeros (present exactly when 6 | d) are
    kept out of N1/N2/N3 and reported through the flag, so
    N1 + N2 + N3 + 2*[has_intersection_pair] == 2d-1.
    """

    d: int
    N1: int
    N2: int
    N3: int
    on_circle: int
    has_intersection_pair: bool

    @property
    def counts(self) -> Tuple[int, int, int]:
        return (self.N1, self.N2, self.N3)


@dataclass(frozen=True)
class ThetaSolution:
    """One certified angle theta with |true - value| <= radius.

    `exact` marks the two angles pinned by algebra rather than iteration:
    "pi" (z = -1 is a zero for every even d) and "pi/3" (the circle
    intersection point, a zero exactly when 6 | d).
    """

    value: mpfr
    radius: mpfr
    exact: Optional[str] = None


@dataclass(frozen=True)
class ThetaSolutionSet:
    d: int
    thetas: Tuple[ThetaSolution, ...]
    working_precision: int

    def __len__(self) -> int:
        return len(self.thetas)

    def __iter__(self) -> Iterator[ThetaSolution]:
        return iter(self.thetas)

    @property
    def total_on_circle(self) -> int:
        # angles live in (0, pi]; every theta < pi contributes a conjugate
        return 2 * len(self.thetas) - 1


@dataclass(frozen=True)
class ProbeReport:
    """Three empirical findings about one zero set; booleans, not theorems.

    `odd_alternation` and `a3_outside_c1` are populated for odd d only
    (the claims they probe are stated for odd d); `a2_turning_consistent`
    applies to every d and is vacuously true below three A2 zeros.
    """

    d: int
    all_classified: bool
    census: Optional[Census]
    odd_alternation: Optional[bool]
    a3_outside_c1: Optional[bool]
    a2_turning_consistent: Optional[bool]
    note: str = ""


@dataclass(frozen=True)
class QStructureReport:
    """Verified zero structure of the auxiliary polynomial of degree d+1."""

    d: int
    real_roots_ok: bool
    on_circle_count: int
    on_circle_ok: bool
    tan_solution_count: int
    tan_count_ok: bool
    variant_on_circle: Optional[bool]
    note: str = ""

    @property
    def ok(self) -> bool:
        base = self.real_roots_ok and self.on_circle_ok and self.tan_count_ok
        if self.variant_on_circle is None:
            return base
        return base and self.variant_on_circle


# ---------------------------------------------------------------------------
# On-circle angles (even d)
# ---------------------------------------------------------------------------


def _theta_count_target(d: int) -> int:
    return 2 * ((d - 1) // 6 + (1 if d % 6 == 0 else 0)) + 1


def _theta_sign(d: int, theta: mpfr, prec: int) -> int:
    """Sign of the cleared angle equation at theta, 0 when untrusted.

    The equation g(theta) = f(theta) is multiplied by (2 sin(theta/2))^d > 0
    so there is nothing to divide by:

        F(theta) = (-1)^(d/2) cos((d-1)theta/2) * (2 sin(theta/2))^d
                   - cos(theta/2).

    gmpy2 trig is correctly rounded, so a crude running bound on the
    accumulated roundoff decides whether the computed sign is meaningful.
    """
    with gmpy2.context(precision=prec):
        half = theta / 2
        s = 2 * gmpy2.sin(half)
        g = gmpy2.cos((d - 1) * half)
        if d % 4 == 2:
            g = -g
        spow = s**d
        val = g * spow - gmpy2.cos(half)
        err = (abs(spow) + 1) * (4 * d + 512) * mpfr(2) ** (-prec)
        if abs(val) <= err:
            return 0
        return 1 if val > 0 else -1


class _Rescan(Exception):
    # internal: grid or precision was insufficient; retry one rung higher
    pass


def _theta_scan(d: int, tol: Fraction, prec: int, density: int) -> ThetaSolutionSet:
    with gmpy2.context(precision=prec):
        pi = gmpy2.const_pi()
        third = pi / 3
        tol_m = to_mpfr(tol, prec)
        tiny = mpfr(2) ** (4 - prec)

        brackets: List[Tuple[mpfr, mpfr]] = []
        if d > 2:
            w = 2 * pi / (d - 1)
            alpha = (4 - 2 * gmpy2.sqrt(mpfr(3))) / (3 * d + 1)
            lo = third - alpha / 2  # no solutions below pi/3; margin only
            hi = pi - w / 2  # interior solutions keep a half-width gap to pi
            n = int(gmpy2.ceil((hi - lo) / (w / density)))
            xs = [lo + (hi - lo) * k / n for k in range(n + 1)]
            signs = []
            for x in xs:
                sg = _theta_sign(d, x, prec)
                if sg == 0:
                    raise _Rescan
                signs.append(sg)
            for k in range(n):
                if signs[k] * signs[k + 1] < 0:
                    brackets.append((xs[k], xs[k + 1]))

        sols: List[ThetaSolution] = []
        for a, b in brackets:
            sa = _theta_sign(d, a, prec)
            budget = prec + 128
            while b - a > tol_m:
                budget -= 1
                if budget < 0:
                    raise NumericFailure("angle bisection stalled")
                mid = (a + b) / 2
                sm = _theta_sign(d, mid, prec)
                if sm == 0:
                    raise _Rescan
                if sm == sa:
                    a = mid
                else:
                    b = mid
            if a <= third <= b:
                # the bracket pins the intersection-point angle; it is a
                # solution exactly when 6 | d, by exact divisibility
                if d % 6 != 0:
                    raise InternalInvariantError(
                        f"d={d}: angle bracket crossed pi/3 without 6 | d"
                    )
                sols.append(ThetaSolution(third, tiny, exact="pi/3"))
            else:
                rad = (b - a) / 2 + mpfr(2) ** (8 - prec)
                sols.append(ThetaSolution((a + b) / 2, rad, exact=None))

        sols.append(ThetaSolution(pi, tiny, exact="pi"))
        sols.sort(key=lambda s: s.value)

        if d % 6 == 0 and not any(s.exact == "pi/3" for s in sols):
            raise _Rescan  # grid missed the pinned angle; tighten
        target = _theta_count_target(d)
        if len(sols) != target:
            raise _Rescan
        for u, v in zip(sols, sols[1:]):
            if not (u.value + u.radius < v.value - v.radius):
                raise InternalInvariantError(
                    f"d={d}: certified angles overlap near {float(u.value):.6f}"
                )
        if sols[0].value + sols[0].radius < third - mpfr(1) / 8:
            raise InternalInvariantError(f"d={d}: angle below pi/3 certified")

    return ThetaSolutionSet(d=d, thetas=tuple(sols), working_precision=prec)


def theta_solutions(d: int, tol: Union[Fraction, RatQ] = Fraction(1, 10**30)) -> ThetaSolutionSet:
    """All angles theta in (0, pi] with e^{i theta} a zero of G(d;z), d even.

    Interior angles are isolated by scanning the half-periods of the
    oscillating side of the angle equation (at most two crossings per
    half-period) and certified by sign-validated bisection; theta = pi is
    always a solution and theta = pi/3 is one exactly when 6 divides d.
    The count must match 2*(floor((d-1)/6) + [6|d]) + 1 or the solver is
    broken -- a mismatch raises, it is never papered over.
    """
    if d < 2 or d % 2 != 0:
        raise DomainError(f"even d >= 2 required, got {d}")
    tol = Fraction(tol)
    if tol <= 0:
        raise DomainError("tol must be positive")

    prec = max(128, tol.denominator.bit_length() - tol.numerator.bit_length() + 48)
    density = 24
    last: Optional[Exception] = None
    while prec <= _THETA_PREC_CEILING:
        try:
            return _theta_scan(d, tol, prec, density)
        except _Rescan as exc:
            last = exc
            prec *= 2
            density = min(4 * density, 768)
    raise NumericFailure(f"angle scan failed for d={d} up to {_THETA_PREC_CEILING} bits") from last


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def _as_disk(z) -> ZeroDisk:
    if isinstance(z, ZeroDisk):
        return z
    if isinstance(z, ComplexMP):
        return ZeroDisk(z, mpfr(0), -1)
    if isinstance(z, complex):
        return ZeroDisk(ComplexMP(mpfr(z.real), mpfr(z.imag)), mpfr(0), -1)
    # rational-ish real input
    return ZeroDisk(ComplexMP(to_mpfr(z, 128), mpfr(0)), mpfr(0), -1)


def _matches_intersection(c: ComplexMP, r: mpfr) -> bool:
    prec = max(getattr(c.re, "precision", 53), 96) + 32
    with gmpy2.context(precision=prec):
        dx = c.re - mpfr(1) / 2
        ylim = gmpy2.sqrt(mpfr(3)) / 2
        dy = abs(c.im) - ylim
        dist = gmpy2.sqrt(dx * dx + dy * dy)
        return dist <= r + mpfr(2) ** (10 - prec)


def _matches_theta(c: ComplexMP, r: mpfr, ref: ThetaSolutionSet) -> bool:
    prec = max(getattr(c.re, "precision", 53), ref.working_precision) + 16
    with gmpy2.context(precision=prec):
        slack = mpfr(2) ** (10 - prec)
        for sol in ref.thetas:
            x = gmpy2.cos(sol.value)
            y = gmpy2.sin(sol.value)
            for sy in (y, -y):
                dx = c.re - x
                dy = c.im - sy
                if gmpy2.sqrt(dx * dx + dy * dy) <= r + sol.radius + slack:
                    return True
    return False


def _strict_region(c: ComplexMP, r: mpfr) -> Region:
    base = max(64, getattr(c.re, "precision", 53))
    for prec in (base, 2 * base, 4 * base):
        with gmpy2.context(precision=prec):
            x = mpfr(c.re)
            y = mpfr(c.im)
            rr = mpfr(r)
            eps = (abs(x) + abs(y) + 2) * mpfr(2) ** (10 - prec)
            half = mpfr(1) / 2
            a0 = gmpy2.sqrt(x * x + y * y)
            a1 = gmpy2.sqrt((x - 1) * (x - 1) + y * y)
            if x + rr < half - eps and a1 - rr > 1 + eps:
                return Region.A1
            if a0 + rr < 1 - eps and a1 + rr < 1 - eps:
                return Region.A2
            if x - rr > half + eps and a0 - rr > 1 + eps:
                return Region.A3
    raise UnresolvedClassification(
        f"disk at ({float(c.re):.9g}, {float(c.im):.9g}) radius {float(r):.3g} "
        "straddles a region boundary"
    )


def classify(z, d: int, theta_ref: Optional[ThetaSolutionSet] = None) -> Region:
    """Assign one certified zero to its region.

    Order matters: the intersection points (1 +- i sqrt(3))/2 are claimed
    first (they sit on C0, C1 *and* the vertical line, so every other
    test would straddle), then certified on-circle matches for even d,
    then the strict open-region tests with shrinking evaluation slack.
    A disk that still straddles a boundary raises; no guessing.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    disk = _as_disk(z)
    c, r = disk.value, disk.radius
    if d % 6 == 0 and _matches_intersection(c, r):
        return Region.IntersectionPoint
    if theta_ref is not None and d % 2 == 0:
        if theta_ref.d != d:
            raise DomainError(
                f"theta reference is for d={theta_ref.d}, classifying d={d}"
            )
        if _matches_theta(c, r, theta_ref):
            return Region.OnC0
    return _strict_region(c, r)


# ---------------------------------------------------------------------------
# Census
# ---------------------------------------------------------------------------


def _verify_theta_disk_bijection(zs: ZeroSet, ref: ThetaSolutionSet) -> None:
    # every certified angle must own exactly one zero disk (conjugates
    # counted separately); anything else falsifies one of the two solvers
    prec = max(zs.working_precision, ref.working_precision) + 16
    with gmpy2.context(precision=prec):
        slack = mpfr(2) ** (10 - prec)
        for sol in ref.thetas:
            x = gmpy2.cos(sol.value)
            y = gmpy2.sin(sol.value)
            targets = [(x, y)] if sol.exact == "pi" else [(x, y), (x, -y)]
            for tx, ty in targets:
                hits = 0
                for disk in zs:
                    dx = disk.value.re - tx
                    dy = disk.value.im - ty
                    if gmpy2.sqrt(dx * dx + dy * dy) <= disk.radius + sol.radius + slack:
                        hits += 1
                if hits != 1:
                    raise InternalInvariantError(
                        f"d={zs.d}: angle {float(sol.value):.6f} matched "
                        f"{hits} zero disks (want exactly 1)"
                    )


def _classified_zeros(
    d: int, tol: Fraction
) -> Tuple[ZeroSet, Optional[ThetaSolutionSet], List[Region]]:
    zs = gonchar_zero_set(d, tol)
    ref = theta_solutions(d, tol) if d % 2 == 0 else None
    if ref is not None:
        _verify_theta_disk_bijection(zs, ref)
    tags = [classify(disk, d, ref) for disk in zs]
    return zs, ref, tags


def _census_from_tags(d: int, ref: Optional[ThetaSolutionSet], tags: Sequence[Region]) -> Census:
    n1 = sum(1 for t in tags if t is Region.A1 or t is Region.OnC0)
    n2 = sum(1 for t in tags if t is Region.A2)
    n3 = sum(1 for t in tags if t is Region.A3)
    onc0 = sum(1 for t in tags if t is Region.OnC0)
    ip = sum(1 for t in tags if t is Region.IntersectionPoint)
    if ip not in (0, 2):
        raise InternalInvariantError(f"d={d}: {ip} intersection-point zeros (want 0 or 2)")
    pair = ip == 2
    if pair != (d % 6 == 0):
        raise InternalInvariantError(f"d={d}: intersection pair flag {pair} contradicts 6|d")
    if n1 + n2 + n3 + ip != 2 * d - 1:
        raise InternalInvariantError(f"d={d}: census total {n1 + n2 + n3 + ip} != {2 * d - 1}")
    on_circle = onc0 + ip
    if d % 2 == 0:
        expected = 4 * ((d - 1) // 6 + (1 if d % 6 == 0 else 0)) + 1
        if ref is None or on_circle != expected or on_circle != ref.total_on_circle:
            raise InternalInvariantError(
                f"d={d}: on-circle count {on_circle} != closed form {expected}"
            )
        if d <= 100 and n1 != onc0:
            # every near-C0 zero observed in this range sits exactly on C0;
            # an off-circle A1 zero here would be a solver defect, not news
            raise InternalInvariantError(
                f"d={d}: {n1 - onc0} off-circle A1 zeros at even d <= 100"
            )
    else:
        if onc0 != 0:
            raise InternalInvariantError(f"d={d}: odd degree reported on-circle zeros")
    return Census(d=d, N1=n1, N2=n2, N3=n3, on_circle=on_circle, has_intersection_pair=pair)


def census(d: int, tol: Union[Fraction, RatQ] = Fraction(1, 10**30)) -> Census:
    """Classify all 2d-1 zeros and tally them by region.

    On-circle zeros land in N1 (they satisfy Re z <= 1/2 and hug C0);
    the intersection pair is flagged separately.  If any disk straddles
    a boundary the zero set is re-solved at sharply smaller tolerance
    before giving up.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    tol = Fraction(tol)
    if tol <= 0:
        raise DomainError("tol must be positive")
    attempt = tol
    last: Optional[Exception] = None
    for _ in range(3):
        try:
            zs, ref, tags = _classified_zeros(d, attempt)
            return _census_from_tags(d, ref, tags)
        except UnresolvedClassification as exc:
            last = exc
            attempt = attempt * attempt
    raise last  # type: ignore[misc]


# ---------------------------------------------------------------------------
# The limit curve Gamma
# ---------------------------------------------------------------------------


def gamma_distance(z, prec: int = 192) -> mpfr:
    """Euclidean distance from z to Gamma.

    Gamma = the boundary of D(0,1) union D(1,1) -- that is, the arc of C0
    with Re <= 1/2 and the arc of C1 with Re >= 1/2 -- together with the
    vertical segment Re = 1/2, |Im| <= sqrt(3)/2.  Everything reduces to
    three piecewise distances; the set is symmetric in conjugation so
    only |Im z| matters.
    """
    disk = _as_disk(z)
    with gmpy2.context(precision=prec):
        x = mpfr(disk.value.re)
        y = abs(mpfr(disk.value.im))
        half = mpfr(1) / 2
        s3h = gmpy2.sqrt(mpfr(3)) / 2
        d_end = gmpy2.sqrt((x - half) ** 2 + (y - s3h) ** 2)  # upper joint

        r0 = gmpy2.sqrt(x * x + y * y)
        if r0 == 0:
            d0 = mpfr(1)
        elif 2 * x <= r0:  # radial foot has Re <= 1/2: retained C0 arc
            d0 = abs(r0 - 1)
        else:
            d0 = d_end

        r1 = gmpy2.sqrt((x - 1) ** 2 + y * y)
        if r1 == 0:
            d1 = mpfr(1)
        elif 2 * (x - 1) >= -r1:  # radial foot has Re >= 1/2: retained C1 arc
            d1 = abs(r1 - 1)
        else:
            d1 = d_end

        d_seg = abs(x - half) if y <= s3h else d_end
        return min(d0, d1, d_seg)


def max_gamma_distance(
    d: int, tol: Union[Fraction, RatQ] = Fraction(1, 10**30)
) -> mpfr:
    """max over the certified zero set of dist(zero, Gamma), plus disk slack.

    Each summand is an upper bound for the true zero's distance (center
    distance + inclusion radius), so the maximum is a certified upper
    bound that still converges as the radii shrink.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    zs = gonchar_zero_set(d, Fraction(tol))
    prec = max(192, zs.working_precision)
    with gmpy2.context(precision=prec):
        best = mpfr(0)
        for disk in zs:
            cand = gamma_distance(disk, prec) + disk.radius
            if cand > best:
                best = cand
        return best


# ---------------------------------------------------------------------------
# Probes
# ---------------------------------------------------------------------------


def _certified_side_of_c0(disk: ZeroDisk, prec: int) -> Optional[int]:
    with gmpy2.context(precision=prec):
        a0 = gmpy2.sqrt(disk.value.re**2 + disk.value.im**2)
        eps = mpfr(2) ** (12 - prec)
        if a0 - disk.radius > 1 + eps:
            return 1
        if a0 + disk.radius < 1 - eps:
            return -1
    return None


def conjecture_probes(
    d: int, tol: Union[Fraction, RatQ] = Fraction(1, 10**30)
) -> ProbeReport:
    """Three empirical findings about the zero set of G(d;z).

    (a) every zero classifies (no straddling disks);
    (b) odd d: the upper-half A1 zeros, ordered by argument, alternate
        between inside and outside C0, and every A3 zero has |z-1| > 1;
    (c) the A2 zeros, ordered by imaginary part, turn consistently to
        one side (a discrete convexity reading of the middle branch).

    These are reported, never asserted: a failure is a finding.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    tol = Fraction(tol)
    try:
        zs, ref, tags = _classified_zeros(d, tol)
        cen = _census_from_tags(d, ref, tags)
    except UnresolvedClassification as exc:
        return ProbeReport(
            d=d,
            all_classified=False,
            census=None,
            odd_alternation=None,
            a3_outside_c1=None,
            a2_turning_consistent=None,
            note=f"unresolved: {exc}",
        )

    prec = zs.working_precision + 16
    alternation: Optional[bool] = None
    a3_ok: Optional[bool] = None
    if d % 2 == 1:
        upper_a1 = [
            disk
            for disk, t in zip(zs, tags)
            if t is Region.A1 and disk.value.im > 0
        ]
        with gmpy2.context(precision=prec):
            upper_a1.sort(key=lambda disk: gmpy2.atan2(disk.value.im, disk.value.re))
        sides = [_certified_side_of_c0(disk, prec) for disk in upper_a1]
        if any(s is None for s in sides):
            alternation = False
        else:
            alternation = all(a != b for a, b in zip(sides, sides[1:]))

        a3_ok = True
        with gmpy2.context(precision=prec):
            eps = mpfr(2) ** (12 - prec)
            for disk, t in zip(zs, tags):
                if t is not Region.A3:
                    continue
                a1dist = gmpy2.sqrt((disk.value.re - 1) ** 2 + disk.value.im**2)
                if not (a1dist - disk.radius > 1 + eps):
                    a3_ok = False

    a2 = [disk for disk, t in zip(zs, tags) if t is Region.A2]
    with gmpy2.context(precision=prec):
        a2.sort(key=lambda disk: (disk.value.im, disk.value.re))
        turning = True
        signs = set()
        thresh = mpfr(2) ** (24 - prec)
        for p1, p2, p3 in zip(a2, a2[1:], a2[2:]):
            x1, y1 = p1.value.re, p1.value.im
            x2, y2 = p2.value.re, p2.value.im
            x3, y3 = p3.value.re, p3.value.im
            cross = (x2 - x1) * (y3 - y2) - (y2 - y1) * (x3 - x2)
            if abs(cross) > thresh:
                signs.add(1 if cross > 0 else -1)
        turning = len(signs) <= 1

    return ProbeReport(
        d=d,
        all_classified=True,
        census=cen,
        odd_alternation=alternation,
        a3_outside_c1=a3_ok,
        a2_turning_consistent=turning,
    )


# ---------------------------------------------------------------------------
# Auxiliary polynomial of the simplicity argument
# ---------------------------------------------------------------------------


def q_aux_poly(d: int) -> IntPoly:
    """(d-1) z^{d+1} + (d+1) z^d + (d+1) z + (d-1), the cleared critical form."""
    if d < 3:
        raise DomainError(f"d must be >= 3, got {d}")
    return IntPoly((d - 1, d + 1) + (0,) * (d - 2) + (d + 1, d - 1))


def q_aux_variant(d: int) -> IntPoly:
    """Same shape with middle weight d-3 instead of d+1; expected circle-only."""
    if d < 3:
        raise DomainError(f"d must be >= 3, got {d}")
    return IntPoly((d - 1, d - 3) + (0,) * (d - 2) + (d - 3, d - 1))


def _on_circle_count(zs: ZeroSet) -> int:
    prec = zs.working_precision + 16
    count = 0
    with gmpy2.context(precision=prec):
        slack = mpfr(2) ** (12 - prec)
        for disk in zs:
            a0 = gmpy2.sqrt(disk.value.re**2 + disk.value.im**2)
            if abs(a0 - 1) <= disk.radius + slack:
                count += 1
    return count


def _tan_solution_count(d: int, density: int) -> int:
    """Count solutions of tan(phi/2) tan(d phi/2) = -d in (0, 2pi) minus {pi}.

    Multiplying through by cos(phi/2) cos(d phi/2) gives the smooth form
    (d+1) cos((d-1)phi/2) + (d-1) cos((d+1)phi/2) = 0, whose extra zeros
    (where a cosine factor vanishes) do not occur off phi = pi.  The zero
    set is symmetric about pi, so twice the crossings in (0, pi) is the
    answer.
    """
    prec = 96
    with gmpy2.context(precision=prec):
        pi = gmpy2.const_pi()
        n = density * (d + 1)
        err_floor = (2 * d + 2) * mpfr(2) ** (16 - prec)
        flips = 0
        prev = None
        for j in range(1, n):
            phi = pi * j / n
            v = (d + 1) * gmpy2.cos((d - 1) * phi / 2) + (d - 1) * gmpy2.cos(
                (d + 1) * phi / 2
            )
            if abs(v) <= err_floor:
                return -1  # landed on a zero; caller escalates the grid
            s = 1 if v > 0 else -1
            if prev is not None and s != prev:
                flips += 1
            prev = s
    return 2 * flips


def q_structure_check(
    d: int,
    tol: Union[Fraction, RatQ] = Fraction(1, 10**30),
    check_variant: bool = True,
) -> QStructureReport:
    """Verify the zero structure of the auxiliary polynomial.

    Even d: a triple real root at -1 (verified by three exact divisions
    and a nonzero exact value of the quotient there) and the remaining
    d-2 zeros on the unit circle.  Odd d: exactly two real zeros, both
    certified negative, and d-1 zeros on the unit circle.  Independently,
    the tangent-product equation is counted on a sign grid and compared
    with d-2 (even) or d-1 (odd).  Failures are reported, not raised --
    only infrastructure errors propagate.
    """
    if d < 3:
        raise DomainError(f"d must be >= 3, got {d}")
    tol = Fraction(tol)
    aux = q_aux_poly(d)
    note_parts: List[str] = []

    real_ok = True
    expected_circle = d - 2 if d % 2 == 0 else d - 1
    if d % 2 == 0:
        rem = aux
        try:
            for _ in range(3):
                rem = divide_exact(rem, IntPoly((1, 1)))
        except InexactDivisionError:
            real_ok = False
            rem = aux
            note_parts.append("(z+1)^3 does not divide")
        else:
            if eval_exact(rem, Fraction(-1)) == 0:
                real_ok = False
                note_parts.append("root at -1 has multiplicity > 3")
        zs = all_zeros(rem if real_ok else aux, tol)
        circle = _on_circle_count(zs)
        circle_ok = real_ok and circle == expected_circle == len(zs)
    else:
        zs = all_zeros(aux, tol)
        reals = [disk for disk in zs if disk.value.im == 0]
        prec = zs.working_precision
        with gmpy2.context(precision=prec):
            neg = [disk for disk in reals if disk.value.re + disk.radius < 0]
        real_ok = len(reals) == 2 and len(neg) == 2
        if not real_ok:
            note_parts.append(f"{len(reals)} real zeros, {len(neg)} certified negative")
        circle = _on_circle_count(zs)
        circle_ok = circle == expected_circle

    tan_count = -1
    for density in (16, 64, 256):
        tan_count = _tan_solution_count(d, density)
        if tan_count == expected_circle:
            break
    tan_ok = tan_count == expected_circle

    variant_ok: Optional[bool] = None
    if check_variant:
        try:
            vz = all_zeros(q_aux_variant(d), tol)
            variant_ok = _on_circle_count(vz) == len(vz)
        except DomainError as exc:
            note_parts.append(f"variant skipped: {exc}")

    return QStructureReport(
        d=d,
        real_roots_ok=real_ok,
        on_circle_count=circle,
        on_circle_ok=circle_ok,
        tan_solution_count=tan_count,
        tan_count_ok=tan_ok,
        variant_on_circle=variant_ok,
        note="; ".join(note_parts),
    )
