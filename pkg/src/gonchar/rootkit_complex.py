"""Certified complex zero sets for integer polynomials.

The solver runs simultaneous Aberth--Ehrlich iteration in gmpy2 complex
arithmetic on a doubling precision ladder.  Floating-point work only ever
*proposes* zero locations; acceptance is a posteriori: every candidate gets
a residual-based inclusion disk, and the set is certified once the disks
are pairwise disjoint and no radius exceeds the tolerance.  Simplicity of
the input (squarefree) is a precondition, checked exactly, so disjoint
disks are always achievable at some precision.

Deflation is deliberately absent: with hundreds of near-circle clustered
zeros it destabilizes the tail of the computation.  All zeros are iterated
together and frozen individually once their evaluation hits the noise
floor of the working precision.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr, mpz

from .errors import DomainError, InternalInvariantError, NumericFailure
from ._mp import to_fraction, to_mpfr
from .polycore import IntPoly, RatQ, derivative, exact_gcd, gonchar_poly

PRECISION_CEILING = 1 << 16


@dataclass(frozen=True)
class ComplexMP:
    """A complex number held as two multiprecision reals."""

    re: mpfr
    im: mpfr

    def as_mpc(self) -> mpc:
        return mpc(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


@dataclass(frozen=True)
class ZeroDisk:
    """One certified inclusion disk |z - value| <= radius."""

    value: ComplexMP
    radius: mpfr
    index: int


@dataclass(frozen=True)
class ZeroSet:
    """All zeros of one polynomial, each inside its own disjoint disk.

    `d` is stamped only when the set belongs to a Gonchar instance built
    through `gonchar_zero_set`; zero sets of arbitrary polynomials carry
    None there.
    """

    zeros: tuple[ZeroDisk, ...]
    working_precision: int
    d: Optional[int] = None

    def __len__(self) -> int:
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)


# ---------------------------------------------------------------------------
# Initial configurations
# ---------------------------------------------------------------------------


def _lg(n: int) -> float:
    """log2 |n| for big integers without float overflow."""
    n = abs(n)
    if n == 0:
        raise ValueError("log of zero")
    b = n.bit_length()
    if b <= 53:
        return math.log2(n)
    return (b - 53) + math.log2(n >> (b - 53))


def _bini_init(coeffs: Sequence[int]) -> np.ndarray:
    """Starting points on circles sized by the Newton polygon of |a_k|.

    Root-modulus estimates come from the upper convex hull of
    (k, log2 |a_k|); each hull edge of horizontal span m contributes m
    points spread over a circle, with a fixed angular offset per edge so
    runs are reproducible.
    """
    n = len(coeffs) - 1
    pts: list[tuple[int, float]] = [
        (k, _lg(c)) for k, c in enumerate(coeffs) if c != 0
    ]
    # upper convex hull, left to right: drop the middle point whenever it
    # sits on or below the chord to the incoming point
    hull: list[tuple[int, float]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    out = np.empty(n, dtype=np.complex128)
    pos = 0
    # a vanishing constant term is a zero at the origin (at most one for
    # squarefree input); seed it exactly there
    for _ in range(hull[0][0]):
        out[pos] = 0.0
        pos += 1
    for (k1, v1), (k2, v2) in zip(hull, hull[1:]):
        m = k2 - k1
        lg_r = (v1 - v2) / m
        r = 2.0 ** max(min(lg_r, 500.0), -500.0)
        for j in range(m):
            theta = 2 * math.pi * (j + 0.5) / m + 0.7 + 0.31 * k1
            out[pos] = r * complex(math.cos(theta), math.sin(theta))
            pos += 1
    assert pos == n
    return out


def _geometry_init(d: int) -> np.ndarray:
    """Seeds shaped like the known zero geometry of a Gonchar instance:
    one real outlier near 2 + ln3/d, -1 for even d, and the rest split
    between the two unit-circle arcs and the vertical segment Re = 1/2."""
    n = 2 * d - 1
    pts = [complex(2.0 + math.log(3.0) / d, 0.0)]
    if d % 2 == 0:
        pts.append(complex(-1.0, 0.0))
    rest = n - len(pts)
    ms = round(n / 3)
    m0 = (rest - ms + 1) // 2
    m1 = rest - ms - m0
    for k in range(m0):
        t = math.pi / 3 + (4 * math.pi / 3) * (k + 0.5) / m0
        pts.append((1 + 8e-3) * complex(math.cos(t), math.sin(t)))
    for k in range(m1):
        t = -2 * math.pi / 3 + (4 * math.pi / 3) * (k + 0.5) / m1
        pts.append(1.0 + (1 + 8e-3) * complex(math.cos(t), math.sin(t)))
    h = math.sqrt(3) / 2 - 0.02
    for k in range(ms):
        y = -h + 2 * h * (k + 0.5) / ms
        pts.append(complex(0.5 + 2e-3 * (-1) ** k, y))
    return np.array(pts[:n], dtype=np.complex128)


# ---------------------------------------------------------------------------
# Solver core
# ---------------------------------------------------------------------------


def _aberth_sweeps(cz, az, z, prec: int, maxsweep: int):
    """Gauss-Seidel Aberth iteration until every point is frozen.

    A point freezes when |p| drops to the evaluation-noise floor of the
    working precision.  The repulsion sum runs in float64 -- it only
    steers the iteration, never enters any certified quantity -- and
    falls back to a pure Newton step if it degenerates.
    """
    n = len(cz) - 1
    u = mpfr(2) ** (-prec)
    floor_c = 8 * n * u
    done = [False] * n
    zf = np.array([complex(w.real, w.imag) for w in z])
    for sweep in range(maxsweep):
        for i in range(n):
            if done[i]:
                continue
            w = z[i]
            aw = abs(w)
            p = mpc(cz[n])
            dp = mpc(0)
            s = az[n]
            for k in range(n - 1, -1, -1):
                dp = dp * w + p
                p = p * w + cz[k]
                s = s * aw + az[k]
            if abs(p) <= floor_c * s:
                done[i] = True
                continue
            if dp == 0:
                continue
            newton = p / dp
            wi = complex(w.real, w.imag)
            dv = wi - zf
            dv[i] = 1.0
            rep = complex((1.0 / dv).sum() - 1.0)
            corr = newton
            if math.isfinite(rep.real) and math.isfinite(rep.imag):
                denom = 1 - newton * mpc(rep.real, rep.imag)
                if denom != 0:
                    corr = newton / denom
            z[i] = w - corr
            zf[i] = complex(z[i].real, z[i].imag)
        if all(done):
            return z, True
    return z, False


def _mpc_horner_err(cz, w, prec: int):
    """Complex Horner value plus a running bound on its rounding error."""
    n = len(cz) - 1
    aw = abs(w)
    p = mpc(cz[n])
    mu = abs(p)
    for k in range(n - 1, -1, -1):
        t = p * w
        p = t + cz[k]
        mu = mu * aw + abs(t) + abs(p)
    return p, mu * (mpfr(2) ** (5 - prec))


def _residual_disks(cz, z, prec: int):
    """A posteriori inclusion radii: n (|p(z_i)| + eval error) / (|lc| prod |z_i - z_j|).

    The union of these disks covers every zero; pairwise disjointness then
    pins exactly one zero per disk.  A 9/8 inflation absorbs the rounding
    of the distance product itself.
    """
    n = len(cz) - 1
    lc_abs = abs(mpfr(cz[n]))
    rad = []
    for i, w in enumerate(z):
        p, err = _mpc_horner_err(cz, w, prec)
        prod = mpfr(1)
        for j, v in enumerate(z):
            if j != i:
                prod *= abs(w - v)
        if prod == 0:
            rad.append(mpfr("inf"))
            continue
        rad.append(Fraction(9, 8) * n * (abs(p) + err) / (lc_abs * prod))
    return rad


def _solve(coeffs: Sequence[int], init: np.ndarray, tol: Fraction):
    n = len(coeffs) - 1
    sum_bits = sum(abs(c) for c in coeffs).bit_length()
    prec = max(128, sum_bits + int(0.6 * n) + 96)
    z = None
    while prec <= PRECISION_CEILING:
        with gmpy2.context(precision=prec):
            cz = [mpz(c) for c in coeffs]
            az = [abs(mpfr(c)) for c in coeffs]
            if z is None:
                z = [mpc(w.real, w.imag) for w in init]
            else:
                z = [mpc(w) for w in z]  # re-round carried points
            z, _ = _aberth_sweeps(cz, az, z, prec, maxsweep=60 + n)
            rad = _residual_disks(cz, z, prec)
            maxrad = max(rad)
            minsep = mpfr("inf")
            for i in range(n):
                for j in range(i + 1, n):
                    dd = abs(z[i] - z[j])
                    if dd < minsep:
                        minsep = dd
            # 3x (not the minimal 2x) so that two disks can never overlap in
            # both coordinate projections at once -- the canonical ordering
            # below depends on that
            if 3 * maxrad < minsep and maxrad <= to_mpfr(tol):
                return z, rad, prec
        prec *= 2
    raise NumericFailure(
        f"no certified zero set at radius {tol} within {PRECISION_CEILING} bits"
    )


def _verify_conjugation(disks: Sequence[ZeroDisk]) -> None:
    # real coefficients force a conjugation-symmetric zero set; a certified
    # set that is not symmetric within radii means the certificate lied
    for dk in disks:
        r = dk.radius
        if abs(dk.value.im) <= r:
            continue
        hit = False
        for other in disks:
            if (
                abs(dk.value.re - other.value.re) <= r + other.radius
                and abs(dk.value.im + other.value.im) <= r + other.radius
            ):
                hit = True
                break
        if not hit:
            raise InternalInvariantError(
                "certified zero set is not conjugation-symmetric"
            )


def _package(z, rad, prec: int, d: Optional[int]) -> ZeroSet:
    # a disk straddling the real axis must hold a real zero: otherwise its
    # conjugate would be a second zero inside the same disk, contradicting
    # disjointness.  Snap those imaginary parts to an exact 0.
    pts = []
    for w, r in zip(z, rad):
        im = w.imag
        if abs(im) <= r:
            im = mpfr(0)
        pts.append((w.real, im, r))

    # certified ordering: re components compare equal when the disks overlap
    # in that projection (then the im components are certifiably separated,
    # thanks to the 3x disjointness margin).  Exact rational arithmetic --
    # this must not depend on the ambient mpfr context.
    fpts = [
        (to_fraction(x), to_fraction(y), to_fraction(r)) for x, y, r in pts
    ]

    def cmp(i: int, j: int) -> int:
        (xa, ya, ra), (xb, yb, rb) = fpts[i], fpts[j]
        if xa + ra + rb < xb:
            return -1
        if xb + ra + rb < xa:
            return 1
        return -1 if ya < yb else 1

    order = sorted(range(len(pts)), key=functools.cmp_to_key(cmp))
    disks = tuple(
        ZeroDisk(ComplexMP(pts[i][0], pts[i][1]), pts[i][2], idx)
        for idx, i in enumerate(order)
    )
    _verify_conjugation(disks)
    return ZeroSet(zeros=disks, working_precision=prec, d=d)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def all_zeros(p: IntPoly, tol=Fraction(1, 10**30)) -> ZeroSet:
    """Every complex zero of a squarefree polynomial, in certified disks.

    Disks are pairwise disjoint, radii at most tol, and the list is sorted
    by (re, im) so equal inputs give equal outputs.
    """
    if p.is_zero or p.degree < 1:
        raise DomainError("need a nonconstant polynomial")
    if exact_gcd(p, derivative(p)).degree != 0:
        raise DomainError("polynomial must be squarefree (repeated zero detected)")
    tol = to_fraction(tol)
    if p.degree == 1:
        root = RatQ(-p.coeffs[0], p.coeffs[1])
        with gmpy2.context(precision=128):
            disk = ZeroDisk(ComplexMP(to_mpfr(root), mpfr(0)), mpfr(0), 0)
        return ZeroSet(zeros=(disk,), working_precision=128, d=None)
    z, rad, prec = _solve(p.coeffs, _bini_init(p.coeffs), tol)
    return _package(z, rad, prec, None)


def gonchar_zero_set(d: int, tol=Fraction(1, 10**30)) -> ZeroSet:
    """Certified zero set of G(d; z), seeded from the known zero geometry.

    The Bini-style generic initialization works here too, but for the
    clustered near-circle configurations of large d the shaped start cuts
    the iteration count substantially.
    """
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    p = gonchar_poly(d)
    tol = to_fraction(tol)
    if d == 1:
        with gmpy2.context(precision=128):
            disk = ZeroDisk(ComplexMP(mpfr(3), mpfr(0)), mpfr(0), 0)
        return ZeroSet(zeros=(disk,), working_precision=128, d=1)
    z, rad, prec = _solve(p.coeffs, _geometry_init(d), tol)
    zs = _package(z, rad, prec, d)
    if len(zs) != 2 * d - 1:
        raise InternalInvariantError(
            f"expected {2 * d - 1} zeros for d={d}, packaged {len(zs)}"
        )
    return zs


def certify_all_simple(p: IntPoly) -> bool:
    """Exact, float-free simplicity certificate: gcd(p, p') is constant."""
    if p.is_zero:
        raise DomainError("zero polynomial")
    if p.degree == 0:
        return True
    return exact_gcd(p, derivative(p)).degree == 0


def inversion_closure_check(zs: ZeroSet) -> bool:
    """Is the zero multiset invariant under z -> 1/z, within certified radii?

    Each inclusion disk is inverted exactly (a disk again, since none may
    contain the origin) and matched against the set; the match must be a
    bijection.  Only meaningful for even-d instances, where the defining
    polynomial is self-reciprocal.
    """
    if zs.d is None or zs.d % 2 != 0:
        raise DomainError("inversion closure is an even-d property")
    with gmpy2.context(precision=zs.working_precision):
        inverted = []
        for dk in zs.zeros:
            c = dk.value.as_mpc()
            m2 = abs(c) ** 2 - dk.radius**2
            if m2 <= 0:
                raise DomainError("cannot invert a disk containing the origin")
            inverted.append((mpc(c.real, -c.imag) / m2, dk.radius / m2))
        matched = set()
        for c_inv, r_inv in inverted:
            best = None
            best_gap = None
            for j, dk in enumerate(zs.zeros):
                gap = abs(c_inv - dk.value.as_mpc())
                if best_gap is None or gap < best_gap:
                    best, best_gap = j, gap
            if best_gap > r_inv + zs.zeros[best].radius or best in matched:
                return False
            matched.add(best)
    return len(matched) == len(zs.zeros)
