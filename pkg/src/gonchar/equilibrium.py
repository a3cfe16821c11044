"""Signed equilibrium on the d-sphere under one external point charge.

A unit charge spread over S^d in the presence of a point charge q at
distance R > 1 on the polar axis settles into an axially symmetric
signed measure whose density against the uniform measure is

    eta'(t) = 1 + q/R^(d-1) - q (R^2 - 1) / (1 - 2 R cos t + R^2)^((d+1)/2)

with t the polar angle from the pole nearest the charge.  The density is
nondecreasing in t, dips lowest right under the charge, and is
nonnegative everywhere exactly when R is at least the critical distance
(the Gonchar root).  Everything here reduces to 1-D integrals in t by
axial symmetry; the only genuine surface integral is the d=2 constant-
potential validation, where the 1/|x-y| kernel in geodesic polar
coordinates around the evaluation point collapses to the smooth factor
cos(rho/2) -- the singularity cancels analytically, no mesh grading
needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import DomainError, InternalInvariantError, NumericFailure

__all__ = [
    "AxialPoint",
    "DensityProfile",
    "CapReport",
    "uniform_potential",
    "density",
    "density_profile",
    "total_mass",
    "positive_cap",
    "weighted_potential_residual",
    "c_d",
]

Real = Union[int, float]


def _as_float(x) -> float:
    # mpfr, Fraction, int, float all convert exactly enough for numerics
    return float(x)


@dataclass(frozen=True)
class AxialPoint:
    """A point on S^d identified by its polar angle t from the North Pole."""

    t: float
    d: int

    def __post_init__(self):
        if not (0 <= self.t <= math.pi):
            raise DomainError(f"polar angle must be in [0, pi], got {self.t}")
        if self.d < 1:
            raise DomainError(f"d must be >= 1, got {self.d}")

    def squared_distance_to_charge(self, R: float) -> float:
        """|x - R p|^2 = 1 - 2 R cos t + R^2; positive for all R > 1."""
        return 1 - 2 * R * math.cos(self.t) + R * R


@dataclass(frozen=True)
class DensityProfile:
    d: int
    R: float
    q: float
    samples: Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class CapReport:
    """Boundary angle of the positive support and the mass it carries.

    t0 == 0 means the density is nonnegative on the whole sphere (which
    happens exactly when R >= R_q); otherwise the positive part lives on
    the spherical cap t >= t0 centered at the South Pole.
    """

    t0: float
    positive_mass: float


def _check_rqd(R: float, q: float, d: int) -> Tuple[float, float]:
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    R = _as_float(R)
    q = _as_float(q)
    if not R > 1:
        raise DomainError(f"charge distance must satisfy R > 1, got {R}")
    if not q > 0:
        raise DomainError(f"charge must be positive, got {q}")
    return R, q


def uniform_potential(r, d: int) -> float:
    """Potential of the uniform unit charge on S^d at distance r from center.

    Constant 1 out to the sphere, Newtonian decay r^(1-d) beyond it.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    r = _as_float(r)
    if r < 0:
        raise DomainError(f"radius must be nonnegative, got {r}")
    if r <= 1:
        return 1.0
    return r ** (1 - d)


def density(t, R, q, d: int) -> float:
    """eta'(t): signed equilibrium density at polar angle t."""
    if isinstance(t, AxialPoint):
        if t.d != d:
            raise DomainError(f"point lives on S^{t.d}, density asked for S^{d}")
        t = t.t
    R, q = _check_rqd(R, q, d)
    t = _as_float(t)
    dist2 = 1 - 2 * R * math.cos(t) + R * R
    return 1 + q / R ** (d - 1) - q * (R * R - 1) / dist2 ** ((d + 1) / 2)


def density_profile(R, q, d: int, n: int = 1000) -> DensityProfile:
    """Sample eta' on a uniform t-grid and vouch for its monotonicity."""
    R, q = _check_rqd(R, q, d)
    if n < 2:
        raise DomainError(f"need at least 2 samples, got {n}")
    ts = [math.pi * k / (n - 1) for k in range(n)]
    vals = [density(t, R, q, d) for t in ts]
    scale = max(1.0, max(abs(v) for v in vals))
    for a, b in zip(vals, vals[1:]):
        if b < a - 1e-12 * scale:
            raise InternalInvariantError(
                f"density not nondecreasing at R={R}, q={q}, d={d}"
            )
    return DensityProfile(d=d, R=R, q=q, samples=tuple(zip(ts, vals)))


def _weight_coeff(d: int) -> float:
    # normalizes sin^(d-1) t on [0, pi] to total mass one
    return math.gamma((d + 1) / 2) / (math.sqrt(math.pi) * math.gamma(d / 2))


def _axial_integral(R: float, q: float, d: int, lo: float, quad_tol: float) -> float:
    """integral_lo^pi eta'(t) w_d(t) dt with the near-pole spike resolved."""
    coeff = _weight_coeff(d)

    def f(t: float) -> float:
        dist2 = 1 - 2 * R * math.cos(t) + R * R
        dens = 1 + q / R ** (d - 1) - q * (R * R - 1) / dist2 ** ((d + 1) / 2)
        return coeff * math.sin(t) ** (d - 1) * dens

    # the density varies on the scale of R-1 near t = 0; hint the mesh
    w = R - 1
    pts = sorted({min(max(x, lo), math.pi) for x in (w, 5 * w, 25 * w, 0.5)})
    pts = [x for x in pts if lo < x < math.pi]
    val, abserr = quad(f, lo, math.pi, points=pts or None, limit=400,
                       epsabs=quad_tol, epsrel=quad_tol * 10)
    if not math.isfinite(val) or abserr > 50 * max(quad_tol, quad_tol * abs(val)) + 1e-13:
        raise NumericFailure(
            f"axial quadrature did not converge (R={R}, q={q}, d={d}, "
            f"abserr={abserr:.2e})"
        )
    return val


def total_mass(R, q, d: int, quad_tol: float = 1e-12) -> float:
    """integral of eta' over S^d; the equilibrium carries total charge one."""
    R, q = _check_rqd(R, q, d)
    return _axial_integral(R, q, d, 0.0, quad_tol)


def positive_cap(R, q, d: int, tol: float = 1e-12) -> CapReport:
    """Locate the positive support and weigh it.

    eta' is nondecreasing, so it crosses zero at most once: bracketed
    bisection-secant (brentq) finds t0 when eta'(0) < 0, and for d=2 the
    algebraic solution s^3 = q(R^2-1)/(1+q/R), cos t0 = (1+R^2-s^2)/(2R)
    must agree or the solver is broken.
    """
    R, q = _check_rqd(R, q, d)
    if density(0.0, R, q, d) >= 0:
        return CapReport(t0=0.0, positive_mass=_axial_integral(R, q, d, 0.0, _quad_tol(tol)))
    t0 = brentq(lambda t: density(t, R, q, d), 0.0, math.pi, xtol=tol, maxiter=200)
    if d == 2:
        s = (q * (R * R - 1) / (1 + q / R)) ** (1 / 3)
        c = (1 + R * R - s * s) / (2 * R)
        t0_closed = math.acos(max(-1.0, min(1.0, c)))
        if abs(t0 - t0_closed) > max(1e-8, 100 * tol):
            raise InternalInvariantError(
                f"cap boundary mismatch: iterated {t0}, closed form {t0_closed}"
            )
    return CapReport(t0=t0, positive_mass=_axial_integral(R, q, d, t0, _quad_tol(tol)))


def _quad_tol(tol: float) -> float:
    # quadrature tolerance paired with a root tolerance; floor at 1e-12
    return max(tol, 1e-12)


def weighted_potential_residual(
    R, q, points: Iterable[float], quad_tol: float = 1e-9
) -> float:
    """Max deviation of V^eta + Q from its constant value, on S^2.

    The equilibrium property says V^eta(x) + q/|x - Rp| = 1 + q/R for
    every x on the sphere.  V^eta is evaluated as a genuine surface
    integral in geodesic polar coordinates (rho, phi) about x, where
    sin(rho) / (2 sin(rho/2)) = cos(rho/2) kills the kernel singularity:

        V^eta(x(t)) = 1/2 integral_0^pi cos(rho/2) avg_phi eta'(t_y) drho,

    the phi-average done by a 512-node periodic trapezoid rule (spectral
    for smooth periodic integrands) and the rho-integral by adaptive
    quadrature.
    """
    d = 2
    R, q = _check_rqd(R, q, d)
    pts = [_as_float(t) for t in points]
    if not pts:
        raise DomainError("need at least one evaluation point")
    for t in pts:
        if not (0 <= t <= math.pi):
            raise DomainError(f"polar angle must be in [0, pi], got {t}")

    n_phi = 512
    phi = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    cos_phi = np.cos(phi)
    base = 1 + q / R
    worst = 0.0
    for t in pts:
        ct, st = math.cos(t), math.sin(t)

        def ring_avg(rho: float) -> float:
            cos_ty = ct * math.cos(rho) + st * math.sin(rho) * cos_phi
            dist2 = 1 - 2 * R * cos_ty + R * R
            dens = base - q * (R * R - 1) / dist2**1.5
            return float(np.mean(dens))

        val, abserr = quad(
            lambda rho: math.cos(rho / 2) * ring_avg(rho) / 2,
            0.0,
            math.pi,
            limit=200,
            epsabs=quad_tol,
            epsrel=quad_tol * 10,
        )
        if not math.isfinite(val) or abserr > 50 * quad_tol + 1e-13:
            raise NumericFailure(
                f"surface quadrature did not converge at t={t} (abserr={abserr:.2e})"
            )
        ext = q / math.sqrt(1 - 2 * R * ct + R * R)
        worst = max(worst, abs(val + ext - base))
    return worst


def c_d(d: int) -> float:
    """The convolution constant C_d, computed twice and cross-checked.

    Form one:  pi^((d+3)/2) Gamma((d-1)/2) / Gamma(d/2)^2.
    Form two:  omega_d * pi/(d-1) * [Gamma((d+1)/2) / Gamma(d/2)]^2 with
    omega_d = 2 pi^((d+1)/2) / Gamma((d+1)/2).  They are equal by the
    functional equation of Gamma; more than 1e-12 of relative daylight
    between the two evaluations means a typo, and raises.
    """
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    g_half = math.gamma((d - 1) / 2)
    g_mid = math.gamma(d / 2)
    g_up = math.gamma((d + 1) / 2)
    form1 = math.pi ** ((d + 3) / 2) * g_half / (g_mid * g_mid)
    omega = 2 * math.pi ** ((d + 1) / 2) / g_up
    form2 = omega * math.pi / (d - 1) * (g_up / g_mid) ** 2
    if abs(form1 - form2) > 1e-12 * abs(form1):
        raise InternalInvariantError(
            f"C_d forms disagree at d={d}: {form1!r} vs {form2!r}"
        )
    return form1
