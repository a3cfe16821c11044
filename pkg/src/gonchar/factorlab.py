"""Divisibility laws and finite-field irreducibility probes.

Rational irreducibility is probed, never proven, through factor-degree
patterns over small prime fields: a proper rational factor of degree k
forces k to be an achievable subset sum of the mod-p factor degrees for
every usable prime p.  An empty intersection of achievable sums certifies
irreducibility; the certificate is one-sided, so `Inconclusive` is an
honest terminal verdict.

All finite-field work happens in numpy int64 vectors with primes kept
below 10^4, so convolution sums stay far from overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import (
    DomainError,
    InexactDivisionError,
    InternalInvariantError,
    SkipPrime,
)
from .polycore import IntPoly, divide_exact, gonchar_poly

_PRIME_LIMIT = 10**4


@lru_cache(maxsize=1)
def _primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * _PRIME_LIMIT
    sieve[0] = sieve[1] = 0
    for i in range(2, int(_PRIME_LIMIT**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@dataclass(frozen=True)
class FactorPattern:
    """Multiset of irreducible-factor degrees of a polynomial over F_p."""

    p: int
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class IrredVerdict:
    status: str  # "Certified" | "Reducible" | "Inconclusive"
    witnesses: tuple[IntPoly, ...]
    primes_used: tuple[int, ...]
    evidence: Mapping[int, frozenset]


# ---------------------------------------------------------------------------
# Known structural factors
# ---------------------------------------------------------------------------

_Z_PLUS_1 = IntPoly((1, 1))
_CYCLO6 = IntPoly((1, -1, 1))  # z^2 - z + 1


def ell_factor(d: int) -> IntPoly:
    """The structural factor: 1 (d odd), z+1 (d even), (z+1)(z^2-z+1) (6 | d)."""
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    if d % 2 == 1:
        return IntPoly((1,))
    if d % 6 == 0:
        return IntPoly((1, 0, 0, 1))  # (z+1)(z^2-z+1) expanded
    return _Z_PLUS_1


def known_divisibility(d: int) -> tuple[bool, bool]:
    """(z+1 divides?, z^2-z+1 divides?) decided by exact division.

    The parity/multiple-of-6 laws are the statements under test elsewhere,
    so this function must not shortcut through them.
    """
    g = gonchar_poly(d)
    flags = []
    for divisor in (_Z_PLUS_1, _CYCLO6):
        try:
            divide_exact(g, divisor)
            flags.append(True)
        except InexactDivisionError:
            flags.append(False)
    return flags[0], flags[1]


def reduced_polynomial(d: int) -> IntPoly:
    """G(d;z) with its structural factor divided out exactly."""
    g = gonchar_poly(d)
    ell = ell_factor(d)
    if ell.degree == 0:
        return g
    try:
        return divide_exact(g, ell)
    except InexactDivisionError as exc:
        raise InternalInvariantError(
            f"structural factor does not divide G({d}; z)"
        ) from exc


_EXCEPTIONAL: dict[int, tuple[tuple[int, ...], ...]] = {
    4: (
        (1, 1),
        (-1, 2, -3, 1),
        (-1, 3, -2, 1),
    ),
    8: (
        (1, 1),
        (1, -3, 3, -3, 1),
        (1, -6, 16, -24, 24, -21, 24, -24, 16, -6, 1),
    ),
    12: (
        (1, 1),
        (1, -1, 1),
        (1, -4, 5, -3, 5, -4, 1),
        (1, -8, 29, -62, 85, -77, 48, -33, 48, -77, 85, -62, 29, -8, 1),
    ),
}


def exceptional_factorizations() -> dict[int, tuple[IntPoly, ...]]:
    """The complete rational factorizations at d = 4, 8, 12.

    Stored as data; every call re-verifies by exact multiplication that
    each factor list reproduces G(d;z), so a transcription error cannot
    survive to a caller.
    """
    out = {}
    for d, rows in _EXCEPTIONAL.items():
        factors = tuple(IntPoly(row) for row in rows)
        prod = IntPoly((1,))
        for f in factors:
            prod = prod * f
        if prod != gonchar_poly(d):
            raise InternalInvariantError(
                f"exceptional factor table for d={d} fails its product check"
            )
        out[d] = factors
    return out


# ---------------------------------------------------------------------------
# Arithmetic in F_p[z]  (vectors of int64, least degree first)
# ---------------------------------------------------------------------------


def _pm_trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def _pm_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    return _pm_trim(np.convolve(a, b) % p)


def _pm_monic(a: np.ndarray, p: int) -> np.ndarray:
    inv = pow(int(a[-1]), p - 2, p)
    return (a * inv) % p


def _pm_rem(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # b monic
    a = a.copy()
    db, da = len(b) - 1, len(a) - 1
    while da >= db:
        c = a[da]
        if c:
            a[da - db : da + 1] -= c * b
            a[da - db : da + 1] %= p
        da -= 1
    return _pm_trim(a[:db])


def _pm_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a, b = _pm_trim(a), _pm_trim(b)
    while len(b):
        a, b = b, _pm_rem(a, _pm_monic(b, p), p)
    if len(a):
        a = _pm_monic(a, p)
    return a


def _pm_powmod(base: np.ndarray, e: int, mod: np.ndarray, p: int) -> np.ndarray:
    mod = _pm_monic(mod, p)
    result = np.array([1], dtype=np.int64)
    acc = _pm_rem(base, mod, p)
    while e:
        if e & 1:
            result = _pm_rem(_pm_mul(result, acc, p), mod, p)
        e >>= 1
        if e:
            acc = _pm_rem(_pm_mul(acc, acc, p), mod, p)
    return result


def _pm_deriv(a: np.ndarray, p: int) -> np.ndarray:
    if len(a) <= 1:
        return a[:0]
    ks = np.arange(1, len(a), dtype=np.int64)
    return _pm_trim((a[1:] * ks) % p)


def _reduce_mod(poly: IntPoly, p: int) -> np.ndarray:
    return _pm_trim(np.array([c % p for c in poly.coeffs], dtype=np.int64))


_X = np.array([0, 1], dtype=np.int64)


def _ddf(f: np.ndarray, p: int) -> list[tuple[int, np.ndarray]]:
    """Distinct-degree splitting of a monic squarefree f over F_p.

    Returns [(k, product of all irreducible factors of degree k)], k
    ascending, products monic.
    """
    out = []
    h = _X.copy()
    k = 0
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = _pm_powmod(h, p, f, p)  # h = x^(p^k) mod f
        diff = h.copy()
        # h - x
        if len(diff) < 2:
            diff = np.concatenate([diff, np.zeros(2 - len(diff), dtype=np.int64)])
        diff[1] = (diff[1] - 1) % p
        g = _pm_gcd(f, _pm_trim(diff), p)
        if len(g) > 1:
            out.append((k, g))
            f = _pm_monic(
                np.array(
                    _pm_divide(f, g, p), dtype=np.int64
                ),
                p,
            )
            h = _pm_rem(h, f, p)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def _pm_divide(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # exact quotient, b monic divisor of a
    a = a.copy()
    db = len(b) - 1
    qn = len(a) - db
    q = np.zeros(qn, dtype=np.int64)
    for i in range(qn - 1, -1, -1):
        c = a[i + db]
        if c:
            q[i] = c
            a[i : i + db + 1] -= c * b
            a[i : i + db + 1] %= p
    if np.any(a[:db] % p):
        raise InternalInvariantError("inexact division inside F_p factorization")
    return _pm_trim(q)


def _edf(f: np.ndarray, k: int, p: int) -> list[np.ndarray]:
    """Equal-degree splitting: f is monic squarefree, all factors degree k.

    Deterministic Cantor--Zassenhaus: splitting elements are swept in a
    fixed order (x+c, then higher-degree seeds), so runs are reproducible.
    """
    n = len(f) - 1
    if n == k:
        return [f]
    pieces = [f]
    seed = 0
    while any(len(g) - 1 > k for g in pieces) and seed < 10_000:
        # seed polynomial: x + seed for small seeds, then x^j + seed
        j = 1 + seed // p
        t = np.zeros(j + 1, dtype=np.int64)
        t[0] = seed % p
        t[j] = 1
        seed += 1
        nxt: list[np.ndarray] = []
        for g in pieces:
            if len(g) - 1 == k:
                nxt.append(g)
                continue
            if p == 2:
                # trace map sum t^(2^i), i < k
                acc = _pm_rem(t, _pm_monic(g, p), p)
                tr = acc.copy()
                for _ in range(k - 1):
                    acc = _pm_powmod(acc, 2, g, 2)
                    m = max(len(tr), len(acc))
                    tr = np.concatenate([tr, np.zeros(m - len(tr), dtype=np.int64)])
                    a2 = np.concatenate([acc, np.zeros(m - len(acc), dtype=np.int64)])
                    tr = _pm_trim((tr + a2) % 2)
                cand = tr
            else:
                e = (p**k - 1) // 2
                cand = _pm_powmod(t, e, g, p)
                if len(cand) == 0:
                    nxt.append(g)
                    continue
                cand = cand.copy()
                cand[0] = (cand[0] - 1) % p
                cand = _pm_trim(cand)
            h = _pm_gcd(g, cand, p) if len(cand) else g[:0]
            if 0 < len(h) - 1 < len(g) - 1:
                nxt.append(h)
                nxt.append(_pm_monic(_pm_divide(g, h, p), p))
            else:
                nxt.append(g)
        pieces = nxt
    if any(len(g) - 1 > k for g in pieces):
        raise InternalInvariantError("equal-degree splitting did not terminate")
    return pieces


def factor_degrees_mod_p(p_poly: IntPoly, p: int) -> FactorPattern:
    """Exact multiset of irreducible factor degrees of p_poly over F_p."""
    if p not in _prime_set():
        raise DomainError(f"p must be a prime below {_PRIME_LIMIT}, got {p}")
    if p_poly.is_zero or p_poly.degree < 1:
        raise DomainError("need a nonconstant polynomial")
    if p_poly.leading % p == 0:
        raise DomainError(f"prime {p} divides the leading coefficient")
    f = _pm_monic(_reduce_mod(p_poly, p), p)
    df = _pm_deriv(f, p)
    if len(df) == 0 or len(_pm_gcd(f, df, p)) > 1:
        raise SkipPrime(f"reduction mod {p} is not squarefree")
    degrees: list[int] = []
    for k, block in _ddf(f, p):
        count, rem = divmod(len(block) - 1, k)
        if rem:
            raise InternalInvariantError("distinct-degree block has wrong size")
        degrees.extend([k] * count)
    degrees.sort()
    if sum(degrees) != p_poly.degree:
        raise InternalInvariantError("factor degrees do not sum to the degree")
    return FactorPattern(p=p, degrees=tuple(degrees))


def factor_mod_p(p_poly: IntPoly, p: int) -> list[tuple[int, ...]]:
    """Full monic irreducible factor list over F_p (coefficient tuples).

    Same preconditions as factor_degrees_mod_p; used to cross-check that
    the degree patterns describe real factors.
    """
    if p not in _prime_set():
        raise DomainError(f"p must be a prime below {_PRIME_LIMIT}, got {p}")
    if p_poly.leading % p == 0:
        raise DomainError(f"prime {p} divides the leading coefficient")
    f = _pm_monic(_reduce_mod(p_poly, p), p)
    df = _pm_deriv(f, p)
    if len(df) == 0 or len(_pm_gcd(f, df, p)) > 1:
        raise SkipPrime(f"reduction mod {p} is not squarefree")
    out = []
    for k, block in _ddf(f, p):
        for piece in _edf(block, k, p):
            out.append(tuple(int(c) for c in piece))
    out.sort(key=lambda t: (len(t), t))
    return out


@lru_cache(maxsize=1)
def _prime_set() -> frozenset:
    return frozenset(_primes())


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


def _proper_subset_sums(degrees: Sequence[int]) -> frozenset:
    total = sum(degrees)
    sums = {0}
    for k in degrees:
        sums |= {s + k for s in sums}
    return frozenset(s for s in sums if 0 < s < total)


def _known_factor_pool() -> list[IntPoly]:
    pool = [IntPoly(row) for rows in _EXCEPTIONAL.values() for row in rows]
    seen = set()
    uniq = []
    for f in pool:
        if f.coeffs not in seen:
            seen.add(f.coeffs)
            uniq.append(f)
    return uniq


def irreducibility_certificate(p_poly: IntPoly, prime_budget: int = 25) -> IrredVerdict:
    """Probe rational irreducibility by degree patterns over small primes.

    Reducible verdicts come only from exact division by the known factor
    pool (structural factors and the exceptional tables) and always carry
    witnesses that multiply back to the input.  Certified means the
    intersection of achievable proper-factor degrees over the usable
    primes is empty.  Everything else is Inconclusive, with the per-prime
    evidence attached.
    """
    if p_poly.is_zero or p_poly.degree < 1:
        raise DomainError("need a nonconstant polynomial")
    if p_poly.primitive_part() != p_poly:
        raise DomainError("polynomial must be primitive with positive lead")
    if prime_budget < 1:
        raise DomainError("prime_budget must be positive")

    # exact recombination against the known pool
    witnesses: list[IntPoly] = []
    rest = p_poly
    progress = True
    while progress and rest.degree >= 1:
        progress = False
        for f in _known_factor_pool():
            if f.degree >= rest.degree:
                continue
            try:
                rest = divide_exact(rest, f)
            except InexactDivisionError:
                continue
            witnesses.append(f)
            progress = True
            break
    if witnesses:
        if rest.degree >= 1:
            witnesses.append(rest)
        prod = IntPoly((1,))
        for w in witnesses:
            prod = prod * w
        if prod != p_poly:
            raise InternalInvariantError("witness product does not reproduce input")
        return IrredVerdict(
            status="Reducible",
            witnesses=tuple(witnesses),
            primes_used=(),
            evidence={},
        )

    evidence: dict[int, frozenset] = {}
    primes_used: list[int] = []
    running: Optional[frozenset] = None
    usable = 0
    for p in _primes():
        if usable >= prime_budget:
            break
        try:
            pattern = factor_degrees_mod_p(p_poly, p)
        except (SkipPrime, DomainError):
            continue
        usable += 1
        primes_used.append(p)
        sums = _proper_subset_sums(pattern.degrees)
        evidence[p] = sums
        running = sums if running is None else (running & sums)
        if not running:
            return IrredVerdict(
                status="Certified",
                witnesses=(),
                primes_used=tuple(primes_used),
                evidence=evidence,
            )
    return IrredVerdict(
        status="Inconclusive",
        witnesses=(),
        primes_used=tuple(primes_used),
        evidence=evidence,
    )
