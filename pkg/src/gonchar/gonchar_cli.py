"""Command-line front end and file emitters.

Subcommands cover the exact polynomial data (`poly`), the critical
distance (`rho`), certified zero sets with region tags (`zeros`,
`census`), irreducibility verdicts (`factors`), the signed equilibrium
density (`density`), and self-checking property suites (`verify`).
Artifacts are deterministic: identical configurations produce
byte-identical CSV/SVG files, and JSON envelopes are reproducible once
SOURCE_DATE_EPOCH is pinned.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error,
3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import gmpy2

from .equilibrium import (
    c_d,
    density,
    density_profile,
    positive_cap,
    total_mass,
    weighted_potential_residual,
)
from .errors import (
    DomainError,
    GoncharError,
    InexactDivisionError,
    InternalInvariantError,
    NumericFailure,
    UnresolvedClassification,
)
from .factorlab import irreducibility_certificate, reduced_polynomial
from .polycore import (
    IntPoly,
    RatQ,
    derivative,
    divide_exact,
    eval_exact,
    gonchar_poly,
    gonchar_poly_q,
    reciprocal,
)
from .rootkit_complex import certify_all_simple
from .rootkit_real import critical_distance, isolate_real_roots
from .rootkit_real import rho as rho_enclosure
from .zerogeom import (
    Region,
    _census_from_tags,
    _classified_zeros,
    census,
    max_gamma_distance,
    theta_solutions,
)

SCHEMA_VERSION = "1"
DEFAULT_TOL = Fraction(1, 10**30)

_EXIT_OK = 0
_EXIT_VERIFY = 1
_EXIT_USAGE = 2
_EXIT_NUMERIC = 3


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Validated arguments of one invocation.

    `d` is set for single-degree commands, (`d_min`, `d_max`) for sweeps;
    never both.  Optional knobs stay None when the caller did not pass
    them, so the command echo reflects only what was requested.
    """

    subcommand: str
    d: Optional[int] = None
    d_min: Optional[int] = None
    d_max: Optional[int] = None
    q: Optional[Fraction] = None
    R: Optional[float] = None
    prec: Optional[int] = None
    tol: Optional[Fraction] = None
    out: Optional[str] = None
    svg: Optional[str] = None
    primes: Optional[int] = None
    suite: Optional[str] = None
    fmt: str = "text"

    def degrees(self) -> List[int]:
        if self.d is not None:
            return [self.d]
        return list(range(self.d_min, self.d_max + 1))

    def tolerance(self) -> Fraction:
        if self.tol is not None:
            return self.tol
        if self.prec is not None:
            return Fraction(1, 2**self.prec)
        return DEFAULT_TOL


def _rat_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _echo(cfg: RunConfig) -> str:
    """Canonical command echo, derived from the config (not from argv)."""
    parts = [cfg.subcommand]
    if cfg.d is not None:
        parts.append(f"--d {cfg.d}")
    if cfg.d_min is not None:
        parts.append(f"--d-min {cfg.d_min} --d-max {cfg.d_max}")
    if cfg.q is not None:
        parts.append(f"--q {_rat_str(cfg.q)}")
    if cfg.R is not None:
        parts.append(f"--R {cfg.R!r}")
    if cfg.prec is not None:
        parts.append(f"--prec {cfg.prec}")
    if cfg.tol is not None:
        parts.append(f"--tol {_rat_str(cfg.tol)}")
    if cfg.out is not None:
        parts.append(f"--out {cfg.out}")
    if cfg.svg is not None:
        parts.append(f"--svg {cfg.svg}")
    if cfg.primes is not None:
        parts.append(f"--primes {cfg.primes}")
    if cfg.suite is not None:
        parts.append(f"--suite {cfg.suite}")
    if cfg.fmt != "text":
        parts.append(f"--format {cfg.fmt}")
    return " ".join(parts)


def _generated_at() -> str:
    # reproducible-build convention; wall clock only when unpinned
    raw = os.environ.get("SOURCE_DATE_EPOCH")
    epoch = int(raw) if raw is not None and raw.strip().isdigit() else int(time.time())
    return datetime.fromtimestamp(epoch, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _envelope(cfg: RunConfig, payload: dict, status: str = "ok") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": _echo(cfg),
        "generated_at": _generated_at(),
        "status": status,
        "payload": payload,
    }


def emit_json(envelope: dict) -> str:
    """Canonical JSON rendering: sorted keys, 2-space indent, ASCII."""
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Decimal / CSV / file plumbing
# ---------------------------------------------------------------------------


def _digits_for(bits: int) -> int:
    return max(6, int(bits * 0.30103))


def _fmt_mpfr(x, bits: int) -> str:
    """Fixed-point decimal at the working precision; never exponent form."""
    return format(x, f".{_digits_for(bits)}f")


def emit_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> Tuple[List[str], List[List[str]]]:
    """Inverse of emit_csv for the schemas used here (no quoting needed)."""
    lines = text.rstrip("\n").split("\n")
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# Zero-set pipeline with the results cache
# ---------------------------------------------------------------------------

ZEROS_HEADER = ("d", "index", "re", "im", "radius", "region", "on_c0")
CENSUS_HEADER = ("d", "n", "N1", "N2", "N3", "on_circle", "intersection_pair")


def _cache_dir() -> str:
    return os.environ.get("GONCHAR_CACHE", ".gonchar-cache")


def _cache_path(d: int, tol: Fraction) -> str:
    name = f"zeros-d{d}-q1_1-t{tol.numerator}_{tol.denominator}.json"
    return os.path.join(_cache_dir(), name)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _compute_zero_rows(d: int, tol: Fraction):
    attempt = tol
    for k in range(3):
        try:
            zs, ref, tags = _classified_zeros(d, attempt)
            break
        except UnresolvedClassification:
            if k == 2:
                raise
            attempt = attempt * attempt
    cen = _census_from_tags(d, ref, tags)
    wp = zs.working_precision
    rows = []
    for disk, tag in zip(zs, tags):
        rows.append(
            {
                "d": d,
                "index": disk.index,
                "re": _fmt_mpfr(disk.value.re, wp),
                "im": _fmt_mpfr(disk.value.im, wp),
                "radius": _fmt_mpfr(disk.radius, wp),
                "region": tag.tag,
                "on_c0": tag in (Region.OnC0, Region.IntersectionPoint),
            }
        )
    return rows, cen, wp


def _census_dict(cen) -> dict:
    return {
        "d": cen.d,
        "n": 2 * cen.d - 1,
        "N1": cen.N1,
        "N2": cen.N2,
        "N3": cen.N3,
        "on_circle": cen.on_circle,
        "intersection_pair": cen.has_intersection_pair,
    }


def zero_rows(d: int, tol: Fraction):
    """Rows + census + precision for one degree, memoized on disk.

    The cache stores the already-formatted decimal strings, so a warm run
    emits byte-identical artifacts to a cold one.
    """
    path = _cache_path(d, tol)
    try:
        with open(path, encoding="utf-8") as fh:
            blob = json.load(fh)
        if (
            blob.get("schema_version") == SCHEMA_VERSION
            and blob.get("d") == d
            and blob.get("tol") == _rat_str(tol)
            and len(blob["rows"]) == 2 * d - 1
        ):
            c = blob["census"]
            from .zerogeom import Census

            cen = Census(
                d=c["d"],
                N1=c["N1"],
                N2=c["N2"],
                N3=c["N3"],
                on_circle=c["on_circle"],
                has_intersection_pair=c["intersection_pair"],
            )
            return blob["rows"], cen, blob["working_precision"]
    except (OSError, ValueError, KeyError, TypeError):
        pass  # cold or unreadable cache: recompute and overwrite

    rows, cen, wp = _compute_zero_rows(d, tol)
    blob = {
        "schema_version": SCHEMA_VERSION,
        "d": d,
        "q": "1/1",
        "tol": _rat_str(tol),
        "working_precision": wp,
        "rows": rows,
        "census": _census_dict(cen),
    }
    try:
        _atomic_write(path, json.dumps(blob, sort_keys=True, indent=2) + "\n")
    except OSError:
        pass  # cache is best-effort; results are already in hand
    return rows, cen, wp


def _zeros_csv_rows(rows) -> List[List[str]]:
    return [
        [
            str(r["d"]),
            str(r["index"]),
            r["re"],
            r["im"],
            r["radius"],
            r["region"],
            "true" if r["on_c0"] else "false",
        ]
        for r in rows
    ]


def _census_csv_row(cen) -> List[str]:
    return [
        str(cen.d),
        str(2 * cen.d - 1),
        str(cen.N1),
        str(cen.N2),
        str(cen.N3),
        str(cen.on_circle),
        "true" if cen.has_intersection_pair else "false",
    ]


# ---------------------------------------------------------------------------
# SVG emitter
# ---------------------------------------------------------------------------

_W = _H = 800
_RE_MIN, _RE_MAX = -1.6, 2.6
_IM_MIN, _IM_MAX = -2.1, 2.1
_SC = _W / (_RE_MAX - _RE_MIN)  # 4.2 units across in both axes
_HALF_RT3 = math.sqrt(3) / 2


def _px(x: float) -> float:
    return (x - _RE_MIN) * _SC


def _py(y: float) -> float:
    return (_IM_MAX - y) * _SC


def _star_points(cx: float, cy: float, r_out: float = 5.0, r_in: float = 2.0) -> str:
    pts = []
    for k in range(10):
        ang = math.pi * (-0.5 + k / 5.0)
        r = r_out if k % 2 == 0 else r_in
        pts.append(f"{cx + r * math.cos(ang):.3f},{cy + r * math.sin(ang):.3f}")
    return " ".join(pts)


def _marker(region: str, x: float, y: float) -> str:
    s = 3.5
    if region == "A1":  # cross
        return (
            f'<path class="a1" d="M{x - s:.3f} {y - s:.3f}L{x + s:.3f} {y + s:.3f}'
            f'M{x - s:.3f} {y + s:.3f}L{x + s:.3f} {y - s:.3f}"/>'
        )
    if region == "A2":  # diamond
        return (
            f'<path class="a2" d="M{x:.3f} {y - s:.3f}L{x + s:.3f} {y:.3f}'
            f'L{x:.3f} {y + s:.3f}L{x - s:.3f} {y:.3f}Z"/>'
        )
    if region == "A3":  # plus
        return (
            f'<path class="a3" d="M{x - s:.3f} {y:.3f}L{x + s:.3f} {y:.3f}'
            f'M{x:.3f} {y - s:.3f}L{x:.3f} {y + s:.3f}"/>'
        )
    if region == "OnC0":
        return f'<circle class="onc0" cx="{x:.3f}" cy="{y:.3f}" r="{s:.3f}"/>'
    if region == "IntersectionPoint":
        return f'<polygon class="ip" points="{_star_points(x, y)}"/>'
    raise InternalInvariantError(f"unknown region tag {region!r}")


_SVG_STYLE = (
    "<style>"
    ".guides circle,.guides line{fill:none;stroke:#8a8a8a;stroke-width:1}"
    ".guides .gamma{stroke:#222222;stroke-width:2.2}"
    ".a1{stroke:#c0392b;fill:none;stroke-width:1.2}"
    ".a2{fill:none;stroke:#2980b9;stroke-width:1.2}"
    ".a3{stroke:#27ae60;fill:none;stroke-width:1.2}"
    ".onc0{fill:none;stroke:#8e44ad;stroke-width:1.2}"
    ".ip{fill:#f39c12;stroke:#7d5a0d;stroke-width:0.8}"
    "</style>"
)


def emit_svg_zeroplot(sets: Sequence[Tuple[int, Sequence[dict]]]) -> str:
    """Deterministic scatter of certified zeros over the guiding geometry.

    Fixed 800x800 viewport showing Re in [-1.6, 2.6], Im in [-2.1, 2.1];
    the two unit circles, the vertical line Re = 1/2, and the segment
    joining their intersection points are drawn behind the markers.
    """
    if not sets:
        raise DomainError("svg plot needs at least one zero set")
    ds = ",".join(str(d) for d, _ in sets)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f"<desc>certified zeros with region tags; d = {ds}</desc>",
        _SVG_STYLE,
        f'<rect width="{_W}" height="{_H}" fill="#ffffff"/>',
        '<g class="guides">',
        f'<circle cx="{_px(0):.3f}" cy="{_py(0):.3f}" r="{_SC:.3f}"/>',
        f'<circle cx="{_px(1):.3f}" cy="{_py(0):.3f}" r="{_SC:.3f}"/>',
        f'<line x1="{_px(0.5):.3f}" y1="0" x2="{_px(0.5):.3f}" y2="{_H}"/>',
        f'<line class="gamma" x1="{_px(0.5):.3f}" y1="{_py(_HALF_RT3):.3f}" '
        f'x2="{_px(0.5):.3f}" y2="{_py(-_HALF_RT3):.3f}"/>',
        "</g>",
        '<g class="zeros">',
    ]
    for d, rows in sets:
        for r in rows:
            out.append(_marker(r["region"], _px(float(r["re"])), _py(float(r["im"]))))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (payload, status, text rendering)
# ---------------------------------------------------------------------------


def _cmd_poly(cfg: RunConfig):
    if cfg.q is None:
        p = gonchar_poly(cfg.d)
        q_str = None
        clearing = 1
    else:
        inst = gonchar_poly_q(cfg.d, cfg.q)
        p = inst.poly
        q_str = _rat_str(cfg.q)
        clearing = inst.clearing_factor
    coeffs = [str(c) for c in p.coeffs]
    payload = {
        "d": cfg.d,
        "q": q_str,
        "degree": p.degree,
        "clearing_factor": clearing,
        "coefficients": coeffs,
    }
    label = f"d={cfg.d}" if q_str is None else f"d={cfg.d} q={q_str}"
    text = f"{label} coefficients (ascending): {' '.join(coeffs)}\n"
    if cfg.out:
        _write_text(cfg.out, emit_json(_envelope(cfg, payload)))
    return payload, "ok", text


def _cmd_rho(cfg: RunConfig):
    q = cfg.q if cfg.q is not None else Fraction(1)
    approx = critical_distance(cfg.d, q, cfg.tolerance())
    wp = approx.working_precision
    with gmpy2.context(precision=wp):
        rho_val = approx.value - 1
    exact = approx.exact
    payload = {
        "d": cfg.d,
        "q": _rat_str(q),
        "R": _fmt_mpfr(approx.value, wp),
        "rho": _fmt_mpfr(rho_val, wp),
        "radius": _fmt_mpfr(approx.radius, wp),
        "precision_bits": wp,
        "exact": exact is not None,
        "R_exact": _rat_str(exact) if exact is not None else None,
        "rho_exact": _rat_str(exact - 1) if exact is not None else None,
    }
    tag = " (exact)" if exact is not None else ""
    text = (
        f"d={cfg.d} q={_rat_str(q)}: R={payload['R']}\n"
        f"rho={payload['rho']} +/- {payload['radius']}{tag}\n"
    )
    if cfg.out:
        _write_text(cfg.out, emit_json(_envelope(cfg, payload)))
    return payload, "ok", text


def _cmd_zeros(cfg: RunConfig):
    tol = cfg.tolerance()
    sets = []
    for d in cfg.degrees():
        rows, cen, wp = zero_rows(d, tol)
        sets.append((d, rows, cen, wp))
    payload = {
        "zero_sets": [
            {"d": d, "precision_bits": wp, "census": _census_dict(cen), "zeros": rows}
            for d, rows, cen, wp in sets
        ]
    }
    csv_text = emit_csv(
        ZEROS_HEADER,
        [row for d, rows, _, _ in sets for row in _zeros_csv_rows(rows)],
    )
    if cfg.out:
        _write_text(cfg.out, csv_text)
    if cfg.svg:
        _write_text(cfg.svg, emit_svg_zeroplot([(d, rows) for d, rows, _, _ in sets]))
    lines = []
    for d, rows, cen, _ in sets:
        lines.append(
            f"d={d}: {len(rows)} zeros, regions "
            f"N=({cen.N1},{cen.N2},{cen.N3}), on-circle {cen.on_circle}"
        )
    text = "\n".join(lines) + "\n"
    if cfg.fmt == "csv":
        text = csv_text
    return payload, "ok", text


def _cmd_census(cfg: RunConfig):
    tol = cfg.tolerance()
    censuses = [zero_rows(d, tol)[1] for d in cfg.degrees()]
    payload = {"rows": [_census_dict(c) for c in censuses]}
    csv_text = emit_csv(CENSUS_HEADER, [_census_csv_row(c) for c in censuses])
    if cfg.out:
        _write_text(cfg.out, csv_text)
    lines = [
        f"d={c.d} n={2 * c.d - 1} N=({c.N1},{c.N2},{c.N3}) "
        f"on_circle={c.on_circle} pair={'yes' if c.has_intersection_pair else 'no'}"
        for c in censuses
    ]
    text = "\n".join(lines) + "\n"
    if cfg.fmt == "csv":
        text = csv_text
    return payload, "ok", text


def _cmd_factors(cfg: RunConfig):
    budget = cfg.primes if cfg.primes is not None else 25
    entries = []
    for d in cfg.degrees():
        red = reduced_polynomial(d)
        v = irreducibility_certificate(red, budget)
        entries.append(
            {
                "d": d,
                "reduced_degree": red.degree,
                "status": v.status,
                "witness_degrees": sorted(w.degree for w in v.witnesses),
                "witnesses": [[str(c) for c in w.coeffs] for w in v.witnesses],
                "primes_used": list(v.primes_used),
            }
        )
    payload = {"verdicts": entries}
    lines = []
    for e in entries:
        extra = f" degrees={e['witness_degrees']}" if e["witnesses"] else ""
        lines.append(f"d={e['d']}: {e['status']}{extra}")
    text = "\n".join(lines) + "\n"
    if cfg.out:
        _write_text(cfg.out, emit_json(_envelope(cfg, payload)))
    return payload, "ok", text


def _cmd_density(cfg: RunConfig):
    q = cfg.q if cfg.q is not None else Fraction(1)
    R = cfg.R
    rq = critical_distance(cfg.d, q)
    rq_f = float(rq.value)
    cap = positive_cap(R, q, cfg.d)
    mass = total_mass(R, q, cfg.d)
    min_density = density(0.0, R, q, cfg.d)  # the profile is increasing in t
    payload = {
        "d": cfg.d,
        "R": R,
        "q": _rat_str(q),
        "min_density": min_density,
        "argmin_t": 0.0,
        "critical_distance": rq_f,
        "beyond_critical": R >= rq_f,
        "cap": {"t0": cap.t0, "positive_mass": cap.positive_mass},
        "total_mass": mass,
    }
    prof = density_profile(R, q, cfg.d, n=721)
    csv_text = emit_csv(
        ("t", "density"),
        [[f"{t:.17g}", f"{v:.17g}"] for t, v in prof.samples],
    )
    if cfg.out:
        _write_text(cfg.out, csv_text)
    text = (
        f"d={cfg.d} R={R!r} q={_rat_str(q)}: density(0)={min_density:.12g}, "
        f"cap t0={cap.t0:.12g}, cap mass={cap.positive_mass:.12g}, "
        f"total={mass:.12g}\n"
    )
    if cfg.fmt == "csv":
        text = csv_text
    return payload, "ok", text


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


def _check_anchor_values():
    for d in range(1, 33):
        g = gonchar_poly(d)
        assert eval_exact(g, 1) == -2, f"G({d};1) != -2"
        assert eval_exact(g, 2) == 1 - 2**d, f"G({d};2) wrong"
        if d >= 2:  # at d=1 the z^(d-1) factor is z^0 and the value is -3
            assert eval_exact(g, 0) == (-1) ** d, f"G({d};0) wrong"


def _check_self_reciprocal():
    for d in range(2, 41, 2):
        g = gonchar_poly(d)
        assert reciprocal(g) == g, f"G({d}) not self-reciprocal"


def _check_cyclotomic_divisors():
    zp1 = IntPoly((1, 1))
    cyc = IntPoly((1, -1, 1))
    for d in range(1, 49):
        g = gonchar_poly(d)
        for f, want in ((zp1, d % 2 == 0), (cyc, d % 6 == 0)):
            try:
                divide_exact(g, f)
                got = True
            except InexactDivisionError:
                got = False
            assert got == want, f"divisibility law broken at d={d}, {f.coeffs}"


def _check_linear_root():
    for q in (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 4)):
        inst = gonchar_poly_q(1, q)
        assert eval_exact(inst.poly, 1 + 2 * q) == 0, f"d=1 root wrong for q={q}"


def _check_derivative_identity():
    pts = (Fraction(2), Fraction(1, 2), Fraction(-3, 2), Fraction(5, 3))
    for d in range(1, 13):
        g = gonchar_poly(d)
        gp = derivative(g)
        for x in pts:
            lhs = x * (x - 1) * eval_exact(gp, x)
            rhs = (
                (d - 1) * (x - 1) ** d * (x**d + 1)
                + 2 * x**d
                + (d * (x - 1) + 1) * eval_exact(g, x)
            )
            assert lhs == rhs, f"derivative identity fails at d={d}, x={x}"


def _check_exact_d1():
    r = critical_distance(1, 1)
    assert r.exact == 3, "critical_distance(1,1) not exactly 3"


def _check_golden_d2():
    r = rho_enclosure(2)
    with gmpy2.context(precision=r.working_precision):
        golden = (1 + gmpy2.sqrt(gmpy2.mpfr(5))) / 2
        assert abs(r.value - golden) < gmpy2.mpfr(2) ** -100, "rho(2) != golden ratio"


def _check_r1_window():
    prev = None
    for d in range(2, 25):
        r = critical_distance(d, 1)
        v = float(r.value)
        assert 2 < v < 3, f"R_1({d}) outside (2,3)"
        if prev is not None:
            assert v < prev, f"R_1 not decreasing at d={d}"
        prev = v


def _check_real_structure():
    for d in range(1, 15):
        ivs, exact = isolate_real_roots(gonchar_poly(d))
        count = len(ivs) + len(exact)
        if d % 2 == 1:
            assert count == 1, f"odd d={d}: expected one real zero"
        else:
            assert count == 3, f"even d={d}: expected three real zeros"
            assert any(r == -1 for r in exact), f"even d={d}: -1 missing"


def _check_simple_zeros():
    for d in range(1, 25):
        assert certify_all_simple(gonchar_poly(d)), f"multiple zero reported at d={d}"


def _check_factor_verdicts():
    for d in range(1, 25):
        v = irreducibility_certificate(reduced_polynomial(d))
        if d in (4, 8, 12):
            assert v.status == "Reducible", f"d={d} should be Reducible"
        else:
            assert v.status == "Certified", f"d={d}: {v.status}"


def _check_factor_witnesses():
    degs = {4: [3, 3], 8: [4, 10], 12: [6, 14]}
    for d, want in degs.items():
        red = reduced_polynomial(d)
        v = irreducibility_certificate(red)
        assert sorted(w.degree for w in v.witnesses) == want, f"d={d} degrees"
        prod = IntPoly((1,))
        for w in v.witnesses:
            prod = prod * w
        assert prod == red, f"d={d} witnesses do not multiply back"


def _check_census_laws():
    for d in range(1, 15):
        c = census(d)
        pair = 2 if c.has_intersection_pair else 0
        assert c.N1 + c.N2 + c.N3 + pair == 2 * d - 1, f"sum law at d={d}"
        if d % 2 == 1:
            assert c.on_circle == 0, f"odd d={d} has on-circle zeros"


def _check_known_census_rows():
    want = {2: ((1, 1, 1), False), 6: ((3, 3, 3), True), 12: ((7, 7, 7), True)}
    for d, (counts, pair) in want.items():
        c = census(d)
        assert c.counts == counts and c.has_intersection_pair == pair, f"census d={d}"
    assert census(6).on_circle == 5, "d=6 on-circle count"


def _check_theta_counts():
    for d in range(2, 21, 2):
        ref = theta_solutions(d)
        want = 2 * ((d - 1) // 6 + (1 if d % 6 == 0 else 0)) + 1
        assert len(ref) == want, f"theta count at d={d}"


def _check_gamma_trend():
    assert max_gamma_distance(24) < max_gamma_distance(8), "gamma trend violated"


def _check_unit_mass():
    for d in (2, 3):
        for R in (1.5, 2.0):
            for q in (1, 3):
                assert abs(total_mass(R, q, d) - 1) < 1e-10, f"mass d={d} R={R} q={q}"


def _check_vanishing_at_critical():
    for d in range(1, 9):
        rq = float(critical_distance(d, 1).value)
        assert abs(density(0.0, rq, 1, d)) < 1e-10, f"density at R_1({d})"


def _check_constant_potential():
    res = weighted_potential_residual(2.0, 1, [math.pi / 2, math.pi / 4])
    assert res < 1e-6, f"potential residual {res}"


def _check_surface_constant():
    assert abs(c_d(2) - math.pi**3) < 1e-12 * math.pi**3, "C_2"
    assert abs(c_d(3) - 4 * math.pi**2) < 1e-12 * 4 * math.pi**2, "C_3"


_SUITES: dict[str, Tuple[Tuple[str, Callable[[], None]], ...]] = {
    "poly": (
        ("anchor-values", _check_anchor_values),
        ("self-reciprocal-even", _check_self_reciprocal),
        ("cyclotomic-divisor-law", _check_cyclotomic_divisors),
        ("linear-case-root", _check_linear_root),
        ("derivative-identity", _check_derivative_identity),
    ),
    "roots": (
        ("exact-critical-distance-d1", _check_exact_d1),
        ("golden-ratio-d2", _check_golden_d2),
        ("critical-distance-window", _check_r1_window),
        ("real-zero-structure", _check_real_structure),
        ("simple-zeros", _check_simple_zeros),
    ),
    "factors": (
        ("verdict-sweep", _check_factor_verdicts),
        ("exceptional-witnesses", _check_factor_witnesses),
    ),
    "geometry": (
        ("census-sum-law", _check_census_laws),
        ("known-census-rows", _check_known_census_rows),
        ("theta-solution-count", _check_theta_counts),
        ("gamma-attraction-trend", _check_gamma_trend),
    ),
    "equilibrium": (
        ("unit-mass", _check_unit_mass),
        ("vanishing-at-critical-distance", _check_vanishing_at_critical),
        ("constant-weighted-potential", _check_constant_potential),
        ("surface-constant", _check_surface_constant),
    ),
}


def _cmd_verify(cfg: RunConfig):
    suite = cfg.suite if cfg.suite is not None else "all"
    if suite == "all":
        checks = [item for name in _SUITES for item in _SUITES[name]]
    else:
        checks = list(_SUITES[suite])
    results = []
    failed = 0
    for name, fn in checks:
        try:
            fn()
            results.append({"check": name, "status": "pass", "detail": None})
        except AssertionError as exc:
            failed += 1
            results.append({"check": name, "status": "fail", "detail": str(exc)})
    status = "ok" if failed == 0 else "fail"
    payload = {
        "suite": suite,
        "checks": results,
        "passed": len(results) - failed,
        "failed": failed,
    }
    lines = [f"{r['status'].upper():4s} {r['check']}" for r in results]
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    text = "\n".join(lines) + "\n"
    if cfg.out:
        _write_text(cfg.out, emit_json(_envelope(cfg, payload, status)))
    return payload, status, text


_HANDLERS = {
    "poly": _cmd_poly,
    "rho": _cmd_rho,
    "zeros": _cmd_zeros,
    "census": _cmd_census,
    "factors": _cmd_factors,
    "density": _cmd_density,
    "verify": _cmd_verify,
}

_CSV_CAPABLE = frozenset({"zeros", "census", "density"})


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _rational(text: str) -> Fraction:
    try:
        val = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    return val


def _nonempty_path(text: str) -> str:
    if not text:
        raise argparse.ArgumentTypeError("empty path")
    return text


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gonchar",
        description="Exact and certified computations for the family "
        "[(z-1)^d - z - 1] z^(d-1) + (z-1)^d.",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    def add_common(p, *, fmt=True, out=True):
        if out:
            p.add_argument("--out", type=_nonempty_path, help="artifact path")
        if fmt:
            p.add_argument(
                "--format",
                dest="fmt",
                choices=("json", "csv", "text"),
                default="text",
                help="stdout rendering",
            )

    def add_single_d(p):
        p.add_argument("--d", type=_positive_int, required=True)

    def add_d_or_range(p):
        p.add_argument("--d", type=_positive_int)
        p.add_argument("--d-min", dest="d_min", type=_positive_int)
        p.add_argument("--d-max", dest="d_max", type=_positive_int)

    p = sub.add_parser("poly", help="exact coefficients, optionally cleared at q")
    add_single_d(p)
    p.add_argument("--q", type=_rational)
    add_common(p)

    p = sub.add_parser("rho", help="critical distance R_q and rho = R_q - 1")
    add_single_d(p)
    p.add_argument("--q", type=_rational)
    p.add_argument("--prec", type=_positive_int, help="target bits")
    p.add_argument("--tol", type=_rational, help="enclosure width")
    add_common(p)

    p = sub.add_parser("zeros", help="certified zero disks with region tags")
    add_d_or_range(p)
    p.add_argument("--prec", type=_positive_int)
    p.add_argument("--tol", type=_rational)
    p.add_argument("--svg", type=_nonempty_path, help="scatter plot path")
    add_common(p)

    p = sub.add_parser("census", help="per-degree region counts")
    add_d_or_range(p)
    p.add_argument("--prec", type=_positive_int)
    p.add_argument("--tol", type=_rational)
    add_common(p)

    p = sub.add_parser("factors", help="irreducibility verdicts with witnesses")
    add_d_or_range(p)
    p.add_argument("--primes", type=_positive_int, help="prime budget")
    add_common(p)

    p = sub.add_parser("density", help="signed equilibrium density on the axis")
    add_single_d(p)
    p.add_argument("--R", type=float, required=True, help="charge distance, > 1")
    p.add_argument("--q", type=_rational)
    add_common(p)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument(
        "--suite",
        choices=("all", "poly", "roots", "factors", "geometry", "equilibrium"),
        default="all",
    )
    add_common(p)
    return top


def _config_from_ns(top: argparse.ArgumentParser, ns: argparse.Namespace) -> RunConfig:
    d = getattr(ns, "d", None)
    d_min = getattr(ns, "d_min", None)
    d_max = getattr(ns, "d_max", None)
    if d is not None and (d_min is not None or d_max is not None):
        top.error("--d conflicts with --d-min/--d-max")
    if (d_min is None) != (d_max is None):
        top.error("--d-min and --d-max must be given together")
    if d is None and d_min is None and ns.subcommand in ("zeros", "census", "factors"):
        top.error("need --d or --d-min/--d-max")
    if d_min is not None and d_min > d_max:
        top.error("--d-min exceeds --d-max")
    q = getattr(ns, "q", None)
    if q is not None and q <= 0:
        top.error("--q must be positive")
    tol = getattr(ns, "tol", None)
    if tol is not None and tol <= 0:
        top.error("--tol must be positive")
    R = getattr(ns, "R", None)
    if R is not None and not R > 1:
        top.error("--R must exceed 1")
    fmt = getattr(ns, "fmt", "text")
    if fmt == "csv" and ns.subcommand not in _CSV_CAPABLE:
        top.error(f"csv format not available for '{ns.subcommand}'")
    return RunConfig(
        subcommand=ns.subcommand,
        d=d,
        d_min=d_min,
        d_max=d_max,
        q=q,
        R=R,
        prec=getattr(ns, "prec", None),
        tol=tol,
        out=getattr(ns, "out", None),
        svg=getattr(ns, "svg", None),
        primes=getattr(ns, "primes", None),
        suite=getattr(ns, "suite", None),
        fmt=fmt,
    )


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    top = _build_parser()
    ns = top.parse_args(argv)
    return _config_from_ns(top, ns)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def run(cfg: RunConfig) -> Tuple[dict, int]:
    """Execute one config; returns (envelope, exit code)."""
    payload, status, text = _HANDLERS[cfg.subcommand](cfg)
    env = _envelope(cfg, payload, status)
    if cfg.fmt == "json":
        sys.stdout.write(emit_json(env))
    else:
        sys.stdout.write(text)
    return env, _EXIT_OK if status == "ok" else _EXIT_VERIFY


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else _EXIT_USAGE
        return code
    try:
        _, code = run(cfg)
        return code
    except DomainError as exc:
        print(f"gonchar: usage error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (NumericFailure, UnresolvedClassification) as exc:
        print(f"gonchar: numeric failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    except GoncharError as exc:
        # invariant breakage / inexact division behave as numeric failures
        print(f"gonchar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    except OSError as exc:
        print(f"gonchar: io error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
