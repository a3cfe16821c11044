"""Tests for region classification, on-circle angles, and the limit curve."""

import math
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gonchar.errors import DomainError, UnresolvedClassification
from gonchar.polycore import IntPoly
from gonchar.rootkit_complex import ComplexMP, ZeroDisk, all_zeros, gonchar_zero_set
from gonchar.zerogeom import (
    Census,
    Region,
    ThetaSolutionSet,
    census,
    classify,
    conjecture_probes,
    gamma_distance,
    max_gamma_distance,
    q_aux_poly,
    q_aux_variant,
    q_structure_check,
    theta_solutions,
)

# Region tallies (N1, N2, N3) per degree, with the two extra zeros at the
# circle intersection points appearing exactly at multiples of 6.
KNOWN_CENSUS = {
    1: (0, 0, 1),
    2: (1, 1, 1),
    3: (2, 2, 1),
    4: (1, 3, 3),
    5: (2, 4, 3),
    6: (3, 3, 3),
    7: (4, 4, 5),
    8: (5, 5, 5),
    9: (6, 6, 5),
    10: (5, 7, 7),
    11: (6, 8, 7),
    12: (7, 7, 7),
    42: (27, 27, 27),
}


def on_circle_formula(d):
    return 4 * ((d - 1) // 6 + (1 if d % 6 == 0 else 0)) + 1


def gamma_points(n=3000):
    """Dense sample of the limit curve, for a brute-force distance oracle."""
    pts = []
    s3h = math.sqrt(3) / 2
    # retained arc of C0: angles pi/3 .. 5pi/3 (Re <= 1/2)
    for k in range(n + 1):
        t = math.pi / 3 + (4 * math.pi / 3) * k / n
        pts.append(complex(math.cos(t), math.sin(t)))
    # retained arc of C1: 1 + e^{it}, t in (-2pi/3, 2pi/3) (Re >= 1/2)
    for k in range(n + 1):
        t = -2 * math.pi / 3 + (4 * math.pi / 3) * k / n
        pts.append(complex(1 + math.cos(t), math.sin(t)))
    # vertical chord
    for k in range(n + 1):
        pts.append(complex(0.5, -s3h + math.sqrt(3) * k / n))
    return pts


GAMMA_SAMPLES = gamma_points()


def brute_gamma_distance(z: complex) -> float:
    return min(abs(z - p) for p in GAMMA_SAMPLES)


def quadratic_roots(b, c):
    """Roots of z^2 + b z + c for real b, c, as exact-ish complex pairs."""
    disc = b * b - 4 * c
    if disc >= 0:
        r = math.sqrt(disc)
        return [complex((-b - r) / 2), complex((-b + r) / 2)]
    r = math.sqrt(-disc)
    return [complex(-b / 2, -r / 2), complex(-b / 2, r / 2)]


class TestThetaSolutions:
    def test_d2_only_pi(self):
        ts = theta_solutions(2)
        assert len(ts) == 1
        assert ts.thetas[0].exact == "pi"
        assert ts.total_on_circle == 1

    def test_d6_three_solutions(self):
        ts = theta_solutions(6)
        assert len(ts) == 3
        assert ts.total_on_circle == 5
        tags = [s.exact for s in ts]
        assert tags[0] == "pi/3" and tags[-1] == "pi"

    def test_d12_count_nine_total(self):
        ts = theta_solutions(12)
        assert len(ts) == 5
        assert ts.total_on_circle == 9

    @pytest.mark.parametrize("d", range(2, 62, 2))
    def test_count_formula(self, d):
        ts = theta_solutions(d)
        assert len(ts) == 2 * ((d - 1) // 6 + (1 if d % 6 == 0 else 0)) + 1
        assert ts.total_on_circle == on_circle_formula(d)
        # pi always, pi/3 exactly at multiples of six
        assert any(s.exact == "pi" for s in ts)
        assert any(s.exact == "pi/3" for s in ts) == (d % 6 == 0)

    def test_sorted_disjoint_and_in_range(self):
        ts = theta_solutions(36)
        vals = [s.value for s in ts.thetas]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        with gmpy2.context(precision=ts.working_precision):
            third = gmpy2.const_pi() / 3
            for s in ts.thetas:
                assert s.value + s.radius >= third - mpfr(2) ** -40
                assert s.value <= gmpy2.const_pi() + mpfr(2) ** -40
                # cos is decreasing on (0, pi): angles >= pi/3 mean Re <= 1/2
                assert gmpy2.cos(s.value - s.radius) <= mpfr(1) / 2 + s.radius + mpfr(2) ** -40

    def test_radii_honor_tol(self):
        tol = Fraction(1, 10**18)
        ts = theta_solutions(30, tol)
        for s in ts.thetas:
            assert float(s.radius) <= 1.1e-18 or s.exact is not None

    @pytest.mark.parametrize("d", [6, 12, 30])
    def test_residual_via_mpmath(self, d):
        # independent check: each interior angle nearly solves g = f
        import mpmath

        ts = theta_solutions(d)
        with mpmath.workdps(60):
            for s in ts.thetas:
                if s.exact is not None:
                    continue
                th = mpmath.mpf(str(s.value))
                g = (-1) ** (d // 2) * mpmath.cos((d - 1) * th / 2)
                f = mpmath.cos(th / 2) / (2 * mpmath.sin(th / 2)) ** d
                assert abs(g - f) < mpmath.mpf("1e-25")

    def test_matches_certified_zero_disks(self):
        # every angle's point e^{i theta} must live inside exactly one disk
        d = 18
        ts = theta_solutions(d)
        zs = gonchar_zero_set(d)
        prec = max(ts.working_precision, zs.working_precision)
        with gmpy2.context(precision=prec):
            for s in ts.thetas:
                x, y = gmpy2.cos(s.value), gmpy2.sin(s.value)
                hits = 0
                for disk in zs:
                    dx, dy = disk.value.re - x, disk.value.im - y
                    if gmpy2.sqrt(dx * dx + dy * dy) <= disk.radius + s.radius + mpfr(2) ** -60:
                        hits += 1
                assert hits == 1

    def test_rejects_bad_inputs(self):
        for bad in (0, 1, 3, 9):
            with pytest.raises(DomainError):
                theta_solutions(bad)
        with pytest.raises(DomainError):
            theta_solutions(4, Fraction(0))


class TestClassify:
    def test_minus_one_even_d_on_circle(self):
        ref = theta_solutions(4)
        assert classify(-1, 4, ref) is Region.OnC0

    def test_small_real_point_a2(self):
        assert classify(0.4, 5) is Region.A2

    def test_large_real_point_a3(self):
        assert classify((3 + math.sqrt(5)) / 2, 2) is Region.A3

    def test_intersection_point_needs_six(self):
        with gmpy2.context(precision=256):
            ip = ComplexMP(mpfr(1) / 2, gmpy2.sqrt(mpfr(3)) / 2)
        disk = ZeroDisk(ip, mpfr("1e-40"), 0)
        assert classify(disk, 6) is Region.IntersectionPoint
        assert classify(disk, 12) is Region.IntersectionPoint
        # without divisibility the point sits on every boundary at once
        with pytest.raises(UnresolvedClassification):
            classify(disk, 5)

    def test_straddling_disk_raises(self):
        fat = ZeroDisk(ComplexMP(mpfr("0.98"), mpfr(0)), mpfr("0.1"), 0)
        with pytest.raises(UnresolvedClassification):
            classify(fat, 7)

    def test_theta_ref_degree_mismatch(self):
        ref = theta_solutions(4)
        with pytest.raises(DomainError):
            classify(-1, 6, ref)

    def test_rejects_bad_d(self):
        with pytest.raises(DomainError):
            classify(0.4, 0)

    @given(
        st.floats(min_value=-2.5, max_value=3.5),
        st.floats(min_value=-2.5, max_value=2.5),
    )
    @settings(max_examples=120, deadline=None)
    def test_interior_points_classify_by_definition(self, x, y):
        m = 1e-6
        a0 = math.hypot(x, y)
        a1 = math.hypot(x - 1, y)
        in_a1 = x < 0.5 - m and a1 > 1 + m
        in_a2 = a0 < 1 - m and a1 < 1 - m
        in_a3 = x > 0.5 + m and a0 > 1 + m
        assume(in_a1 + in_a2 + in_a3 == 1)
        got = classify(complex(x, y), 7)
        want = Region.A1 if in_a1 else Region.A2 if in_a2 else Region.A3
        assert got is want


class TestCensus:
    @pytest.mark.parametrize("d", sorted(KNOWN_CENSUS))
    def test_published_rows(self, d):
        c = census(d)
        assert c.counts == KNOWN_CENSUS[d]
        assert c.has_intersection_pair == (d % 6 == 0)

    @pytest.mark.parametrize("d", range(1, 31))
    def test_sum_law_and_circle_counts(self, d):
        c = census(d)
        assert c.N1 + c.N2 + c.N3 + 2 * c.has_intersection_pair == 2 * d - 1
        if d % 2 == 0:
            assert c.on_circle == on_circle_formula(d)
            assert c.on_circle == c.N1 + 2 * c.has_intersection_pair
        else:
            assert c.on_circle == 0

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            census(0)
        with pytest.raises(DomainError):
            census(4, Fraction(-1, 10))


class TestGammaDistance:
    def test_exact_anchor_points(self):
        s3h = math.sqrt(3) / 2
        assert float(gamma_distance(complex(0.5, s3h))) == pytest.approx(0, abs=1e-30)
        assert float(gamma_distance(complex(0.5, -s3h))) == pytest.approx(0, abs=1e-30)
        assert gamma_distance(-1) == 0
        assert gamma_distance(Fraction(1, 2)) == 0
        assert gamma_distance(3) == 1

    def test_interior_values(self):
        # z = 1 is half a unit from the chord midpoint
        assert gamma_distance(1) == Fraction(1, 2)
        # the origin: 0.5 to the chord beats 1.0 to its own circle
        assert gamma_distance(0) == Fraction(1, 2)
        got = float(gamma_distance(complex(2.618033988749895, 0)))
        assert got == pytest.approx((3 + math.sqrt(5)) / 2 - 2, abs=1e-12)

    @given(
        st.floats(min_value=-3.0, max_value=4.0),
        st.floats(min_value=-3.0, max_value=3.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_against_sampled_curve(self, x, y):
        z = complex(x, y)
        brute = brute_gamma_distance(z)
        got = float(gamma_distance(z))
        # sampled minimum can only overshoot by half the sample spacing
        assert got <= brute + 1e-12
        assert got >= brute - 7e-4

    def test_conjugation_symmetry(self):
        for z in (complex(0.3, 1.7), complex(-1.2, 0.4), complex(2.2, 2.2)):
            assert gamma_distance(z) == gamma_distance(z.conjugate())


class TestMaxGammaDistance:
    def test_d1_exact(self):
        assert max_gamma_distance(1) == 1

    def test_d2_closed_form(self):
        got = max_gamma_distance(2)
        with gmpy2.context(precision=192):
            want = (3 + gmpy2.sqrt(mpfr(5))) / 2 - 2
            assert abs(got - want) < mpfr(2) ** -90

    def test_decreasing_trend(self):
        vals = [float(max_gamma_distance(d)) for d in (5, 10, 20, 40)]
        assert vals == sorted(vals, reverse=True)
        assert vals[-1] < vals[1]  # d=40 strictly below d=10

    def test_rejects_bad_d(self):
        with pytest.raises(DomainError):
            max_gamma_distance(0)


class TestConjectureProbes:
    def test_d4_counts(self):
        p = conjecture_probes(4)
        assert p.all_classified
        assert p.census.counts == (1, 3, 3)
        assert p.odd_alternation is None and p.a3_outside_c1 is None

    def test_d7_alternation(self):
        p = conjecture_probes(7)
        assert p.all_classified
        assert p.odd_alternation is True
        assert p.a3_outside_c1 is True

    def test_d2_turning_vacuous(self):
        p = conjecture_probes(2)
        assert p.a2_turning_consistent is True

    @pytest.mark.parametrize("d", [1, 3, 9, 11, 15])
    def test_odd_degrees_alternation_holds(self, d):
        p = conjecture_probes(d)
        assert p.all_classified
        assert p.odd_alternation is True
        assert p.a3_outside_c1 is True

    def test_turning_probe_reports_both_ways(self):
        # the turning reading of the middle branch is a finding, not a law:
        # at d=15 the outermost A2 zeros genuinely bend the chain backward
        assert conjecture_probes(13).a2_turning_consistent is True
        assert conjecture_probes(15).a2_turning_consistent is False

    def test_rejects_bad_d(self):
        with pytest.raises(DomainError):
            conjecture_probes(0)


class TestQStructure:
    def test_aux_poly_d3_literal(self):
        assert q_aux_poly(3) == IntPoly((2, 4, 0, 4, 2))
        assert q_aux_variant(3) == IntPoly((2, 0, 0, 0, 2))

    def test_d3_factorization_oracle(self):
        # z^4 + 2z^3 + 2z + 1 = (z^2 + (1+sqrt3) z + 1)(z^2 + (1-sqrt3) z + 1)
        s3 = math.sqrt(3)
        oracle = quadratic_roots(1 + s3, 1) + quadratic_roots(1 - s3, 1)
        neg = [r for r in oracle if r.imag == 0]
        circ = [r for r in oracle if r.imag != 0]
        assert len(neg) == 2 and all(r.real < 0 for r in neg)
        assert all(abs(abs(r) - 1) < 1e-12 for r in circ)

        zs = all_zeros(q_aux_poly(3))
        centers = [complex(disk.value) for disk in zs]
        for r in oracle:
            assert min(abs(r - c) for c in centers) < 1e-9

        rep = q_structure_check(3)
        assert rep.real_roots_ok and rep.on_circle_ok
        assert rep.on_circle_count == 2

    def test_tan_counts_small(self):
        assert q_structure_check(4).tan_solution_count == 2
        assert q_structure_check(5).tan_solution_count == 4

    @pytest.mark.parametrize("d", range(3, 15))
    def test_structure_holds(self, d):
        rep = q_structure_check(d)
        assert rep.real_roots_ok
        assert rep.on_circle_ok
        assert rep.on_circle_count == (d - 2 if d % 2 == 0 else d - 1)
        assert rep.tan_count_ok
        assert rep.variant_on_circle is True
        assert rep.ok

    def test_variant_skippable(self):
        rep = q_structure_check(8, check_variant=False)
        assert rep.variant_on_circle is None
        assert rep.ok  # base checks still pass

    def test_rejects_bad_d(self):
        with pytest.raises(DomainError):
            q_structure_check(2)
        with pytest.raises(DomainError):
            q_aux_poly(1)
