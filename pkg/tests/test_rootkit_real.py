"""Tests for the certified real-root machinery.

Reference digits come from independent oracles kept in this file: a
pure-Fraction bisection that evaluates by direct power sums (no shared
Horner code), integer square roots for the golden ratio, and pinned
strings for the plastic number.  Certification claims are checked the
hard way — exact integer sign evaluations at the reported disk edges.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gonchar.errors import DomainError
from gonchar.polycore import (
    IntPoly,
    RatQ,
    derivative,
    eval_exact,
    exact_gcd,
    gonchar_poly,
    gonchar_poly_q,
)
from gonchar.rootkit_real import (
    Interval,
    RootApprox,
    asymptotic_estimate,
    cauchy_bound,
    critical_distance,
    eval_sign,
    isolate_real_roots,
    refine_root,
    residual_scan,
    rho,
    squarefree_part,
    sturm_count,
    xi_monotone_check,
)
from gonchar._mp import to_fraction


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def power_eval(coeffs, x):
    """Direct power-sum evaluation; deliberately not Horner."""
    return sum(Fraction(c) * Fraction(x) ** k for k, c in enumerate(coeffs))


def bisect_root(coeffs, lo, hi, steps=130):
    """Plain Fraction bisection; returns an interval of width (hi-lo)/2^steps."""
    lo, hi = Fraction(lo), Fraction(hi)
    vlo = power_eval(coeffs, lo)
    vhi = power_eval(coeffs, hi)
    assert vlo * vhi < 0, "oracle bracket must straddle"
    for _ in range(steps):
        mid = (lo + hi) / 2
        v = power_eval(coeffs, mid)
        if v == 0:
            return mid, mid
        if (v < 0) == (vlo < 0):
            lo = mid
        else:
            hi = mid
    return lo, hi


def golden_large_root(digits=40):
    # (3 + sqrt 5)/2 via integer square root
    s5 = math.isqrt(5 * 10 ** (2 * digits))
    return Fraction(3 * 10**digits + s5, 2 * 10**digits)


# digits produced by the oracles above (160 bisection steps / isqrt at 40
# digits); kept literal so a regression is loud
GOLDEN_R = Fraction("2.61803398874989484820458683436563811772")
PLASTIC = Fraction("1.3247179572447460259609088544780973")
G3_ROOT = Fraction("2.43183161802976348507374594995904256846")

G2 = gonchar_poly(2)
G3 = gonchar_poly(3)
G4 = gonchar_poly(4)
G5 = gonchar_poly(5)


def enclosure_contains(res: RootApprox, target: Fraction, slack: Fraction) -> bool:
    return abs(to_fraction(res.value) - target) <= to_fraction(res.radius) + slack


rationals = st.fractions(
    min_value=-50, max_value=50, max_denominator=40
)
int_polys = st.lists(
    st.integers(min_value=-30, max_value=30), min_size=1, max_size=8
).map(lambda cs: IntPoly(tuple(cs)))


# ---------------------------------------------------------------------------
# Signs, squarefree parts, bounds
# ---------------------------------------------------------------------------


class TestEvalSign:
    def test_known_signs(self):
        assert eval_sign(G2, 0) == 1
        assert eval_sign(G2, 1) == -1
        assert eval_sign(G2, 3) == 1
        assert eval_sign(G2, -1) == 0

    def test_rational_point(self):
        # G(2; 1/3) > 0 and G(2; 1/2) < 0: the small root sits between
        assert eval_sign(G2, Fraction(1, 3)) == 1
        assert eval_sign(G2, Fraction(1, 2)) == -1

    @given(p=int_polys, x=rationals)
    @settings(max_examples=120)
    def test_matches_exact_evaluation(self, p, x):
        v = eval_exact(p, RatQ(x))
        assert eval_sign(p, x) == (v > 0) - (v < 0)

    def test_zero_polynomial(self):
        assert eval_sign(IntPoly(()), Fraction(7, 3)) == 0


class TestSquarefreePart:
    def test_repeated_factor_collapses(self):
        p = IntPoly((-1, 1)) * IntPoly((-1, 1)) * IntPoly((2, 1))
        assert squarefree_part(p) == IntPoly((-1, 1)) * IntPoly((2, 1))

    def test_squarefree_fixed_point(self):
        assert squarefree_part(G2) == G2

    def test_content_and_sign_normalized(self):
        p = IntPoly((-6, 6)) * IntPoly((-6, 6)) * -2
        assert squarefree_part(p) == IntPoly((-1, 1))

    @given(p=int_polys.filter(lambda p: p.degree >= 1))
    @settings(max_examples=60)
    def test_result_is_squarefree(self, p):
        sf = squarefree_part(p)
        if sf.degree >= 1:
            assert exact_gcd(sf, derivative(sf)).degree == 0

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            squarefree_part(IntPoly(()))


class TestCauchyBound:
    def test_formula(self):
        assert cauchy_bound(IntPoly((1, -3, 1))) == 4
        assert cauchy_bound(IntPoly((-10, 0, 2))) == 6

    def test_encloses_all_real_roots(self):
        for d in (2, 3, 6, 9):
            p = gonchar_poly(d)
            b = Fraction(cauchy_bound(p))
            assert sturm_count(p, -b, b) == sturm_count(p, -b - 10**6, b + 10**6)


# ---------------------------------------------------------------------------
# Sturm counting
# ---------------------------------------------------------------------------


class TestSturmCount:
    def test_g2_large_interval(self):
        assert sturm_count(G2, 2, 3) == 1

    def test_g3_nothing_below_two(self):
        assert sturm_count(G3, -(10**6), 2) == 0

    def test_g2_small_interval(self):
        assert sturm_count(G2, Fraction(1, 3), Fraction(1, 2)) == 1

    def test_half_open_semantics(self):
        # (a, b] : a root at b counts, a root at a does not
        g1 = gonchar_poly(1)  # z - 3
        assert sturm_count(g1, 2, 3) == 1
        assert sturm_count(g1, 3, 5) == 0

    def test_multiplicity_collapsed(self):
        p = IntPoly((-1, 1)) * IntPoly((-1, 1)) * IntPoly((-2, 1))
        assert sturm_count(p, 0, 3) == 2

    def test_zero_polynomial_rejected(self):
        with pytest.raises(DomainError):
            sturm_count(IntPoly(()), 0, 1)

    def test_agrees_with_isolation(self):
        for d in range(1, 13):
            p = gonchar_poly(d)
            b = Fraction(cauchy_bound(p))
            ivs, exacts = isolate_real_roots(p)
            assert sturm_count(p, -b, b) == len(ivs) + len(exacts)

    @given(
        roots=st.lists(
            st.integers(min_value=-9, max_value=9), min_size=1, max_size=5, unique=True
        )
    )
    @settings(max_examples=60)
    def test_counts_distinct_integer_roots(self, roots):
        p = IntPoly((1,))
        for r in roots:
            p = p * IntPoly((-r, 1))
        lo, hi = min(roots) - 1, max(roots)
        assert sturm_count(p, lo, hi) == len(roots)


# ---------------------------------------------------------------------------
# Isolation
# ---------------------------------------------------------------------------


class TestIsolateRealRoots:
    def test_g4_structure(self):
        ivs, exacts = isolate_real_roots(G4)
        assert exacts == [RatQ(-1)]
        assert len(ivs) == 2
        small, large = ivs
        assert Fraction(1, 3) < small.lo and small.hi < Fraction(1, 2)
        assert 2 < large.lo and large.hi < 3

    def test_g5_single_interval(self):
        ivs, exacts = isolate_real_roots(G5)
        assert exacts == []
        assert len(ivs) == 1
        assert 2 < ivs[0].lo and ivs[0].hi <= 3

    def test_g1_exact(self):
        ivs, exacts = isolate_real_roots(gonchar_poly(1))
        assert ivs == [] and exacts == [RatQ(3)]

    def test_rational_roots_reported_exactly(self):
        p = IntPoly((-1, 2)) * IntPoly((-2, 1)) * IntPoly((1, 0, 1))
        ivs, exacts = isolate_real_roots(p)
        assert ivs == []
        assert exacts == [RatQ(1, 2), RatQ(2)]

    def test_endpoints_straddle(self):
        for d in (3, 4, 7, 10):
            p = gonchar_poly(d)
            for iv in isolate_real_roots(p)[0]:
                assert eval_sign(p, iv.lo) * eval_sign(p, iv.hi) == -1

    def test_disjoint_and_sorted(self):
        ivs, _ = isolate_real_roots(gonchar_poly(12))
        for a, b in zip(ivs, ivs[1:]):
            assert a.hi < b.lo

    def test_parity_structure_moderate_degrees(self):
        # odd: one simple real root; even: -1 plus a reciprocal pair
        for d in (7, 15, 31):
            ivs, exacts = isolate_real_roots(gonchar_poly(d))
            assert exacts == [] and len(ivs) == 1
        for d in (6, 14, 30):
            ivs, exacts = isolate_real_roots(gonchar_poly(d))
            assert exacts == [RatQ(-1)] and len(ivs) == 2

    def test_multiplicity_does_not_duplicate(self):
        p = G2 * G2
        ivs, exacts = isolate_real_roots(p)
        assert exacts == [RatQ(-1)]
        assert len(ivs) == 2

    def test_zero_rejected_constant_empty(self):
        with pytest.raises(DomainError):
            isolate_real_roots(IntPoly(()))
        assert isolate_real_roots(IntPoly((5,))) == ([], [])

    @given(
        roots=st.lists(
            st.tuples(
                st.integers(min_value=-8, max_value=8),
                st.integers(min_value=1, max_value=4),
            ),
            min_size=1,
            max_size=4,
        )
    )
    @settings(max_examples=50)
    def test_recovers_constructed_rational_roots(self, roots):
        vals = sorted({Fraction(u, v) for u, v in roots})
        p = IntPoly((1,))
        for r in vals:
            p = p * IntPoly((-r.numerator, r.denominator))
        ivs, exacts = isolate_real_roots(p)
        covered = list(exacts)
        for iv in ivs:
            inside = [r for r in vals if r in iv]
            assert len(inside) == 1
            covered.append(inside[0])
        assert sorted(covered) == vals


# ---------------------------------------------------------------------------
# Refinement
# ---------------------------------------------------------------------------


class TestRefineRoot:
    def test_golden_digits(self):
        res = refine_root(G2, Interval(RatQ(2), RatQ(3)), Fraction(1, 10**30))
        assert to_fraction(res.radius) <= Fraction(1, 10**30)
        assert enclosure_contains(res, GOLDEN_R, Fraction(1, 10**36))
        assert enclosure_contains(res, golden_large_root(45), Fraction(1, 10**40))

    def test_plastic_digits_on_cubic_factor(self):
        cubic = IntPoly((-1, 2, -3, 1))  # z^3 - 3z^2 + 2z - 1, divides G(4)
        res = refine_root(cubic, Interval(RatQ(2), RatQ(3)), Fraction(1, 10**30))
        assert enclosure_contains(res, PLASTIC + 1, Fraction(1, 10**30))

    def test_g3_against_bisection_oracle(self):
        lo, hi = bisect_root(G3.coeffs, 2, 3)
        res = refine_root(G3, Interval(RatQ(2), RatQ(3)), Fraction(1, 10**12))
        assert lo - to_fraction(res.radius) <= to_fraction(res.value) <= hi + to_fraction(res.radius)
        assert enclosure_contains(res, G3_ROOT, Fraction(1, 10**36))

    def test_certified_disk_straddles(self):
        # the reported disk must carry an exact sign change
        for d in (2, 3, 5, 8):
            p = gonchar_poly(d)
            iv = isolate_real_roots(p)[0][-1]
            res = refine_root(p, iv, Fraction(1, 10**25))
            x = to_fraction(res.value)
            r = to_fraction(res.radius)
            assert eval_sign(p, x - r) * eval_sign(p, x + r) == -1

    def test_exact_hit(self):
        res = refine_root(IntPoly((-4, 0, 1)), Interval(RatQ(1), RatQ(3)), Fraction(1, 10**20))
        assert res.exact == 2
        assert res.radius == 0

    def test_tight_tolerance(self):
        res = refine_root(G2, Interval(RatQ(2), RatQ(3)), Fraction(1, 10**120))
        assert to_fraction(res.radius) <= Fraction(1, 10**120)
        x = to_fraction(res.value)
        # residual of the minimal polynomial must shrink with the radius
        assert abs(power_eval((1, -3, 1), x)) < Fraction(1, 10**118)

    def test_requires_sign_change(self):
        with pytest.raises(DomainError):
            refine_root(G2, Interval(RatQ(4), RatQ(5)), Fraction(1, 10**10))


# ---------------------------------------------------------------------------
# Critical distance and friends
# ---------------------------------------------------------------------------


class TestCriticalDistance:
    def test_d1_exact_values(self):
        for q, want in ((1, 3), (2, 5), (5, 11), (Fraction(1, 2), 2), (Fraction(3, 4), Fraction(5, 2))):
            res = critical_distance(1, q)
            assert res.exact == want
            assert res.radius == 0

    def test_golden_case(self):
        res = critical_distance(2, 1, Fraction(1, 10**30))
        assert enclosure_contains(res, GOLDEN_R, Fraction(1, 10**36))

    def test_value_is_bracketed_by_instance_poly(self):
        for d, q in ((3, 1), (6, Fraction(1, 2)), (9, 3)):
            inst = gonchar_poly_q(d, q)
            res = critical_distance(d, q, Fraction(1, 10**25))
            x = to_fraction(res.value)
            r = to_fraction(res.radius)
            assert eval_sign(inst.poly, x - r) * eval_sign(inst.poly, x + r) == -1

    def test_descartes_and_sturm_routes_agree(self):
        for d in range(2, 11):
            a = critical_distance(d, 1, Fraction(1, 10**20), certify="descartes")
            b = critical_distance(d, 1, Fraction(1, 10**20), certify="sturm")
            gap = abs(to_fraction(a.value) - to_fraction(b.value))
            assert gap <= to_fraction(a.radius) + to_fraction(b.radius)
        for d, q in ((2, Fraction(1, 2)), (5, 3), (8, Fraction(7, 4))):
            a = critical_distance(d, q, Fraction(1, 10**20), certify="descartes")
            b = critical_distance(d, q, Fraction(1, 10**20), certify="sturm")
            gap = abs(to_fraction(a.value) - to_fraction(b.value))
            assert gap <= to_fraction(a.radius) + to_fraction(b.radius)

    def test_r1_window_spot_checks(self):
        for d in (2, 25, 137, 200):
            res = critical_distance(d, 1, Fraction(1, 10**15))
            x = to_fraction(res.value)
            r = to_fraction(res.radius)
            assert x - r > 2
            assert x + r <= 3

    def test_uniqueness_grid(self):
        # unique zero beyond 1 for a rectangle of instances
        for d in range(1, 26):
            for q in (Fraction(1, 2), 1, 2, 5):
                inst = gonchar_poly_q(d, q)
                b = 3 + math.ceil(q)
                while eval_sign(inst.poly, b) <= 0:
                    b *= 2
                assert sturm_count(inst.poly, 1, b) == 1
        for q in (1, 5):
            inst = gonchar_poly_q(60, q)
            assert sturm_count(inst.poly, 1, 3 + math.ceil(q)) == 1

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            critical_distance(0, 1)
        with pytest.raises(DomainError):
            critical_distance(3, 0)
        with pytest.raises(DomainError):
            critical_distance(3, Fraction(-1, 2))


class TestReciprocityOfRoots:
    def test_small_times_large_is_one(self):
        # even-degree instances are self-reciprocal: roots pair as r, 1/r
        for d in (2, 4, 6, 10):
            p = gonchar_poly(d)
            small_iv = isolate_real_roots(p)[0][0]
            small = refine_root(p, small_iv, Fraction(1, 10**25))
            large = critical_distance(d, 1, Fraction(1, 10**25))
            s, rs = to_fraction(small.value), to_fraction(small.radius)
            t, rt = to_fraction(large.value), to_fraction(large.radius)
            assert (s - rs) * (t - rt) <= 1 <= (s + rs) * (t + rt)


class TestRho:
    def test_d1_exact(self):
        res = rho(1)
        assert res.exact == 2
        assert res.radius == 0

    def test_golden(self):
        res = rho(2, Fraction(1, 10**20))
        assert enclosure_contains(res, GOLDEN_R - 1, Fraction(1, 10**20))

    def test_plastic(self):
        res = rho(4, Fraction(1, 10**30))
        assert enclosure_contains(res, PLASTIC, Fraction(1, 10**30))
        # minimal polynomial of the plastic number: x^3 - x - 1
        x = to_fraction(res.value)
        assert abs(power_eval((-1, -1, 0, 1), x)) < Fraction(1, 10**28)


class TestAsymptoticEstimate:
    def test_exact_at_q_one_third(self):
        assert asymptotic_estimate(17, Fraction(1, 3)) == 2

    def test_reference_digits(self):
        import gmpy2

        assert format(asymptotic_estimate(100, 1), ".10f") == "2.0109861229"
        assert format(asymptotic_estimate(50, 3), ".10f") == "2.0439444915"

    def test_matches_double_precision_log(self):
        est = float(asymptotic_estimate(7, Fraction(5, 2)))
        assert abs(est - (2 + math.log(7.5) / 7)) < 1e-14

    def test_invalid(self):
        with pytest.raises(DomainError):
            asymptotic_estimate(0, 1)
        with pytest.raises(DomainError):
            asymptotic_estimate(3, 0)


class TestResidualScan:
    def test_rows_and_residual_law(self):
        rows = residual_scan(1, [50, 100])
        assert [r.d for r in rows] == [50, 100]
        for row in rows:
            assert float(row.residual) > 0
            assert 0.9 < float(row.scaled) < 1.0

    def test_q_one_third_residual_is_r_minus_two(self):
        (row,) = residual_scan(Fraction(1, 3), [10])
        assert abs(to_fraction(row.residual) - (to_fraction(row.r_q) - 2)) < Fraction(1, 10**30)

    def test_d2_arithmetic(self):
        (row,) = residual_scan(1, [2])
        want = float(GOLDEN_R) - (2 + math.log(3) / 2)
        assert abs(float(row.residual) - want) < 1e-12

    def test_requires_d_at_least_two(self):
        with pytest.raises(DomainError):
            residual_scan(1, [1, 2])


class TestXiMonotoneCheck:
    def test_spec_triple(self):
        ok, rows = xi_monotone_check([1, 2, 4])
        assert ok
        vals = [to_fraction(r.value) for _, r in rows]
        assert abs(vals[0] - 3) == 0
        assert abs(vals[1] - GOLDEN_R) < Fraction(1, 10**25)
        assert abs(vals[2] - (PLASTIC + 1)) < Fraction(1, 10**25)

    def test_single_element(self):
        ok, rows = xi_monotone_check([7])
        assert ok and len(rows) == 1

    def test_prefix_strictly_decreasing(self):
        ok, rows = xi_monotone_check(list(range(2, 31)), Fraction(1, 10**15))
        assert ok
        assert len(rows) == 29

    def test_invalid_lists(self):
        with pytest.raises(DomainError):
            xi_monotone_check([])
        with pytest.raises(DomainError):
            xi_monotone_check([3, 3])
        with pytest.raises(DomainError):
            xi_monotone_check([5, 2])
        with pytest.raises(DomainError):
            xi_monotone_check([0, 4])


class TestDataTypes:
    def test_interval_validation(self):
        with pytest.raises(DomainError):
            Interval(RatQ(2), RatQ(2))
        with pytest.raises(DomainError):
            Interval(RatQ(3), RatQ(1))

    def test_interval_width_and_contains(self):
        iv = Interval(RatQ(1, 2), RatQ(3, 4))
        assert iv.width == Fraction(1, 4)
        assert Fraction(2, 3) in iv
        assert Fraction(1, 2) not in iv

    def test_root_approx_exact_slot(self):
        res = critical_distance(1, 1)
        assert isinstance(res, RootApprox)
        assert res.exact == 3 and res.value == 3
