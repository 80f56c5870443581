"""Unit tests for section norms, predicates, enumeration and count bounds."""

import math
from fractions import Fraction

import numpy as np
import pytest

from arithline.charfun import Params, phi, theta_interval
from arithline.errors import CapError, DomainError, EmptyError
from arithline.numerics import integrate_adaptive, Tolerance
from arithline.sections import (
    EllipsoidSpec,
    IntegerSection,
    MonomialBasisElement,
    ellipsoid_lattice_count,
    ellipsoid_spec,
    h0_count_l2,
    h0_enumerate,
    h0_monomial_span,
    h0_nonzero,
    inner_product,
    inner_product_quadrature,
    lattice_count_bounds,
    monomial_l2_norm_sq,
    monomial_sup_norm_sq,
    radial_integral,
    radial_integral_quadrature,
    scaled_theta_integers,
    section_l2_norm_sq,
    section_product,
    section_sup_norm_sq,
)


def _monomial_section(n, i, c=1):
    vec = [0] * (n + 1)
    vec[i] = c
    return IntegerSection(n, tuple(vec))


class TestMonomialNorms:
    def test_sup_extreme_exponents(self):
        p = Params(1.7, 0.6)
        n = 9
        assert monomial_sup_norm_sq(p, MonomialBasisElement(n, 0)) == pytest.approx(
            1.7**-n, rel=1e-12
        )
        assert monomial_sup_norm_sq(p, MonomialBasisElement(n, n)) == pytest.approx(
            0.6**-n, rel=1e-12
        )

    def test_sup_on_boundary_pair(self):
        """On a + b = 1 the monomial at i = n*b has sup norm exactly 1."""
        p = Params(0.75, 0.25)
        for n in (4, 8):
            i = n // 4
            assert monomial_sup_norm_sq(p, MonomialBasisElement(n, i)) == pytest.approx(
                1.0, rel=1e-12
            )

    def test_l2_simple_value(self):
        assert monomial_l2_norm_sq(Params(1, 7), MonomialBasisElement(1, 0)) == Fraction(1, 2)

    def test_l2_diagonal_value(self):
        assert monomial_l2_norm_sq(Params(1, 1), MonomialBasisElement(2, 1)) == Fraction(1, 6)
        quad = radial_integral_quadrature(Params(1, 1), 1, 2)
        assert quad == pytest.approx(1.0 / 6.0, rel=1e-9)

    def test_l2_exact_matches_float(self):
        p_exact = Params(Fraction(1, 2), Fraction(3, 2))
        p_float = Params(0.5, 1.5)
        for n in (3, 17):
            for i in range(n + 1):
                ex = monomial_l2_norm_sq(p_exact, MonomialBasisElement(n, i))
                fl = monomial_l2_norm_sq(p_float, MonomialBasisElement(n, i))
                assert fl == pytest.approx(float(ex), rel=1e-12)


class TestRadialIntegral:
    def test_base_case(self):
        assert radial_integral(Params(2.3, 1.0), 0, 0) == 1.0
        assert radial_integral(Params(Fraction(7, 3), 1), 0, 0) == 1

    def test_diagonal_closed_form(self):
        p = Params(Fraction(1, 3), Fraction(5, 2))
        for l in range(6):
            assert radial_integral(p, l, l) == Fraction(1, l + 1) / Fraction(5, 2) ** l

    def test_recurrence_value(self):
        assert radial_integral(Params(1, 1), 0, 2) == Fraction(1, 3)
        assert radial_integral_quadrature(Params(1, 1), 0, 2) == pytest.approx(
            1.0 / 3.0, rel=1e-9
        )

    def test_against_quadrature_random(self):
        rng = np.random.default_rng(13)
        for _ in range(25):
            a, b = np.exp(rng.uniform(-0.7, 0.7, size=2))
            l = int(rng.integers(0, 12))
            k = int(rng.integers(0, l + 1))
            p = Params(a, b)
            assert radial_integral_quadrature(p, k, l) == pytest.approx(
                radial_integral(p, k, l), rel=1e-8
            )

    def test_rejects_bad_order(self):
        with pytest.raises(DomainError):
            radial_integral(Params(1, 1), 3, 2)


class TestInnerProduct:
    def test_off_diagonal_zero(self):
        p = Params(1, 1)
        assert inner_product(p, MonomialBasisElement(1, 0), MonomialBasisElement(1, 1)) == 0.0
        assert inner_product(p, MonomialBasisElement(3, 1), MonomialBasisElement(3, 2)) == 0.0

    def test_diagonal(self):
        p = Params(0.8, 1.1)
        m = MonomialBasisElement(4, 2)
        assert inner_product(p, m, m) == monomial_l2_norm_sq(p, m)

    def test_level_mismatch(self):
        with pytest.raises(DomainError):
            inner_product(Params(1, 1), MonomialBasisElement(2, 0), MonomialBasisElement(3, 0))

    def test_numeric_orthogonality(self):
        """The full double integral vanishes off the diagonal."""
        p = Params(1.3, 0.4)
        v = inner_product_quadrature(p, MonomialBasisElement(5, 1), MonomialBasisElement(5, 4))
        assert abs(v) < 1e-12
        diag = inner_product_quadrature(p, MonomialBasisElement(5, 2), MonomialBasisElement(5, 2))
        assert diag.real == pytest.approx(
            float(monomial_l2_norm_sq(p, MonomialBasisElement(5, 2))), rel=1e-8
        )
        assert abs(diag.imag) < 1e-15


class TestSectionNorms:
    def test_zero_section_l2(self):
        assert section_l2_norm_sq(Params(1, 1), IntegerSection(2, (0, 0, 0))) == 0

    def test_single_monomial(self):
        p = Params(1.2, 0.9)
        s = _monomial_section(3, 2)
        assert float(section_l2_norm_sq(p, s)) == pytest.approx(
            float(monomial_l2_norm_sq(p, MonomialBasisElement(3, 2))), rel=1e-14
        )

    def test_two_term_l2_against_direct_quadrature(self):
        """|z^0 + z^-1|^2 integrated directly over the sphere gives 1 at (1,1)."""
        p = Params(1, 1)
        s = IntegerSection(1, (1, 1))
        assert float(section_l2_norm_sq(p, s)) == pytest.approx(1.0, rel=1e-14)

        # independent oracle: angular trapezoid x radial quadrature of
        # |c0 z + c1|^2 / (|z|^2+1)^3  (density included), r = u/(1-u)
        npts = 64
        ts = 2.0 * math.pi * np.arange(npts) / npts

        def radial(u):
            r = u / (1.0 - u)
            sq = r + 2.0 * math.sqrt(r) * np.cos(ts).mean() + 1.0
            # angular mean of |sqrt(r) e^(it) + 1|^2 = r + 1
            return (r + 1.0) / (r + 1.0) ** 3 / (1.0 - u) ** 2

        val = integrate_adaptive(radial, 0.0, 1.0, Tolerance(abs_tol=1e-12, rel_tol=1e-11))
        assert val == pytest.approx(1.0, abs=1e-9)

    def test_sup_of_two_term_section(self):
        """sup of |w + 1|^2/(|w|^2 + 1) over the sphere is 2, attained at w = 1."""
        p = Params(1, 1)
        s = IntegerSection(1, (1, 1))
        # 1D calculus oracle on the real-axis slice: d/dw [(w+1)^2/(w^2+1)] = 0
        # at w = 1 with value 2; a dense scan confirms no larger value.
        w = np.linspace(-50.0, 50.0, 200_001)
        slice_max = np.max((w + 1.0) ** 2 / (w * w + 1.0))
        assert slice_max <= 2.0 + 1e-9
        assert section_sup_norm_sq(p, s) == pytest.approx(2.0, rel=1e-10)

    def test_sup_matches_monomial_closed_form(self):
        p = Params(0.8, 1.9)
        for n, i in [(1, 0), (4, 2), (12, 5), (20, 19)]:
            assert section_sup_norm_sq(p, _monomial_section(n, i)) == pytest.approx(
                monomial_sup_norm_sq(p, MonomialBasisElement(n, i)), rel=1e-8
            )

    def test_sup_rotation_invariance(self):
        """Rotating z by pi multiplies c_i by (-1)^(n-i) and keeps the norm."""
        p = Params(1.1, 0.7)
        s = IntegerSection(3, (1, -2, 0, 1))
        rotated = IntegerSection(3, tuple(c * (-1) ** (3 - i) for i, c in enumerate(s.coeffs)))
        assert section_sup_norm_sq(p, rotated) == pytest.approx(
            section_sup_norm_sq(p, s), rel=1e-9
        )

    def test_zero_section_sup_rejected(self):
        with pytest.raises(DomainError):
            section_sup_norm_sq(Params(1, 1), IntegerSection(1, (0, 0)))

    def test_l2_below_sup_randomized(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            a, b = np.exp(rng.uniform(-1, 1, size=2))
            n = int(rng.integers(1, 7))
            coeffs = tuple(int(c) for c in rng.integers(-3, 4, size=n + 1))
            s = IntegerSection(n, coeffs)
            if s.is_zero:
                continue
            p = Params(a, b)
            assert float(section_l2_norm_sq(p, s)) <= section_sup_norm_sq(p, s) * (
                1.0 + 1e-9
            )


class TestH0Predicates:
    def test_full_window_always_nonzero(self):
        p = Params(1, 1)
        for n in (1, 2, 5):
            assert h0_nonzero(p, n)
            assert h0_monomial_span(p, n) == list(range(n + 1))

    def test_boundary_point_parity(self):
        p = Params(Fraction(1, 2), Fraction(1, 2))
        assert h0_nonzero(p, 2)
        assert not h0_nonzero(p, 3)
        assert h0_monomial_span(p, 2) == [1]

    def test_empty_window(self):
        p = Params(0.3, 0.3)
        for n in (1, 4, 9):
            assert not h0_nonzero(p, n)
        with pytest.raises(EmptyError):
            h0_monomial_span(p, 2)

    def test_span_matches_pointwise_signs(self):
        """At (0.6, 0.6), n = 5 the span is exactly the i with phi(i/5) >= 0."""
        p = Params(0.6, 0.6)
        expected = [i for i in range(6) if phi(p, i / 5.0) >= 0.0]
        assert h0_monomial_span(p, 5) == expected == [2, 3]

    def test_float_boundary_point(self):
        p = Params(0.5, 0.5)
        assert scaled_theta_integers(p, 2) == [1]
        assert scaled_theta_integers(p, 3) == []


class TestEnumeration:
    def test_boundary_pair_even_levels(self):
        p = Params(Fraction(1, 2), Fraction(1, 2))
        res = h0_enumerate(p, 2, norm="sup")
        assert [s.coeffs for s in res.sections] == [(0, -1, 0), (0, 0, 0), (0, 1, 0)]
        res = h0_enumerate(p, 4, norm="sup")
        assert [s.coeffs for s in res.sections] == [
            (0, 0, -1, 0, 0),
            (0, 0, 0, 0, 0),
            (0, 0, 1, 0, 0),
        ]

    def test_boundary_pair_odd_levels(self):
        p = Params(Fraction(1, 2), Fraction(1, 2))
        for n in (1, 3):
            res = h0_enumerate(p, n, norm="sup")
            assert [s.coeffs for s in res.sections] == [tuple([0] * (n + 1))]

    def test_empty_window_only_zero(self):
        res = h0_enumerate(Params(Fraction(3, 10), Fraction(3, 10)), 2, norm="sup")
        assert [s.coeffs for s in res.sections] == [(0, 0, 0)]

    def test_l2_ball_tiny(self):
        """(1,1), n=1: all (c0, c1) with (c0^2 + c1^2)/2 <= 1, nine in total."""
        res = h0_enumerate(Params(1, 1), 1, norm="l2")
        assert len(res) == 9
        assert set(s.coeffs for s in res.sections) == {
            (i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)
        }

    def test_cap(self):
        with pytest.raises(CapError):
            h0_enumerate(Params(1, 1), 7, norm="l2")

    def test_sup_subset_of_l2(self):
        for p in (Params(1, 1), Params(Fraction(3, 5), Fraction(3, 5))):
            for n in (1, 2, 3):
                sup_res = h0_enumerate(p, n, norm="sup")
                l2_res = h0_enumerate(p, n, norm="l2")
                assert set(s.coeffs for s in sup_res.sections) <= set(
                    s.coeffs for s in l2_res.sections
                )

    def test_monomial_mode_matches_full_restriction(self):
        for p in (Params(1, 1), Params(Fraction(1, 2), Fraction(1, 2))):
            for n in (1, 2, 3):
                full = h0_enumerate(p, n, norm="sup")
                mono = h0_enumerate(p, n, norm="sup", candidates="monomials")
                restricted = sorted(
                    s.coeffs
                    for s in full.sections
                    if s.is_zero or s.as_monomial() is not None
                )
                assert sorted(s.coeffs for s in mono.sections) == restricted

    def test_monomials_match_span(self):
        p = Params(1, 1)
        res = h0_enumerate(p, 3, norm="sup")
        momo = {s.as_monomial()[0] for s in res.sections if not s.is_zero}
        assert momo == set(h0_monomial_span(p, 3))

    def test_power_stability(self):
        """Squares of small sections stay small at the doubled level."""
        p = Params(1, 1)
        for s in h0_enumerate(p, 3, norm="sup").sections:
            if s.is_zero:
                continue
            sq = section_product(s, s)
            assert section_sup_norm_sq(p, sq) <= 1.0 + 1e-8


class TestEllipsoid:
    def test_balanced_spec(self):
        spec = ellipsoid_spec(Params(1, 1), 2)
        assert (spec.lo, spec.hi) == (0, 2)
        np.testing.assert_allclose(
            np.exp(spec.log_semi_axes_sq), [3.0, 6.0, 3.0], rtol=1e-12
        )
        assert spec.exact_semi_axes_sq == (3, 6, 3)

    def test_boundary_spec(self):
        spec = ellipsoid_spec(Params(Fraction(1, 2), Fraction(1, 2)), 2)
        assert (spec.lo, spec.hi) == (1, 1)
        assert spec.exact_semi_axes_sq == (Fraction(3, 2),)

    def test_semi_axes_dominate_window_weight(self):
        """R_i >= exp(n phi(i/n)) >= 1 on the window exponents."""
        for a, b in [(1.0, 1.0), (0.7, 0.9), (2.0, 0.6)]:
            p = Params(a, b)
            if a + b <= 1.0:
                continue
            for n in (3, 9, 15):
                spec = ellipsoid_spec(p, n)
                for off, lr in enumerate(spec.log_semi_axes_sq):
                    i = spec.lo + off
                    assert lr >= n * phi(p, i / n) - 1e-9
                    assert lr >= -1e-9

    def test_empty_raises(self):
        with pytest.raises(EmptyError):
            ellipsoid_spec(Params(0.3, 0.3), 4)


class TestLatticeCount:
    def test_one_dimensional_bounds(self):
        spec = EllipsoidSpec(2, 1, 1, (math.log(1.5),), (Fraction(3, 2),))
        lo, hi = lattice_count_bounds(spec)
        assert lo == pytest.approx(0.5 * math.log(1.5), abs=1e-12)
        assert hi == pytest.approx(math.log(2.0 * math.sqrt(1.5) + 1.0), abs=1e-12)
        assert ellipsoid_lattice_count(spec) == 3

    def test_exact_count_in_bracket(self):
        spec = ellipsoid_spec(Params(1, 1), 2)
        lo, hi = lattice_count_bounds(spec)
        count = ellipsoid_lattice_count(spec)
        assert count == 37
        assert math.exp(lo) <= count <= math.exp(hi)

    def test_count_matches_enumeration(self):
        for a, b in [(1, 1), (2, 2)]:
            p = Params(a, b)
            for n in (1, 2, 3):
                assert h0_count_l2(p, n) == len(h0_enumerate(p, n, norm="l2"))

    def test_count_requires_exact(self):
        with pytest.raises(DomainError):
            h0_count_l2(Params(1.0, 1.0 + 1e-9), 2)

    def test_normalized_gap_shrinks(self):
        """Upper minus lower bound is O(n log n) against the n^2 growth."""
        p = Params(2, 2)
        gaps = []
        for n in (50, 100, 200):
            spec = ellipsoid_spec(p, n)
            lo, hi = lattice_count_bounds(spec)
            gaps.append((hi - lo) / (n + 1) ** 2)
        assert gaps[0] > gaps[1] > gaps[2]
