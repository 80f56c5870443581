"""Unit tests for the shared numeric kernel."""

import math

import numpy as np
import pytest

from arithline.charfun import Params, phi
from arithline.errors import BracketError, ConvergenceError, DomainError
from arithline.numerics import (
    BigBinomial,
    Tolerance,
    big_binomial,
    binomial_integral_bounds,
    find_root_monotone,
    integrate_adaptive,
    log_ball_volume,
    log_binomial,
    log_binomial_exact,
    log_binomial_lgamma,
    maximize_2d,
)


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.abs_tol == 1e-12 and tol.rel_tol == 1e-10 and tol.max_iter == 200

    @pytest.mark.parametrize("bad", [dict(abs_tol=0.0), dict(rel_tol=-1.0), dict(max_iter=0)])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(DomainError):
            Tolerance(**bad)


class TestBigBinomial:
    def test_exact_value(self):
        assert big_binomial(4, 2).value == 6
        assert big_binomial(64, 32).value == math.comb(64, 32)

    def test_rejects_bad_value(self):
        with pytest.raises(DomainError):
            BigBinomial(4, 2, 7)


class TestFindRoot:
    def test_linear(self):
        assert find_root_monotone(lambda x: x - 0.5, 0.0, 1.0) == pytest.approx(0.5, abs=1e-12)

    def test_entropy_level_crossing(self):
        """Root of phi at level log(2)/2 re-evaluates to ~0 (the stated oracle)."""
        p = Params(1, 1)
        target = math.log(2.0) / 2.0
        f = lambda x: phi(p, x) - target
        root = find_root_monotone(f, 0.0, 0.5)
        assert abs(f(root)) < 1e-10

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            find_root_monotone(lambda x: x * x, 0.0, 1.0)

    def test_iteration_budget(self):
        with pytest.raises(ConvergenceError):
            find_root_monotone(
                lambda x: x**3 - 2.0, 0.0, 2.0, Tolerance(abs_tol=1e-300, max_iter=3)
            )

    def test_result_is_bracketed(self):
        """The returned point sits within abs_tol of a sign change."""
        rng = np.random.default_rng(7)
        for _ in range(50):
            c = rng.uniform(0.1, 0.9)
            f = lambda x: math.atan(5.0 * (x - c))
            root = find_root_monotone(f, 0.0, 1.0)
            assert f(root - 1e-11) <= 0.0 <= f(root + 1e-11)


class TestIntegrate:
    def test_constant(self):
        assert integrate_adaptive(lambda x: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_entropy_integral(self):
        """Integral of the binary entropy (natural log) over [0, 1] is 1/2."""
        f = lambda x: phi(Params(1, 1), x)
        assert integrate_adaptive(f, 0.0, 1.0) == pytest.approx(0.5, abs=1e-10)

    def test_shifted_entropy_integral(self):
        f = lambda x: phi(Params(2, 2), x)
        expected = (math.log(4.0) + 1.0) / 2.0
        assert integrate_adaptive(f, 0.0, 1.0) == pytest.approx(expected, abs=1e-10)

    def test_linearity(self):
        f = lambda x: math.exp(-x)
        g = lambda x: x**3 - x
        lhs = integrate_adaptive(lambda x: 2.0 * f(x) - 3.0 * g(x), 0.0, 2.0)
        rhs = 2.0 * integrate_adaptive(f, 0.0, 2.0) - 3.0 * integrate_adaptive(g, 0.0, 2.0)
        assert lhs == pytest.approx(rhs, abs=2e-10)

    def test_nonfinite_interior(self):
        with pytest.raises(DomainError):
            integrate_adaptive(lambda x: math.inf if x == 0.5 else 1.0, 0.0, 1.0)


class TestLogBinomial:
    def test_small_values(self):
        assert log_binomial(4, 2) == pytest.approx(math.log(6.0), rel=1e-15)
        assert log_binomial(10, 0) == 0.0
        assert log_binomial(7, 7) == 0.0

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            log_binomial(5, 6)
        with pytest.raises(DomainError):
            log_binomial(5, -1)

    def test_symmetry_exact_path(self):
        for n in range(0, 65, 4):
            for i in range(n + 1):
                assert log_binomial(n, i) == log_binomial(n, n - i)

    def test_paths_agree_on_overlap(self):
        """Exact and log-gamma paths agree to 1e-12 relative for 1 <= n <= 64."""
        for n in range(1, 65):
            for i in range(1, n):
                e = log_binomial_exact(n, i)
                l = log_binomial_lgamma(n, i)
                assert l == pytest.approx(e, rel=1e-12, abs=1e-13)

    def test_integral_sandwich_samples(self):
        """(1/(n+1)) log C(n, i) is pinched by the two log-odds integrals."""
        rng = np.random.default_rng(11)
        tol = Tolerance(abs_tol=1e-12, rel_tol=1e-11)
        for _ in range(40):
            n = int(rng.integers(1, 501))
            i = int(rng.integers(0, n + 1))
            lower, upper = binomial_integral_bounds(n, i, tol)
            v = log_binomial(n, i) / (n + 1.0)
            assert lower - 1e-9 <= v <= upper + 1e-9


class TestLogBallVolume:
    def test_known_dimensions(self):
        assert log_ball_volume(1) == pytest.approx(math.log(2.0), rel=1e-14)
        assert log_ball_volume(2) == pytest.approx(math.log(math.pi), rel=1e-14)
        assert log_ball_volume(3) == pytest.approx(math.log(4.0 * math.pi / 3.0), rel=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            log_ball_volume(0)


class TestMaximize2d:
    def test_constant(self):
        _, v = maximize_2d(lambda x, y: 3.0, (0.0, 1.0), (0.0, 1.0))
        assert v == 3.0

    def test_quadratic_peak(self):
        (x, y), v = maximize_2d(
            lambda r, t: -((r - 1.0) ** 2) - (t - 2.0) ** 2, (0.0, 3.0), (0.0, 4.0)
        )
        assert v == pytest.approx(0.0, abs=1e-12)
        assert (x, y) == pytest.approx((1.0, 2.0), abs=1e-5)

    def test_monomial_weight_at_zero_exponent(self):
        """sup of |z|^(2n)/(a|z|^2+b)^n approached over log-radius is a^-n."""
        a, b, n = 1.3, 0.4, 6
        f = lambda rho, t: math.exp(n * (2.0 * rho - math.log(a * math.exp(2 * rho) + b)))
        _, v = maximize_2d(f, (-20.0, 20.0), (0.0, 2.0 * math.pi), grid=64)
        assert v == pytest.approx(a**-n, rel=1e-8)

    def test_never_exceeds_true_max(self):
        f = lambda x, y: math.sin(x) * math.cos(y)
        _, v = maximize_2d(f, (0.0, math.pi), (-1.0, 1.0), grid=32, refine_iters=30)
        assert v <= 1.0 + 1e-15

    def test_rejects_small_grid(self):
        with pytest.raises(DomainError):
            maximize_2d(lambda x, y: 0.0, (0, 1), (0, 1), grid=8)

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            maximize_2d(lambda x, y: math.inf if x > 0.5 else 0.0, (0, 1), (0, 1))
