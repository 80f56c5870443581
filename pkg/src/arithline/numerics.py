"""Shared numeric kernel.

Monotone root finding (bisection with secant acceleration), adaptive Simpson
quadrature, exact and log-space binomial coefficients, Euclidean unit-ball
volumes, and a deterministic grid-plus-refine maximizer for functions of two
variables.  Every routine is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import BracketError, ConvergenceError, DomainError

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "BigBinomial",
    "big_binomial",
    "find_root_monotone",
    "integrate_adaptive",
    "log_binomial",
    "log_binomial_exact",
    "log_binomial_lgamma",
    "binomial_integral_bounds",
    "log_ball_volume",
    "maximize_2d",
]


@dataclass(frozen=True)
class Tolerance:
    """Numeric tolerances shared by the solvers.

    abs_tol bounds bracket widths and per-call absolute errors, rel_tol the
    relative quadrature error, max_iter the root-solver iteration budget.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise DomainError("tolerances must be strictly positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")


DEFAULT_TOL = Tolerance()

# Exact big-integer binomials up to this n; log-gamma beyond keeps O(1) cost.
EXACT_BINOMIAL_LIMIT = 64


@dataclass(frozen=True)
class BigBinomial:
    """A binomial coefficient C(n, i) held as an exact integer."""

    n: int
    i: int
    value: int

    def __post_init__(self):
        if not 0 <= self.i <= self.n:
            raise DomainError(f"need 0 <= i <= n, got i={self.i}, n={self.n}")
        if self.value != math.comb(self.n, self.i):
            raise DomainError("value is not C(n, i)")


def big_binomial(n: int, i: int) -> BigBinomial:
    """Exact C(n, i) as a BigBinomial record."""
    if not 0 <= i <= n:
        raise DomainError(f"need 0 <= i <= n, got i={i}, n={n}")
    return BigBinomial(n, i, math.comb(n, i))


def find_root_monotone(
    f: Callable[[float], float], lo: float, hi: float, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Root of a continuous, strictly monotone f on [lo, hi].

    The endpoint values must change sign strictly (BracketError otherwise).
    Secant steps when they fall inside the bracket, with a bisection fallback
    that guarantees the bracket halves every iteration.  Returns x with
    |f(x)| <= abs_tol or with the final bracket narrower than abs_tol.
    """
    lo, hi = float(lo), float(hi)
    if not hi > lo:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    fa, fb = f(lo), f(hi)
    if fa == 0.0 or fb == 0.0 or (fa < 0.0) == (fb < 0.0):
        raise BracketError(f"no sign change on [{lo}, {hi}]")
    a, b = lo, hi
    for _ in range(tol.max_iter):
        width = b - a
        if width <= tol.abs_tol:
            return 0.5 * (a + b)
        x = 0.5 * (a + b)
        denom = fb - fa
        if denom != 0.0:
            xs = b - fb * (b - a) / denom
            if a < xs < b:
                x = xs
        fx = f(x)
        if abs(fx) <= tol.abs_tol:
            return x
        if fa * fx <= 0.0:
            b, fb = x, fx
        else:
            a, fa = x, fx
        if (b - a) > 0.5 * width:
            # Secant made poor progress; force a bisection of the new bracket.
            m = 0.5 * (a + b)
            fm = f(m)
            if abs(fm) <= tol.abs_tol:
                return m
            if fa * fm <= 0.0:
                b, fb = m, fm
            else:
                a, fa = m, fm
    raise ConvergenceError(
        f"root not located within {tol.max_iter} iterations on [{lo}, {hi}]"
    )


_MAX_QUAD_DEPTH = 64


def _checked_eval(f, x):
    v = f(x)
    if not math.isfinite(v):
        raise DomainError(f"non-finite integrand value {v!r} at x={x!r}")
    return v


def _simpson(fa, fm, fb, h):
    return h * (fa + 4.0 * fm + fb) / 6.0


def _adapt(f, a, b, fa, fm, fb, s, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    if lm <= a or rm >= b:
        # Interval at floating-point resolution; nothing left to refine.
        return s
    flm = _checked_eval(f, lm)
    frm = _checked_eval(f, rm)
    sl = _simpson(fa, flm, fm, m - a)
    sr = _simpson(fm, frm, fb, b - m)
    err = (sl + sr) - s
    if abs(err) <= 15.0 * eps:
        return sl + sr + err / 15.0
    if depth <= 0:
        raise ConvergenceError(
            f"quadrature did not converge on [{a}, {b}] (residual {err:.3e})"
        )
    half = 0.5 * eps
    return _adapt(f, a, m, fa, flm, fm, sl, half, depth - 1) + _adapt(
        f, m, b, fm, frm, fb, sr, half, depth - 1
    )


def integrate_adaptive(
    f: Callable[[float], float], lo: float, hi: float, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Adaptive Simpson integral of f over [lo, hi].

    The target error is max(abs_tol, rel_tol * |first whole-interval
    estimate|); passing a tiny abs_tol therefore gives pure relative control.
    Improper integrals are the caller's job (substitute r = u/(1-u) or
    truncate with an analytic tail bound first).  Non-finite integrand values
    raise DomainError.
    """
    lo, hi = float(lo), float(hi)
    if lo == hi:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0
    fa = _checked_eval(f, lo)
    fb = _checked_eval(f, hi)
    mid = 0.5 * (lo + hi)
    fm = _checked_eval(f, mid)
    whole = _simpson(fa, fm, fb, hi - lo)
    # Anchor the relative target on a fixed composite pass: the 3-point
    # estimate collapses on sharply peaked integrands, which would otherwise
    # turn rel_tol into an impossible absolute demand.
    panels = 32
    h = (hi - lo) / (2 * panels)
    vals = [fa] + [_checked_eval(f, lo + k * h) for k in range(1, 2 * panels)] + [fb]
    composite = (
        h
        / 3.0
        * (
            vals[0]
            + vals[-1]
            + 4.0 * sum(vals[1:-1:2])
            + 2.0 * sum(vals[2:-1:2])
        )
    )
    eps = max(tol.abs_tol, tol.rel_tol * max(abs(whole), abs(composite)))
    return sign * _adapt(f, lo, hi, fa, fm, fb, whole, eps, _MAX_QUAD_DEPTH)


def log_binomial_exact(n: int, i: int) -> float:
    """log C(n, i) through exact big-integer arithmetic."""
    if not 0 <= i <= n:
        raise DomainError(f"need 0 <= i <= n, got i={i}, n={n}")
    return math.log(math.comb(n, i))


def log_binomial_lgamma(n: int, i: int) -> float:
    """log C(n, i) through the log-gamma function (O(1) for any n)."""
    if not 0 <= i <= n:
        raise DomainError(f"need 0 <= i <= n, got i={i}, n={n}")
    return math.lgamma(n + 1.0) - math.lgamma(i + 1.0) - math.lgamma(n - i + 1.0)


def log_binomial(n: int, i: int) -> float:
    """Natural log of the binomial coefficient C(n, i).

    Exact big-integer path for n <= 64, log-gamma above; the two paths agree
    to 1e-12 relative on the overlap.
    """
    if not 0 <= i <= n:
        raise DomainError(f"need 0 <= i <= n, got i={i}, n={n}")
    if n <= EXACT_BINOMIAL_LIMIT:
        return math.log(math.comb(n, i))
    return log_binomial_lgamma(n, i)


_EDGE_OFFSET = 1e-15


def _integrate_log_odds(lo: float, hi: float, tol: Tolerance) -> tuple[float, float]:
    """Integral of log(1/t - 1) over [lo, hi] within [0, 1].

    The integrand is integrable but unbounded at 0 and 1, so the domain is
    clipped to [eps, 1 - eps] with eps = 1e-15; the discarded mass on either
    side is below eps * (1 - log eps).  Returns (value, truncation_bound).
    """
    if not 0.0 <= lo <= hi <= 1.0:
        raise DomainError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
    a = max(lo, _EDGE_OFFSET)
    b = min(hi, 1.0 - _EDGE_OFFSET)
    if a >= b:
        return 0.0, _EDGE_OFFSET * (1.0 - math.log(_EDGE_OFFSET))
    trunc = 0.0
    if lo < a or hi > b:
        trunc = _EDGE_OFFSET * (1.0 - math.log(_EDGE_OFFSET))
    val = integrate_adaptive(lambda t: math.log(1.0 / t - 1.0), a, b, tol)
    return val, trunc


def binomial_integral_bounds(
    n: int, i: int, tol: Tolerance = DEFAULT_TOL
) -> tuple[float, float]:
    """Certified integral bounds pinning log C(n, i) / (n + 1) from both sides.

    lower = integral of log(1/t - 1) over [1/(n+1), (i+1)/(n+1)] minus its
    truncation bound, upper = the same integrand over [0, i/(n+1)] plus its
    truncation bound, so that lower <= log C(n, i)/(n+1) <= upper holds up to
    quadrature error alone.
    """
    if not 0 <= i <= n:
        raise DomainError(f"need 0 <= i <= n, got i={i}, n={n}")
    step = 1.0 / (n + 1.0)
    lo_val, lo_trunc = _integrate_log_odds(step, (i + 1) * step, tol)
    hi_val, hi_trunc = _integrate_log_odds(0.0, i * step, tol)
    return lo_val - lo_trunc, hi_val + hi_trunc


def log_ball_volume(m: int) -> float:
    """Log volume of the m-dimensional Euclidean unit ball.

    log(pi^(m/2) / Gamma(m/2 + 1)); m must be a positive integer.
    """
    if m < 1:
        raise DomainError(f"dimension must be positive, got {m}")
    return 0.5 * m * math.log(math.pi) - math.lgamma(0.5 * m + 1.0)


def maximize_2d(
    f: Callable[[float, float], float],
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    grid: int = 64,
    refine_iters: int = 60,
) -> tuple[tuple[float, float], float]:
    """Maximize f over a rectangle: coarse grid scan, then compass refinement.

    The refinement repeatedly tries the eight neighbours of the incumbent at
    the current step, moving uphill and halving the step on failure,
    refine_iters times.  Only sampled values are ever reported, so the result
    never exceeds the true maximum beyond evaluation round-off.  grid >= 16.
    """
    if grid < 16:
        raise DomainError(f"grid must be at least 16, got {grid}")
    x0, x1 = float(x_range[0]), float(x_range[1])
    y0, y1 = float(y_range[0]), float(y_range[1])
    if not (x1 > x0 and y1 > y0):
        raise DomainError("degenerate rectangle")

    hx = (x1 - x0) / grid
    hy = (y1 - y0) / grid
    best_x, best_y, best_v = x0, y0, -math.inf
    for jx in range(grid + 1):
        x = x0 + jx * hx
        for jy in range(grid + 1):
            y = y0 + jy * hy
            v = f(x, y)
            if not math.isfinite(v):
                raise DomainError(f"non-finite value {v!r} at ({x}, {y})")
            if v > best_v:
                best_x, best_y, best_v = x, y, v

    shrinks = 0
    moves = 0
    move_budget = 64 * refine_iters
    while shrinks < refine_iters and moves < move_budget:
        improved = False
        for dx in (-hx, 0.0, hx):
            for dy in (-hy, 0.0, hy):
                if dx == 0.0 and dy == 0.0:
                    continue
                x = min(max(best_x + dx, x0), x1)
                y = min(max(best_y + dy, y0), y1)
                v = f(x, y)
                if not math.isfinite(v):
                    raise DomainError(f"non-finite value {v!r} at ({x}, {y})")
                if v > best_v:
                    best_x, best_y, best_v = x, y, v
                    improved = True
        if improved:
            moves += 1
        else:
            hx *= 0.5
            hy *= 0.5
            shrinks += 1
    return (best_x, best_y), best_v
