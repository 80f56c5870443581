"""Growth rate of the small-section count, by three independent routes.

Closed-form integration of the characteristic function over its
nonnegativity window, adaptive quadrature of the same integral, and the
normalized log lattice-count sandwich; plus the arithmetic self-intersection
number and a constructor of big parameter pairs with no small sections
through a prescribed level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .charfun import Params, ThetaInterval, ThetaKind, phi, theta_interval
from .errors import DomainError, EmptyError
from .numerics import DEFAULT_TOL, Tolerance, integrate_adaptive
from .sections import (
    ellipsoid_spec,
    lattice_count_bounds,
    scaled_theta_integers,
    h0_nonzero,
)

__all__ = [
    "VolumeReport",
    "phi_antiderivative",
    "volume_closed",
    "volume_quadrature",
    "selfint_degree",
    "volume_lattice_estimate",
    "construct_gap_params",
    "volume_report",
]


def phi_antiderivative(p: Params, x: float) -> float:
    """Closed-form antiderivative F of the characteristic function.

    F(x) = (x - x^2/2) log a + (x^2/2) log b - (x^2/2) log x + x^2/4
           + ((1-x)^2/2) log(1-x) - (1-x)^2/4,

    with the log terms reading 0 at their vanishing endpoints.  F'(x) equals
    phi(x) on (0, 1), which the check suite verifies by central differences.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    la, lb = math.log(p.af), math.log(p.bf)
    y = 1.0 - x
    out = (x - 0.5 * x * x) * la + 0.5 * x * x * lb
    if x > 0.0:
        out -= 0.5 * x * x * math.log(x)
    out += 0.25 * x * x
    if y > 0.0:
        out += 0.5 * y * y * math.log(y)
    out -= 0.25 * y * y
    return out


def volume_closed(p: Params, theta: ThetaInterval | None = None) -> float:
    """Integral of phi over its nonnegativity window, in closed form.

    Zero when the window is empty or a single boundary point.
    """
    if theta is None:
        theta = theta_interval(p)
    if theta.kind is not ThetaKind.INTERVAL or theta.length == 0.0:
        return 0.0
    return phi_antiderivative(p, theta.upper) - phi_antiderivative(p, theta.lower)


def volume_quadrature(
    p: Params, theta: ThetaInterval | None = None, tol: Tolerance | None = None
) -> float:
    """The same window integral by adaptive quadrature (independent route)."""
    if theta is None:
        theta = theta_interval(p)
    if theta.kind is not ThetaKind.INTERVAL or theta.length == 0.0:
        return 0.0
    if tol is None:
        tol = Tolerance(abs_tol=1e-11, rel_tol=1e-11)
    return integrate_adaptive(lambda x: phi(p, x), theta.lower, theta.upper, tol)


def selfint_degree(p: Params) -> float:
    """Arithmetic self-intersection number: (log(a b) + 1) / 2.

    Equals the integral of phi over all of [0, 1]; agrees with the window
    integral exactly when the pair is nef (window equal to [0, 1]).
    """
    return 0.5 * (math.log(p.af) + math.log(p.bf) + 1.0)


def volume_lattice_estimate(
    p: Params, n: int, theta: ThetaInterval | None = None
) -> tuple[float, float]:
    """Normalized log lattice-count sandwich 2 log(count bounds) / (n+1)^2.

    Both bounds converge to volume_closed as n grows, at O(log n / n);
    requires a window of positive length (a + b > 1) and a level whose scaled
    window contains an integer.
    """
    if p.boundary_side() <= 0:
        raise DomainError("lattice estimate needs a + b > 1")
    if theta is None:
        theta = theta_interval(p)
    ints = scaled_theta_integers(p, n, theta)
    if not ints:
        width = theta.length
        suggestion = None
        limit = math.ceil(1.0 / width) + 1 if width > 0.0 else 0
        for cand in range(1, limit + 1):
            if scaled_theta_integers(p, cand, theta):
                suggestion = cand
                break
        raise EmptyError(
            f"no integer exponents in the scaled window at n={n}; "
            f"smallest valid level is {suggestion}"
        )
    spec = ellipsoid_spec(p, n, theta)
    lo, hi = lattice_count_bounds(spec)
    scale = 2.0 / (n + 1) ** 2
    return scale * lo, scale * hi


def construct_gap_params(n: int) -> Params:
    """Rational big parameters with no small sections at any level up to n.

    Starting from the boundary pair a' = n/(n+1), b' = 1/(n+1), scan the
    rational scales lambda_k = 1 + 2^-k for the first one keeping both
    weights below 1 while the scaled characteristic value at 1/n stays
    negative; the scan terminates because that value is strictly negative at
    the start.  The result is verified before returning.
    """
    if n < 1:
        raise DomainError(f"level must be positive, got {n}")
    aprime = Fraction(n, n + 1)
    bprime = Fraction(1, n + 1)
    base = Params(aprime, bprime)
    margin = -phi(base, 1.0 / n)  # strictly positive
    k = 1
    while True:
        lam = 1 + Fraction(1, 2**k)
        if lam * aprime < 1 and lam * bprime < 1 and math.log(float(lam)) < margin:
            break
        k += 1
    out = Params(lam * aprime, lam * bprime)
    theta = theta_interval(out)
    for level in range(1, n + 1):
        if h0_nonzero(out, level, theta):
            raise DomainError(
                f"constructed pair admits a small section at level {level}"
            )
    return out


@dataclass(frozen=True)
class VolumeReport:
    """The three volume routes side by side (lattice fields None when the
    sandwich is unavailable, e.g. for non-big parameters)."""

    closed: float
    quadrature: float
    lattice_lower: float | None
    lattice_upper: float | None
    n_used: int | None


def volume_report(
    p: Params, n: int | None = None, tol: Tolerance | None = None
) -> VolumeReport:
    """Closed form, quadrature, and (when possible) the lattice sandwich."""
    theta = theta_interval(p)
    closed = volume_closed(p, theta)
    quad = volume_quadrature(p, theta, tol)
    lower = upper = n_used = None
    if n is not None and p.boundary_side() > 0:
        lower, upper = volume_lattice_estimate(p, n, theta)
        n_used = n
    return VolumeReport(closed, quad, lower, upper, n_used)
