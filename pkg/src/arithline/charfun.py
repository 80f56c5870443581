"""Characteristic function, positivity thresholds and the radial Green data
for the two-parameter divisor family on the projective line.

The whole geometry of a pair (a, b) of positive weights is driven by the
concave function

    phi(x) = (1 - x) log a + x log b - x log x - (1 - x) log(1 - x)

on [0, 1] (products 0 * log 0 read as 0): its nonnegativity window, its peak
log(a + b) at x = b/(a+b), and the Green function

    g(z) = -log|z|^2 + log(a |z|^2 + b)

on the Riemann sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Union

import numpy as np

from .errors import DomainError
from .numerics import DEFAULT_TOL, Tolerance, find_root_monotone

__all__ = [
    "Scalar",
    "BOUNDARY_TOL",
    "INFINITY",
    "Params",
    "ThetaKind",
    "ThetaInterval",
    "GeographyClass",
    "phi",
    "phi_grid",
    "phi_max",
    "theta_interval",
    "classify",
    "green_g",
    "green_g_smooth",
    "green_g_radial",
    "scaling_combine",
]

Scalar = Union[int, float, Fraction]

# Float-side detection of the boundary a + b = 1; rational inputs compare exactly.
BOUNDARY_TOL = 1e-14


class _PointAtInfinity:
    """The point at infinity on the Riemann sphere (use the INFINITY singleton)."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _PointAtInfinity()


@dataclass(frozen=True)
class Params:
    """A pair of positive weights (a, b) selecting one divisor of the family.

    int or Fraction inputs keep exact-arithmetic paths alive, most importantly
    the boundary test a + b = 1; floats use a 1e-14 tolerance there.
    """

    a: Scalar
    b: Scalar

    def __post_init__(self):
        for name, v in (("a", self.a), ("b", self.b)):
            if isinstance(v, float) and not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            if not v > 0:
                raise DomainError(f"{name} must be positive, got {v!r}")

    @property
    def af(self) -> float:
        return float(self.a)

    @property
    def bf(self) -> float:
        return float(self.b)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.a, Rational) and isinstance(self.b, Rational)

    def boundary_side(self) -> int:
        """Sign of a + b - 1: exact for rational inputs, BOUNDARY_TOL otherwise."""
        if self.is_exact:
            s = Fraction(self.a) + Fraction(self.b) - 1
            return (s > 0) - (s < 0)
        s = self.af + self.bf - 1.0
        if abs(s) <= BOUNDARY_TOL:
            return 0
        return 1 if s > 0.0 else -1

    def scaled(self, t: Scalar) -> "Params":
        """The pair (t*a, t*b); exactness is preserved when both sides are rational."""
        if not t > 0:
            raise DomainError(f"scale factor must be positive, got {t!r}")
        if self.is_exact and isinstance(t, Rational):
            return Params(Fraction(self.a) * Fraction(t), Fraction(self.b) * Fraction(t))
        return Params(self.af * float(t), self.bf * float(t))


class ThetaKind(Enum):
    EMPTY = "empty"
    POINT = "point"
    INTERVAL = "interval"


@dataclass(frozen=True)
class ThetaInterval:
    """Closure of the set where phi is nonnegative: [lower, upper], one point
    on the boundary a + b = 1, or empty below it.

    solver_tol records the root-solver tolerance so downstream membership
    tests can widen consistently.
    """

    kind: ThetaKind
    lower: float | None
    upper: float | None
    solver_tol: float

    def __post_init__(self):
        if self.kind is ThetaKind.EMPTY:
            if self.lower is not None or self.upper is not None:
                raise DomainError("empty interval carries no endpoints")
            return
        if self.lower is None or self.upper is None:
            raise DomainError("non-empty interval needs both endpoints")
        if not -1e-12 <= self.lower <= self.upper <= 1.0 + 1e-12:
            raise DomainError(f"endpoints outside [0, 1]: {self.lower}, {self.upper}")
        if self.kind is ThetaKind.POINT and self.lower != self.upper:
            raise DomainError("point interval must have equal endpoints")

    @property
    def is_empty(self) -> bool:
        return self.kind is ThetaKind.EMPTY

    @property
    def length(self) -> float:
        if self.is_empty:
            return 0.0
        return self.upper - self.lower

    def contains(self, x: float, slack: float = 0.0) -> bool:
        if self.is_empty:
            return False
        return self.lower - slack <= x <= self.upper + slack


class GeographyClass(Enum):
    AMPLE = "Ample"
    NEF_NOT_AMPLE = "NefNotAmple"
    BIG_NOT_NEF = "BigNotNef"
    PSEUDO_EFFECTIVE_BOUNDARY = "PseudoEffectiveBoundary"
    NOT_PSEUDO_EFFECTIVE = "NotPseudoEffective"


def _xlogx(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log(x)


def phi(p: Params, x: float) -> float:
    """Characteristic value at x in [0, 1]; finite everywhere by the 0*log 0 = 0
    convention at the endpoints."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    return (
        (1.0 - x) * math.log(p.af)
        + x * math.log(p.bf)
        - _xlogx(x)
        - _xlogx(1.0 - x)
    )


def phi_grid(p: Params, xs: np.ndarray) -> np.ndarray:
    """Vectorized phi over an array of points in [0, 1]."""
    xs = np.asarray(xs, dtype=float)
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise DomainError("grid points must lie in [0, 1]")
    out = (1.0 - xs) * math.log(p.af) + xs * math.log(p.bf)
    inner = (xs > 0.0) & (xs < 1.0)
    xi = xs[inner]
    out[inner] -= xi * np.log(xi) + (1.0 - xi) * np.log(1.0 - xi)
    return out


def phi_max(p: Params) -> tuple[float, float]:
    """Argmax and max of phi: (b/(a+b), log(a+b))."""
    a, b = p.af, p.bf
    return b / (a + b), math.log(a + b)


def theta_interval(p: Params, tol: Tolerance = DEFAULT_TOL) -> ThetaInterval:
    """The window where phi is nonnegative.

    Empty when a + b < 1, the single point b/(a+b) on the boundary a + b = 1,
    and otherwise [lower, upper] with endpoints either exact (0 or 1 when the
    corresponding endpoint value log a or log b is already nonnegative) or
    located by the monotone root solver on the rising and falling halves.
    """
    side = p.boundary_side()
    if side < 0:
        return ThetaInterval(ThetaKind.EMPTY, None, None, tol.abs_tol)
    if side == 0:
        x = p.bf / (p.af + p.bf)
        return ThetaInterval(ThetaKind.POINT, x, x, tol.abs_tol)
    xpeak, _ = phi_max(p)
    lower = 0.0
    if math.log(p.af) < 0.0:
        lower = find_root_monotone(lambda x: phi(p, x), 0.0, xpeak, tol)
    upper = 1.0
    if math.log(p.bf) < 0.0:
        upper = find_root_monotone(lambda x: phi(p, x), xpeak, 1.0, tol)
    return ThetaInterval(ThetaKind.INTERVAL, lower, upper, tol.abs_tol)


def classify(p: Params) -> GeographyClass:
    """Positivity class of the pair: the five regions of the (a, b) quadrant."""
    side = p.boundary_side()
    if side < 0:
        return GeographyClass.NOT_PSEUDO_EFFECTIVE
    if side == 0:
        return GeographyClass.PSEUDO_EFFECTIVE_BOUNDARY
    if p.a > 1 and p.b > 1:
        return GeographyClass.AMPLE
    if p.a >= 1 and p.b >= 1:
        return GeographyClass.NEF_NOT_AMPLE
    return GeographyClass.BIG_NOT_NEF


def green_g(p: Params, z) -> float:
    """Green value -log|z|^2 + log(a|z|^2 + b) at z (complex) or INFINITY.

    +inf at the origin (the log pole), log a at infinity.  The smooth part
    g + log|z|^2 stays finite at the origin; see green_g_smooth.
    """
    if z is INFINITY:
        return math.log(p.af)
    r = abs(z)
    if r == 0.0:
        return math.inf
    if r >= 1.0:
        ir = 1.0 / r
        return math.log(p.af + p.bf * ir * ir)
    return math.log(p.af * r * r + p.bf) - 2.0 * math.log(r)


def green_g_smooth(p: Params, z) -> float:
    """Pole-free part log(a|z|^2 + b) of the Green function; log b at the origin."""
    if z is INFINITY:
        return math.inf
    m = abs(z) ** 2
    return math.log(p.af * m + p.bf)


def green_g_radial(p: Params, r) -> np.ndarray:
    """Green values on circles of radius r > 0 (vectorized)."""
    r = np.asarray(r, dtype=float)
    out = np.empty_like(r)
    big = r >= 1.0
    ir = 1.0 / r[big]
    out[big] = np.log(p.af + p.bf * ir * ir)
    rs = r[~big]
    out[~big] = np.log(p.af * rs * rs + p.bf) - 2.0 * np.log(rs)
    return out


def scaling_combine(alpha: float, t: float, beta: float, s: float, p: Params) -> Params:
    """Weights merging two rescaled copies of the family into one member.

    Returns (c*a, c*b) with c = (t^alpha * s^beta)^(1/(alpha+beta)); the Green
    functions then satisfy alpha*g_(ta,tb) + beta*g_(sa,sb) = (alpha+beta)*g_(ca,cb)
    pointwise.
    """
    if alpha + beta == 0:
        raise DomainError("alpha + beta must be nonzero")
    if not (t > 0 and s > 0):
        raise DomainError("scale factors must be positive")
    logc = (alpha * math.log(t) + beta * math.log(s)) / (alpha + beta)
    c = math.exp(logc)
    return Params(p.af * c, p.bf * c)
