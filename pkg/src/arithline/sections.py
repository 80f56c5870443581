"""Hermitian lattice data for integer sections at level n.

Sup and L2 norms of the monomial basis, the radial weight recurrence, small
section predicates and spans, exact enumeration of the norm-at-most-one balls
at tiny level, and the axis-aligned ellipsoid whose lattice count sandwiches
the section count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .charfun import Params, ThetaInterval, ThetaKind, phi, theta_interval
from .errors import CapError, DomainError, EmptyError
from .numerics import (
    DEFAULT_TOL,
    Tolerance,
    integrate_adaptive,
    log_ball_volume,
    log_binomial,
    maximize_2d,
)

__all__ = [
    "MonomialBasisElement",
    "IntegerSection",
    "EllipsoidSpec",
    "H0Enumeration",
    "monomial_sup_norm_sq",
    "monomial_l2_norm_sq",
    "radial_integral",
    "radial_integral_quadrature",
    "inner_product",
    "inner_product_quadrature",
    "section_l2_norm_sq",
    "section_sup_norm_sq",
    "section_product",
    "scaled_theta_integers",
    "h0_nonzero",
    "h0_monomial_span",
    "h0_enumerate",
    "h0_count_l2",
    "ellipsoid_spec",
    "ellipsoid_lattice_count",
    "lattice_count_bounds",
]


@dataclass(frozen=True)
class MonomialBasisElement:
    """The basis monomial z^(-i) inside the level-n lattice."""

    n: int
    i: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"level must be positive, got {self.n}")
        if not 0 <= self.i <= self.n:
            raise DomainError(f"need 0 <= i <= n, got i={self.i}, n={self.n}")


@dataclass(frozen=True)
class IntegerSection:
    """Integer combination sum_i coeffs[i] * z^(-i) at level n."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise DomainError(
                f"need {self.n + 1} coefficients, got {len(self.coeffs)}"
            )

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    def as_monomial(self) -> tuple[int, int] | None:
        """(exponent, coefficient) when exactly one coefficient is nonzero."""
        sup = self.support
        if len(sup) != 1:
            return None
        return sup[0], self.coeffs[sup[0]]


def section_product(s1: IntegerSection, s2: IntegerSection) -> IntegerSection:
    """Product of two sections (coefficient convolution), at level n1 + n2."""
    n = s1.n + s2.n
    out = [0] * (n + 1)
    for i, ci in enumerate(s1.coeffs):
        if ci == 0:
            continue
        for j, cj in enumerate(s2.coeffs):
            if cj != 0:
                out[i + j] += ci * cj
    return IntegerSection(n, tuple(out))


def monomial_sup_norm_sq(p: Params, m: MonomialBasisElement) -> float:
    """Squared sup norm of z^(-i): exp(-n * phi(i/n))."""
    return math.exp(-m.n * phi(p, m.i / m.n))


def monomial_l2_norm_sq(p: Params, m: MonomialBasisElement):
    """Squared L2 norm of z^(-i): 1 / ((n+1) C(n,i) a^(n-i) b^i).

    Exact Fraction for rational parameters with n <= 64, otherwise a float
    computed in log space so large levels neither overflow nor lose the
    leading digits.
    """
    n, i = m.n, m.i
    if p.is_exact and n <= 64:
        denom = (n + 1) * math.comb(n, i) * Fraction(p.a) ** (n - i) * Fraction(p.b) ** i
        return 1 / denom
    logv = (
        math.log(n + 1.0)
        + log_binomial(n, i)
        + (n - i) * math.log(p.af)
        + i * math.log(p.bf)
    )
    return math.exp(-logv)


def radial_integral(p: Params, k: int, l: int):
    """The diagonal radial weight I(k, l) by its first-order recurrence.

    I(k, k) = 1 / ((k+1) b^k) and I(k, l) = (l-k) / (a (l+1)) * I(k, l-1);
    the value equals the improper integral a*b * int_0^inf r^(l-k)/(a r + b)^(l+2) dr.
    Exact Fractions for rational parameters.
    """
    if not 0 <= k <= l:
        raise DomainError(f"need 0 <= k <= l, got k={k}, l={l}")
    if p.is_exact:
        a, b = Fraction(p.a), Fraction(p.b)
        val = Fraction(1, k + 1) / b**k
        for j in range(k + 1, l + 1):
            val *= Fraction(j - k, j + 1) / a
        return val
    a, b = p.af, p.bf
    val = 1.0 / ((k + 1) * b**k)
    for j in range(k + 1, l + 1):
        val *= (j - k) / (a * (j + 1))
    return val


def radial_integral_quadrature(
    p: Params, k: int, l: int, tol: Tolerance | None = None
) -> float:
    """The same radial weight evaluated as an integral (independent route).

    Compactifying r = u/(1-u) turns a*b * int_0^inf r^(l-k)/(a r + b)^(l+2) dr
    into a*b * int_0^1 u^(l-k) (1-u)^k / (b + (a-b) u)^(l+2) du, a bounded
    smooth integrand.  Tolerance defaults to pure relative control at 5e-10.
    """
    if not 0 <= k <= l:
        raise DomainError(f"need 0 <= k <= l, got k={k}, l={l}")
    if tol is None:
        tol = Tolerance(abs_tol=1e-300, rel_tol=1e-10)
    a, b = p.af, p.bf
    d = a - b
    lk = l - k
    ex = l + 2

    def f(u: float) -> float:
        return u**lk * (1.0 - u) ** k / (b + d * u) ** ex

    return a * b * integrate_adaptive(f, 0.0, 1.0, tol)


def inner_product(p: Params, m1: MonomialBasisElement, m2: MonomialBasisElement):
    """Hermitian pairing of two basis monomials: diagonal by angular symmetry."""
    if m1.n != m2.n:
        raise DomainError(f"level mismatch: {m1.n} != {m2.n}")
    if m1.i != m2.i:
        return 0.0
    return monomial_l2_norm_sq(p, m1)


def inner_product_quadrature(
    p: Params,
    m1: MonomialBasisElement,
    m2: MonomialBasisElement,
    tol: Tolerance | None = None,
) -> complex:
    """Numeric double integral of the pairing (slow; used as an oracle).

    Splits into an angular mean of exp(i (j - i) t), computed by the exact
    trapezoid rule for trigonometric polynomials, times a radial integral
    compactified as in radial_integral_quadrature with half-integer powers.
    """
    if m1.n != m2.n:
        raise DomainError(f"level mismatch: {m1.n} != {m2.n}")
    n, i, j = m1.n, m1.i, m2.i
    if tol is None:
        tol = Tolerance(abs_tol=1e-300, rel_tol=1e-10)
    a, b = p.af, p.bf
    d = a - b
    s = 0.5 * (i + j)

    def f(u: float) -> float:
        return u ** (n - s) * (1.0 - u) ** s / (b + d * u) ** (n + 2)

    radial = a * b * integrate_adaptive(f, 0.0, 1.0, tol)
    npts = 4 * n + 16
    ts = 2.0 * math.pi * np.arange(npts) / npts
    angular = np.exp(1j * (j - i) * ts).mean()
    return complex(radial * angular)


def section_l2_norm_sq(p: Params, s: IntegerSection):
    """Squared L2 norm of a section: sum of c_i^2 times the diagonal weights."""
    if p.is_exact and s.n <= 64:
        total = Fraction(0)
    else:
        total = 0.0
    for i, c in enumerate(s.coeffs):
        if c != 0:
            total += c * c * monomial_l2_norm_sq(p, MonomialBasisElement(s.n, i))
    return total


def _sphere_value_fn(p: Params, s: IntegerSection):
    """Evaluator of |section|^2 * exp(-n g) over the sphere in (log-radius, angle)
    coordinates, with the chart swapped at |z| = 1 for stability, plus the exact
    limits at the origin and at infinity."""
    n = s.n
    a, b = p.af, p.bf
    c = s.coeffs
    rising = tuple(float(v) for v in c)  # coefficients of u^i in the outer chart
    falling = tuple(float(v) for v in reversed(c))  # coefficients of z^k, k = n - i

    def val(rho: float, t: float) -> float:
        if rho <= 0.0:
            w = complex(math.exp(rho) * math.cos(t), math.exp(rho) * math.sin(t))
            acc = 0.0 + 0.0j
            for coef in reversed(falling):
                acc = acc * w + coef
            m = abs(w) ** 2
            return abs(acc) ** 2 * math.exp(-n * math.log(a * m + b))
        u = complex(math.exp(-rho) * math.cos(t), -math.exp(-rho) * math.sin(t))
        acc = 0.0 + 0.0j
        for coef in reversed(rising):
            acc = acc * u + coef
        mu = abs(u) ** 2
        return abs(acc) ** 2 * math.exp(-n * math.log(a + b * mu))

    half_width = 0.5 * math.log(max(n, 1)) + 14.0
    center = 0.5 * math.log(b / a)
    window = (center - half_width, center + half_width)
    limit_at_inf = c[0] ** 2 * math.exp(-n * math.log(a))
    limit_at_zero = c[n] ** 2 * math.exp(-n * math.log(b))
    return val, window, max(limit_at_inf, limit_at_zero)


def section_sup_norm_sq(
    p: Params,
    s: IntegerSection,
    tol: Tolerance = DEFAULT_TOL,
    grid: int = 96,
    refine_iters: int = 60,
) -> float:
    """Squared sup norm of a nonzero section over the sphere.

    Grid scan plus compass refinement over (log-radius, angle); the closed
    limits at the origin and at infinity enter as extra candidates, so the
    extreme-exponent monomials come out exactly.  Relative accuracy is about
    1e-8 at the default grid (the reported value is never above the true sup).
    """
    if s.is_zero:
        raise DomainError("the zero section has no sup norm")
    val, window, limit = _sphere_value_fn(p, s)
    _, best = maximize_2d(val, window, (0.0, 2.0 * math.pi), grid, refine_iters)
    return max(best, limit)


def scaled_theta_integers(
    p: Params, n: int, theta: ThetaInterval | None = None
) -> list[int]:
    """Integers i in [0, n] with i/n in the nonnegativity window.

    Membership is widened by n * solver_tol on each side, so the outcome is
    consistent with the root solver that produced the window.  The boundary
    point case tests integrality of n * b exactly for rational parameters.
    """
    if theta is None:
        theta = theta_interval(p)
    if theta.kind is ThetaKind.EMPTY:
        return []
    if theta.kind is ThetaKind.POINT:
        if p.is_exact:
            x = Fraction(p.b) / (Fraction(p.a) + Fraction(p.b))
            k = n * x
            if k.denominator == 1 and 0 <= k <= n:
                return [int(k)]
            return []
        x = n * theta.lower
        k = round(x)
        w = n * theta.solver_tol + 1e-12
        if 0 <= k <= n and abs(x - k) <= w:
            return [k]
        return []
    w = n * theta.solver_tol
    lo = max(math.ceil(n * theta.lower - w), 0)
    hi = min(math.floor(n * theta.upper + w), n)
    return list(range(lo, hi + 1))


def h0_nonzero(p: Params, n: int, theta: ThetaInterval | None = None) -> bool:
    """Whether any nonzero integer section at level n has sup norm at most 1."""
    return bool(scaled_theta_integers(p, n, theta))


def h0_monomial_span(
    p: Params, n: int, theta: ThetaInterval | None = None
) -> list[int]:
    """Exponents i whose monomial z^(-i) has sup norm at most 1 at level n."""
    ints = scaled_theta_integers(p, n, theta)
    if not ints:
        raise EmptyError(f"no integer exponents in the scaled window at n={n}")
    return ints


@dataclass(frozen=True)
class EllipsoidSpec:
    """Axis-aligned ellipsoid carrying the level-n section count.

    Coordinates run over the integer exponents lo..hi inside the scaled
    window; the squared semi-axes R_i = (n+1) C(n,i) a^(n-i) b^i are stored in
    log space, with an exact rational mirror for rational parameters at
    n <= 64.
    """

    n: int
    lo: int
    hi: int
    log_semi_axes_sq: tuple[float, ...]
    exact_semi_axes_sq: tuple[Fraction, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError("empty exponent range")
        if len(self.log_semi_axes_sq) != self.hi - self.lo + 1:
            raise DomainError("one semi-axis per exponent required")


def _log_semi_axis_sq(p: Params, n: int, i: int) -> float:
    return (
        math.log(n + 1.0)
        + log_binomial(n, i)
        + (n - i) * math.log(p.af)
        + i * math.log(p.bf)
    )


def _exact_semi_axis_sq(p: Params, n: int, i: int) -> Fraction:
    return (n + 1) * math.comb(n, i) * Fraction(p.a) ** (n - i) * Fraction(p.b) ** i


def ellipsoid_spec(
    p: Params, n: int, theta: ThetaInterval | None = None
) -> EllipsoidSpec:
    """Ellipsoid over the scaled-window exponents at level n."""
    ints = scaled_theta_integers(p, n, theta)
    if not ints:
        raise EmptyError(f"no integer exponents in the scaled window at n={n}")
    lo, hi = ints[0], ints[-1]
    logs = tuple(_log_semi_axis_sq(p, n, i) for i in range(lo, hi + 1))
    exact = None
    if p.is_exact and n <= 64:
        exact = tuple(_exact_semi_axis_sq(p, n, i) for i in range(lo, hi + 1))
    return EllipsoidSpec(n, lo, hi, logs, exact)


def lattice_count_bounds(spec: EllipsoidSpec) -> tuple[float, float]:
    """Log-space sandwich for the number of integer points in the ellipsoid.

    Lower: volume over 2^m (symmetric convex body), i.e. sum of half the log
    semi-axes plus the log unit-ball volume minus m log 2.  Upper: the
    bounding box, sum of log(2 sqrt(R_i) + 1).  Both run in O(m) without ever
    leaving log space.
    """
    m = spec.hi - spec.lo + 1
    log2 = math.log(2.0)
    lower = log_ball_volume(m) - m * log2
    upper = 0.0
    for lr in spec.log_semi_axes_sq:
        half = 0.5 * lr
        lower += half
        upper += log2 + half + math.log1p(math.exp(-(log2 + half)))
    return lower, upper


_BUDGET_CAP = 20_000_000


def _count_quadratic_lattice(weights: Sequence[Fraction], budget_cap: int) -> int:
    """Exact count of integer vectors x with sum_i weights[i] * x_i^2 <= 1.

    Clears denominators to an integer budget S and runs a residual-budget
    dynamic program: counts[r] is the number of prefixes leaving budget
    exactly r, updated one coordinate at a time.  Exhaustive over admissible
    coefficient values, exact in integer arithmetic, O(sum_i S * sqrt(R_i))
    time and O(S) memory.
    """
    S = 1
    for w in weights:
        S = S * w.denominator // math.gcd(S, w.denominator)
    if S > budget_cap:
        raise CapError(
            f"scaled budget {S} exceeds the cap {budget_cap}; "
            "use lattice_count_bounds instead"
        )
    counts = np.zeros(S + 1, dtype=np.int64)
    counts[S] = 1
    for w in weights:
        wi = int(w * S)
        new = np.zeros_like(counts)
        new[: S + 1] = counts  # x = 0
        if wi > 0:
            x = 1
            while wi * x * x <= S:
                shift = wi * x * x
                new[: S + 1 - shift] += 2 * counts[shift:]
                x += 1
        counts = new
    return int(counts.sum())


def h0_count_l2(p: Params, n: int, budget_cap: int = _BUDGET_CAP) -> int:
    """Exact number of integer sections at level n with L2 norm at most 1.

    Counts without materializing the sections, so it scales to levels where
    the count runs into the billions.  Requires rational parameters (the
    boundary of the ball must be decided exactly).
    """
    if not p.is_exact:
        raise DomainError("exact count requires rational parameters")
    if n > 64:
        raise CapError("exact count supported for n <= 64")
    weights = [1 / _exact_semi_axis_sq(p, n, i) for i in range(n + 1)]
    return _count_quadratic_lattice(weights, budget_cap)


def ellipsoid_lattice_count(spec: EllipsoidSpec, budget_cap: int = _BUDGET_CAP) -> int:
    """Exact integer-point count of the ellipsoid (exact mirror required)."""
    if spec.exact_semi_axes_sq is None:
        raise DomainError("exact semi-axes unavailable; build from rational parameters")
    weights = [1 / r for r in spec.exact_semi_axes_sq]
    return _count_quadratic_lattice(weights, budget_cap)


@dataclass
class H0Enumeration:
    """Result of a small-section enumeration.

    sections is the full list in canonical (lexicographic coefficient) order;
    boundary_uncertain lists the members whose measured norm sits within the
    tolerance band of 1, where floating point cannot resolve exact ties.
    """

    norm: str
    sections: list[IntegerSection]
    boundary_uncertain: list[IntegerSection]

    def __iter__(self) -> Iterator[IntegerSection]:
        return iter(self.sections)

    def __len__(self) -> int:
        return len(self.sections)

    def __contains__(self, s: IntegerSection) -> bool:
        return s in self.sections


def _l2_ball_coefficients(p: Params, n: int) -> list[tuple[int, ...]]:
    """Every integer coefficient vector with L2 norm at most 1, by a recursive
    walk over residual quadratic budget (exact for rational parameters)."""
    if p.is_exact:
        weights = [1 / _exact_semi_axis_sq(p, n, i) for i in range(n + 1)]
        one = Fraction(1)
    else:
        weights = [
            math.exp(-_log_semi_axis_sq(p, n, i)) for i in range(n + 1)
        ]
        one = 1.0 + 1e-12  # slack so float round-off cannot drop boundary members
    out: list[tuple[int, ...]] = []
    prefix = [0] * (n + 1)

    def walk(i: int, budget) -> None:
        if i > n:
            out.append(tuple(prefix))
            return
        w = weights[i]
        bound = budget / w
        k = math.isqrt(int(bound)) if isinstance(bound, Fraction) else int(math.sqrt(bound))
        while w * (k + 1) * (k + 1) <= budget:
            k += 1
        while k > 0 and w * k * k > budget:
            k -= 1
        for c in range(-k, k + 1):
            prefix[i] = c
            walk(i + 1, budget - w * c * c)
        prefix[i] = 0

    walk(0, one)
    out.sort()
    return out


def _quick_sphere_grid(p: Params, n: int, radial: int = 48, angular: int = 48):
    """Shared evaluation grid for cheap sup-norm lower bounds: complex powers
    matrix Z[k, g] = z_g^(n-k) and the radial weight exp(-n g)."""
    a, b = p.af, p.bf
    half_width = 0.5 * math.log(max(n, 1)) + 14.0
    center = 0.5 * math.log(b / a)
    rho = np.linspace(center - half_width, center + half_width, radial)
    t = np.linspace(0.0, 2.0 * math.pi, angular, endpoint=False)
    z = np.exp(rho[:, None] + 1j * t[None, :]).ravel()
    m = np.abs(z) ** 2
    g = np.where(m >= 1.0, np.log(a + b / m), np.log(a * m + b) - np.log(m))
    weight = np.exp(-n * g)
    powers = z[None, :] ** (n - np.arange(n + 1))[:, None]
    return powers, weight


def h0_enumerate(
    p: Params,
    n: int,
    norm: str = "sup",
    tol: Tolerance = DEFAULT_TOL,
    cap: int = 6,
    candidates: str = "all",
) -> H0Enumeration:
    """All integer sections at level n with the chosen norm at most 1.

    The L2 constraint boxes every coefficient (c_i^2 <= R_i), and since the
    volume form has total mass 1 the L2 ball contains the sup ball, so both
    modes start from the same exact recursive walk.  Sup mode then filters:
    closed-form values for monomials, a weighted triangle inequality as an
    upper certificate, a shared coarse sphere grid as a lower certificate,
    and the full maximizer for the remaining near-ties.  Measured sup norms
    within the tolerance band of 1 are reported as boundary-uncertain (ties
    cannot be resolved in floating point, and membership is non-strict).

    candidates="monomials" restricts the walk to the monomial axes, the only
    regime that stays tractable once the ball holds millions of sections.
    """
    if norm not in ("sup", "l2"):
        raise DomainError(f"norm must be 'sup' or 'l2', got {norm!r}")
    if candidates not in ("all", "monomials"):
        raise DomainError(f"candidates must be 'all' or 'monomials', got {candidates!r}")
    if n > cap:
        raise CapError(f"level {n} above the enumeration cap {cap}")
    band = max(tol.abs_tol, tol.rel_tol)

    if candidates == "monomials":
        coeff_vectors = [tuple([0] * (n + 1))]
        for i in range(n + 1):
            if p.is_exact:
                ok = 1 / _exact_semi_axis_sq(p, n, i) <= 1
            else:
                ok = _log_semi_axis_sq(p, n, i) >= 0.0
            if not ok:
                continue
            for sgn in (-1, 1):
                vec = [0] * (n + 1)
                vec[i] = sgn
                coeff_vectors.append(tuple(vec))
        coeff_vectors.sort()
    else:
        coeff_vectors = _l2_ball_coefficients(p, n)

    if norm == "l2":
        sections = [IntegerSection(n, c) for c in coeff_vectors]
        uncertain = []
        if not p.is_exact:
            for s in sections:
                if s.is_zero:
                    continue
                v = section_l2_norm_sq(p, s)
                if abs(math.sqrt(v) - 1.0) <= band:
                    uncertain.append(s)
        return H0Enumeration("l2", sections, uncertain)

    sup_mono_sq = [math.exp(-n * phi(p, i / n)) for i in range(n + 1)]
    sup_mono = [math.sqrt(v) for v in sup_mono_sq]
    powers = weight = None
    kept: list[IntegerSection] = []
    uncertain = []

    def decide(value_sq: float) -> tuple[bool, bool]:
        norm_val = math.sqrt(value_sq)
        return norm_val <= 1.0 + band, abs(norm_val - 1.0) <= band

    for c in coeff_vectors:
        s = IntegerSection(n, c)
        if s.is_zero:
            kept.append(s)
            continue
        mono = s.as_monomial()
        if mono is not None:
            i, ci = mono
            inside, tie = decide(ci * ci * sup_mono_sq[i])
            if inside:
                kept.append(s)
                if tie:
                    uncertain.append(s)
            continue
        triangle = sum(abs(ci) * sup_mono[i] for i, ci in enumerate(c))
        if triangle <= 1.0:
            kept.append(s)
            if triangle >= 1.0 - band:
                uncertain.append(s)
            continue
        if powers is None:
            powers, weight = _quick_sphere_grid(p, n)
        values = np.asarray(c, dtype=float) @ powers
        coarse = float(np.max(np.abs(values) ** 2 * weight))
        if math.sqrt(coarse) > 1.0 + band:
            continue
        inside, tie = decide(section_sup_norm_sq(p, s, tol))
        if inside:
            kept.append(s)
            if tie:
                uncertain.append(s)
    return H0Enumeration("sup", kept, uncertain)
