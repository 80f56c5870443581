"""Explicit Zariski decomposition of the divisor family.

The positive part replaces the Green function by a three-piece radial
profile: pure logs of slopes theta and vartheta inside and outside two
breakpoint radii, the original Green function on the middle annulus.  The
remainder g - p is a nonnegative function (the negative part carries no
divisor here beyond its pole bookkeeping), and nefness of the positive part
is witnessed numerically: vanishing regularized degrees at the two fiber
points, effectivity after subtracting theta times the principal log, and
discrete sub-mean-value inequalities at the breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .charfun import (
    INFINITY,
    Params,
    ThetaInterval,
    ThetaKind,
    green_g,
    green_g_radial,
    theta_interval,
)
from .errors import DomainError, NoDecompositionError

__all__ = [
    "PieceKind",
    "ProfilePiece",
    "GreenProfile",
    "ArithRDivisor",
    "ZariskiDecomposition",
    "NefWitnessReport",
    "LimitEntry",
    "LimitReport",
    "zariski_exists",
    "breakpoint_radii",
    "positive_part",
    "zariski_decomposition",
    "eval_positive_green",
    "eval_r1",
    "eval_r2",
    "negative_green",
    "nef_witness",
    "limit_positive_parts",
]


class PieceKind(Enum):
    PURE_LOG = "pure_log"
    FULL_GREEN = "full_green"


@dataclass(frozen=True)
class ProfilePiece:
    """One radial piece: -kappa * log|z|^2 (pure log) or the full Green value,
    on the radius interval (r_lo, r_hi]."""

    r_lo: float
    r_hi: float
    kind: PieceKind
    kappa: float = 0.0


@dataclass(frozen=True)
class GreenProfile:
    """Piecewise-radial Green data; the pieces tile (0, inf) and agree at the
    shared radii (continuity is a checked invariant, not an assumption)."""

    a: float
    b: float
    pieces: tuple[ProfilePiece, ...]

    def __post_init__(self):
        if not self.pieces:
            raise DomainError("profile needs at least one piece")
        if self.pieces[0].r_lo != 0.0 or self.pieces[-1].r_hi != math.inf:
            raise DomainError("pieces must tile (0, inf)")
        for left, right in zip(self.pieces, self.pieces[1:]):
            if left.r_hi != right.r_lo:
                raise DomainError("pieces must abut")

    def piece_at(self, r: float) -> ProfilePiece:
        if r <= 0.0 or not math.isfinite(r):
            raise DomainError(f"radius must be positive and finite, got {r}")
        for piece in self.pieces:
            if r <= piece.r_hi:
                return piece
        return self.pieces[-1]

    def value_at_radius(self, r: float) -> float:
        piece = self.piece_at(r)
        if piece.kind is PieceKind.PURE_LOG:
            return -2.0 * piece.kappa * math.log(r)
        return _full_green_radial(self.a, self.b, r)

    def radial_values(self, r: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over an array of positive radii."""
        r = np.asarray(r, dtype=float)
        out = np.empty_like(r)
        for piece in self.pieces:
            mask = (r > piece.r_lo) & (r <= piece.r_hi)
            if piece is self.pieces[0]:
                mask |= r <= piece.r_lo
            if not mask.any():
                continue
            if piece.kind is PieceKind.PURE_LOG:
                out[mask] = -2.0 * piece.kappa * np.log(r[mask])
            else:
                out[mask] = green_g_radial(Params(self.a, self.b), r[mask])
        return out


def _full_green_radial(a: float, b: float, r: float) -> float:
    if r >= 1.0:
        ir = 1.0 / r
        return math.log(a + b * ir * ir)
    return math.log(a * r * r + b) - 2.0 * math.log(r)


@dataclass(frozen=True)
class ArithRDivisor:
    """Divisor coefficients at the two fiber points plus the radial Green
    profile; the profile has a log pole of slope c0 at the origin and cinf at
    infinity, so the regularized slots below stay finite."""

    c0: float
    cinf: float
    green: GreenProfile

    def reg_at_zero(self) -> float:
        """Limit of profile + c0 * log|z|^2 at the origin."""
        first = self.green.pieces[0]
        if first.kind is PieceKind.PURE_LOG:
            slope = self.c0 - first.kappa
            if slope == 0.0:
                return 0.0
            return -math.inf if slope > 0.0 else math.inf
        slope = self.c0 - 1.0
        if slope == 0.0:
            return math.log(self.green.b)
        return -math.inf if slope > 0.0 else math.inf

    def reg_at_infinity(self) -> float:
        """Limit of profile - cinf * log|z|^2 at infinity."""
        last = self.green.pieces[-1]
        if last.kind is PieceKind.PURE_LOG:
            slope = -self.cinf - last.kappa
            if slope == 0.0:
                return 0.0
            return math.inf if slope > 0.0 else -math.inf
        slope = -self.cinf
        if slope == 0.0:
            return math.log(self.green.a)
        return math.inf if slope > 0.0 else -math.inf


@dataclass(frozen=True)
class ZariskiDecomposition:
    """Positive part plus the remainder Green function g - p (the divisor
    component of the remainder is pole bookkeeping only)."""

    exists: bool
    positive: ArithRDivisor | None
    negative_green: Callable[[object], float] | None


def zariski_exists(p: Params) -> bool:
    """The decomposition exists exactly on and above the boundary a + b = 1."""
    return p.boundary_side() >= 0


def breakpoint_radii(
    p: Params, theta: ThetaInterval | None = None
) -> tuple[float, float]:
    """Inner and outer breakpoint radii of the positive-part profile.

    r_in = sqrt(b (1 - theta) / (a theta)) with r_in = 0 when theta = 1, and
    r_out = sqrt(b (1 - vartheta) / (a vartheta)) with r_out = inf when
    vartheta = 0, so the profile specializes to the full Green function for
    nef pairs.
    """
    if theta is None:
        theta = theta_interval(p)
    if theta.is_empty:
        raise NoDecompositionError("empty nonnegativity window (a + b < 1)")
    a, b = p.af, p.bf
    th, vt = theta.upper, theta.lower
    r_in = 0.0 if th >= 1.0 else math.sqrt(b * (1.0 - th) / (a * th))
    r_out = math.inf if vt <= 0.0 else math.sqrt(b * (1.0 - vt) / (a * vt))
    return r_in, r_out


def positive_part(p: Params, theta: ThetaInterval | None = None) -> ArithRDivisor:
    """The positive part: coefficients (theta, -vartheta) and the three-piece
    profile, with empty pieces dropped and equal-slope neighbours merged (on
    the boundary a + b = 1 the whole profile collapses to the pure log of
    slope b)."""
    if not zariski_exists(p):
        raise NoDecompositionError("requires a + b >= 1")
    if theta is None:
        theta = theta_interval(p)
    th, vt = theta.upper, theta.lower
    r_in, r_out = breakpoint_radii(p, theta)
    pieces: list[ProfilePiece] = []
    if r_in > 0.0:
        pieces.append(ProfilePiece(0.0, r_in, PieceKind.PURE_LOG, th))
    if r_in < r_out:
        pieces.append(ProfilePiece(r_in, min(r_out, math.inf), PieceKind.FULL_GREEN))
    if math.isfinite(r_out):
        pieces.append(ProfilePiece(r_out, math.inf, PieceKind.PURE_LOG, vt))
    merged: list[ProfilePiece] = []
    for piece in pieces:
        if (
            merged
            and merged[-1].kind is PieceKind.PURE_LOG
            and piece.kind is PieceKind.PURE_LOG
            and merged[-1].kappa == piece.kappa
        ):
            merged[-1] = ProfilePiece(
                merged[-1].r_lo, piece.r_hi, PieceKind.PURE_LOG, piece.kappa
            )
        else:
            merged.append(piece)
    profile = GreenProfile(p.af, p.bf, tuple(merged))
    return ArithRDivisor(c0=th, cinf=-vt, green=profile)


def eval_positive_green(d: ArithRDivisor, z) -> float:
    """Positive-part Green value at z (complex) or INFINITY.

    +inf at the origin when the pole slope is positive; at infinity the value
    follows the outermost piece (-inf for a positive outer slope, the smooth
    Green limit log a otherwise).
    """
    if z is INFINITY:
        last = d.green.pieces[-1]
        if last.kind is PieceKind.FULL_GREEN:
            return math.log(d.green.a)
        if last.kappa == 0.0:
            return 0.0
        return -math.inf if last.kappa > 0.0 else math.inf
    r = abs(z)
    if r == 0.0:
        first = d.green.pieces[0]
        if first.kind is PieceKind.FULL_GREEN:
            return math.inf
        if first.kappa == 0.0:
            return 0.0
        return math.inf if first.kappa > 0.0 else -math.inf
    return d.green.value_at_radius(r)


def zariski_decomposition(p: Params) -> ZariskiDecomposition:
    """Assemble existence flag, positive part, and the remainder function."""
    if not zariski_exists(p):
        return ZariskiDecomposition(False, None, None)
    theta = theta_interval(p)
    d = positive_part(p, theta)
    return ZariskiDecomposition(True, d, lambda z: negative_green(p, d, z))


def eval_r1(p: Params, theta: ThetaInterval, z) -> float:
    """Inner comparison function: 0 on the closed inner disc, then
    theta * log|z|^2 + log(a + b/|z|^2) on the middle annulus.

    Nonnegative on its domain {|z| < r_out}, vanishing exactly at the inner
    breakpoint (for theta = 1 the inner disc is empty and the value at the
    origin is log b).
    """
    if z is INFINITY:
        raise DomainError("the inner comparison function is not defined at infinity")
    r_in, r_out = breakpoint_radii(p, theta)
    r = abs(z)
    if math.isfinite(r_out) and r >= r_out:
        raise DomainError(f"|z| = {r} outside the domain (need |z| < {r_out})")
    th = theta.upper
    if r_in > 0.0 and r <= r_in:
        return 0.0
    a, b = p.af, p.bf
    if r == 0.0:
        return math.log(b)  # theta = 1 limit
    if r >= 1.0:
        ir = 1.0 / r
        return 2.0 * th * math.log(r) + math.log(a + b * ir * ir)
    return -2.0 * (1.0 - th) * math.log(r) + math.log(a * r * r + b)


def eval_r2(p: Params, theta: ThetaInterval, z) -> float:
    """Outer comparison function, symmetric to eval_r1: the slope-adjusted
    Green value on the middle annulus, 0 beyond the outer breakpoint,
    vanishing at infinity (log a when vartheta = 0 leaves no outer piece)."""
    r_in, r_out = breakpoint_radii(p, theta)
    vt = theta.lower
    a, b = p.af, p.bf
    if z is INFINITY:
        if math.isfinite(r_out):
            return 0.0
        return math.log(a)  # vartheta = 0 limit of the annulus formula
    r = abs(z)
    if r <= r_in:
        raise DomainError(f"|z| = {r} outside the domain (need |z| > {r_in})")
    if math.isfinite(r_out) and r >= r_out:
        return 0.0
    if r >= 1.0:
        ir = 1.0 / r
        return 2.0 * vt * math.log(r) + math.log(a + b * ir * ir)
    return -2.0 * (1.0 - vt) * math.log(r) + math.log(a * r * r + b)


def negative_green(p: Params, d: ArithRDivisor, z) -> float:
    """Remainder g - p: nonnegative, identically zero exactly for nef pairs.

    At the origin and at infinity the log poles of g and p differ, so the
    regularized slots are returned there: log b - reg0(p) at the origin and
    log a - reginf(p) at infinity, both finite.
    """
    if not zariski_exists(p):
        raise NoDecompositionError("requires a + b >= 1")
    if z is INFINITY:
        return math.log(p.af) - d.reg_at_infinity()
    if abs(z) == 0.0:
        return math.log(p.bf) - d.reg_at_zero()
    return green_g(p, z) - eval_positive_green(d, z)


@dataclass(frozen=True)
class NefWitnessReport:
    """Outcome of the numeric nefness checks for a positive part."""

    degree_zero: float
    degree_zero_expected: float
    degree_zero_ok: bool
    degree_inf: float
    degree_inf_expected: float
    degree_inf_ok: bool
    effectivity_min: float
    effectivity_ok: bool
    submean_gap: float
    submean_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.degree_zero_ok
            and self.degree_inf_ok
            and self.effectivity_ok
            and self.submean_ok
        )


def _circle_average(profile: GreenProfile, center: float, eps: float, samples: int) -> float:
    ts = 2.0 * math.pi * np.arange(samples) / samples
    radii = np.abs(center + eps * np.exp(1j * ts))
    return float(profile.radial_values(radii).mean())


def nef_witness(p: Params, d: ArithRDivisor, samples: int = 2048) -> NefWitnessReport:
    """Numeric nefness witnesses for a positive part.

    (i) Regularized degrees at the two fiber points, measured as a limit
    along radii 10^-k: zero when the corresponding pure-log piece exists,
    log b (resp. log a) in the degenerate theta = 1 (resp. vartheta = 0)
    cases; all cases nonnegative within 1e-9.  (ii) Effectivity of the
    profile plus theta times the principal log on log-spaced radii (slack
    1e-12).  (iii) Discrete sub-mean-value inequality at every breakpoint and
    at a piece-interior point, circle radius r/100, 720 angles, slack 1e-9.
    """
    if not zariski_exists(p):
        raise NoDecompositionError("requires a + b >= 1")
    th = d.c0
    vt = -d.cinf
    profile = d.green

    # (i) regularized degrees as numeric limits
    r_small = 10.0 ** -np.arange(4, 9)
    vals0 = profile.radial_values(r_small) + th * 2.0 * np.log(r_small)
    deg0 = float(vals0[-1])
    expected0 = 0.0 if th < 1.0 else math.log(p.bf)
    r_large = 10.0 ** np.arange(4, 9)
    valsi = profile.radial_values(r_large) + vt * 2.0 * np.log(r_large)
    degi = float(valsi[-1])
    expected_inf = 0.0 if vt > 0.0 else math.log(p.af)
    deg0_ok = abs(deg0 - expected0) <= 1e-9 and deg0 >= -1e-9
    degi_ok = abs(degi - expected_inf) <= 1e-9 and degi >= -1e-9

    # (ii) effectivity of profile + theta * log|z|^2
    radii = np.logspace(-6.0, 6.0, samples)
    shifted = profile.radial_values(radii) + th * 2.0 * np.log(radii)
    eff_min = float(shifted.min())
    eff_ok = eff_min >= -1e-12

    # (iii) discrete sub-mean-value at breakpoints and piece interiors
    gap = -math.inf
    probes: list[float] = []
    for piece in profile.pieces:
        if piece.r_lo > 0.0:
            probes.append(piece.r_lo)
        lo = piece.r_lo if piece.r_lo > 0.0 else min(0.5, piece.r_hi / 2.0)
        hi = piece.r_hi if math.isfinite(piece.r_hi) else max(2.0, 2.0 * lo)
        probes.append(math.sqrt(lo * hi) if lo > 0.0 else hi / 2.0)
    for r0 in probes:
        avg = _circle_average(profile, r0, r0 / 100.0, 720)
        gap = max(gap, profile.value_at_radius(r0) - avg)
    submean_ok = gap <= 1e-9

    return NefWitnessReport(
        degree_zero=deg0,
        degree_zero_expected=expected0,
        degree_zero_ok=deg0_ok,
        degree_inf=degi,
        degree_inf_expected=expected_inf,
        degree_inf_ok=degi_ok,
        effectivity_min=eff_min,
        effectivity_ok=eff_ok,
        submean_gap=gap,
        submean_ok=submean_ok,
    )


@dataclass(frozen=True)
class LimitEntry:
    t: float
    theta_gap: float
    vartheta_gap: float
    green_sup_distance: float


@dataclass(frozen=True)
class LimitReport:
    """Convergence data for positive parts of scaled boundary pairs."""

    annulus: tuple[float, float]
    entries: tuple[LimitEntry, ...]

    @property
    def gaps_decreasing(self) -> bool:
        ths = [e.theta_gap for e in self.entries]
        vts = [e.vartheta_gap for e in self.entries]
        return all(x > y for x, y in zip(ths, ths[1:])) and all(
            x > y for x, y in zip(vts, vts[1:])
        )

    @property
    def distance_decreasing(self) -> bool:
        ds = [e.green_sup_distance for e in self.entries]
        return all(x > y for x, y in zip(ds, ds[1:]))


def limit_positive_parts(
    p: Params,
    t_sequence: Sequence[float],
    annulus: tuple[float, float] = (0.5, 2.0),
    samples: int = 512,
) -> LimitReport:
    """Track positive parts of (t a, t b) as t decreases to 1 on the boundary
    a + b = 1.

    For each t the report records |theta_t - b|, |vartheta_t - b| and the sup
    distance of the scaled profile to the limiting pure log of slope b over a
    fixed compact annulus.  The window endpoints converge like
    sqrt(2 b (1-b) log t), so the distances shrink at a square-root rate.
    """
    if p.boundary_side() != 0:
        raise DomainError("requires a + b = 1")
    ts = [float(t) for t in t_sequence]
    if any(t <= 1.0 for t in ts):
        raise DomainError("scale factors must exceed 1")
    if any(x <= y for x, y in zip(ts, ts[1:])):
        raise DomainError("scale factors must decrease toward 1")
    slope = p.bf / (p.af + p.bf)
    radii = np.logspace(math.log10(annulus[0]), math.log10(annulus[1]), samples)
    target = -2.0 * slope * np.log(radii)
    entries = []
    for t in ts:
        pt = Params(p.af * t, p.bf * t)
        theta_t = theta_interval(pt)
        d = positive_part(pt, theta_t)
        dist = float(np.max(np.abs(d.green.radial_values(radii) - target)))
        entries.append(
            LimitEntry(
                t=t,
                theta_gap=abs(theta_t.upper - slope),
                vartheta_gap=abs(theta_t.lower - slope),
                green_sup_distance=dist,
            )
        )
    return LimitReport(annulus=annulus, entries=tuple(entries))
