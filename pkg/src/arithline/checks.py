"""Invariant suites behind the `verify` command.

Each suite re-derives a family of identities by an independent route (brute
force, quadrature, finite differences, dense sampling) and compares against
the library's primary implementations.  All randomness is seeded, so a suite
either passes deterministically or fails deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charfun import (
    INFINITY,
    Params,
    ThetaKind,
    GeographyClass,
    classify,
    green_g,
    green_g_radial,
    phi,
    scaling_combine,
    theta_interval,
)
from .errors import BracketError
from .numerics import (
    DEFAULT_TOL,
    Tolerance,
    binomial_integral_bounds,
    find_root_monotone,
    integrate_adaptive,
    log_binomial,
    log_binomial_exact,
    log_binomial_lgamma,
)
from .sections import (
    IntegerSection,
    MonomialBasisElement,
    h0_enumerate,
    h0_monomial_span,
    inner_product_quadrature,
    monomial_l2_norm_sq,
    monomial_sup_norm_sq,
    radial_integral_quadrature,
    section_l2_norm_sq,
    section_product,
    section_sup_norm_sq,
)
from .volume import (
    phi_antiderivative,
    selfint_degree,
    volume_closed,
    volume_lattice_estimate,
    volume_quadrature,
)
from .zariski import (
    PieceKind,
    breakpoint_radii,
    eval_r1,
    eval_r2,
    nef_witness,
    positive_part,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "run_suites"]

_SEED = 20251204


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _result(suite: str, name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(suite, name, bool(passed), detail)


def _random_params(rng, count, big=False, lo=-1.5, hi=1.5):
    out = []
    while len(out) < count:
        a = math.exp(rng.uniform(lo, hi))
        b = math.exp(rng.uniform(lo, hi))
        if big and a + b <= 1.0:
            continue
        out.append(Params(a, b))
    return out


# ----------------------------------------------------------------- numerics


def suite_numerics() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED)
    results = []

    worst = 0.0
    for _ in range(50):
        c = rng.uniform(0.05, 0.95)
        root = find_root_monotone(lambda x: x - c, 0.0, 1.0)
        worst = max(worst, abs(root - c))
    results.append(
        _result("numerics", "root bracketing", worst <= 1e-11, f"worst |x-c|={worst:.2e}")
    )

    try:
        find_root_monotone(lambda x: x * x, 0.0, 1.0)
        results.append(_result("numerics", "bracket rejection", False, "no error raised"))
    except BracketError:
        results.append(_result("numerics", "bracket rejection", True))

    worst = 0.0
    for _ in range(20):
        a0, a1 = rng.uniform(-2, 2, size=2)
        f = lambda x: math.sin(3.0 * x) + x * x
        g = lambda x: math.cos(2.0 * x)
        lhs = integrate_adaptive(lambda x: a0 * f(x) + a1 * g(x), 0.0, 1.5)
        rhs = a0 * integrate_adaptive(f, 0.0, 1.5) + a1 * integrate_adaptive(g, 0.0, 1.5)
        worst = max(worst, abs(lhs - rhs))
    results.append(
        _result(
            "numerics",
            "quadrature linearity",
            worst <= 2.0 * DEFAULT_TOL.rel_tol,
            f"worst residual={worst:.2e}",
        )
    )

    sym_ok = all(
        log_binomial(n, i) == log_binomial(n, n - i)
        for n in range(0, 65, 8)
        for i in range(n + 1)
    )
    results.append(_result("numerics", "log binomial symmetry", sym_ok))

    worst = 0.0
    for n in range(16, 65, 6):
        for i in range(0, n + 1, 5):
            e = log_binomial_exact(n, i)
            l = log_binomial_lgamma(n, i)
            if e != 0.0:
                worst = max(worst, abs(e - l) / abs(e))
    results.append(
        _result("numerics", "binomial path agreement", worst <= 1e-12, f"worst rel={worst:.2e}")
    )

    tol = Tolerance(abs_tol=1e-11, rel_tol=1e-11)
    ok = True
    worst = ""
    for _ in range(60):
        n = int(rng.integers(1, 501))
        i = int(rng.integers(0, n + 1))
        lower, upper = binomial_integral_bounds(n, i, tol)
        v = log_binomial(n, i) / (n + 1.0)
        if not (lower - 1e-9 <= v <= upper + 1e-9):
            ok = False
            worst = f"n={n}, i={i}: {lower} !<= {v} !<= {upper}"
            break
    results.append(_result("numerics", "binomial integral sandwich", ok, worst))
    return results


# ------------------------------------------------------------------ charfun


def suite_charfun() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED + 1)
    results = []

    worst = 0.0
    for p in _random_params(rng, 200):
        t = math.exp(rng.uniform(-1.5, 1.5))
        x = rng.uniform(0.0, 1.0)
        worst = max(
            worst,
            abs(phi(Params(p.af * t, p.bf * t), x) - phi(p, x) - math.log(t)),
        )
    results.append(
        _result("charfun", "scaling identity", worst <= 1e-13, f"worst={worst:.2e}")
    )

    worst = 0.0
    for p in _random_params(rng, 200):
        x = rng.uniform(0.0, 1.0)
        worst = max(worst, abs(phi(p, x) - phi(Params(p.b, p.a), 1.0 - x)))
    results.append(
        _result("charfun", "mirror symmetry", worst <= 1e-13, f"worst={worst:.2e}")
    )

    ok = True
    detail = ""
    for p in _random_params(rng, 1000, big=True):
        theta = theta_interval(p)
        tol10 = 10.0 * theta.solver_tol
        if theta.lower > 0.0 and phi(p, theta.lower - tol10) >= 0.0:
            ok, detail = False, f"{p} lower endpoint not crossing"
            break
        if phi(p, 0.5 * (theta.lower + theta.upper)) <= 0.0:
            ok, detail = False, f"{p} midpoint not interior"
            break
    results.append(_result("charfun", "window consistency", ok, detail))

    ok = True
    detail = ""
    probes = _random_params(rng, 300) + [
        Params(Fraction(1, 2), Fraction(1, 2)),
        Params(Fraction(3, 10), Fraction(3, 10)),
        Params(1, 1),
    ]
    for p in probes:
        cls = classify(p)
        kind = theta_interval(p).kind
        pairs_ok = (
            (kind is ThetaKind.EMPTY) == (cls is GeographyClass.NOT_PSEUDO_EFFECTIVE)
            and (kind is ThetaKind.POINT)
            == (cls is GeographyClass.PSEUDO_EFFECTIVE_BOUNDARY)
        )
        if not pairs_ok:
            ok, detail = False, f"{p}: {cls} vs {kind}"
            break
    results.append(_result("charfun", "classes match window kinds", ok, detail))

    worst = 0.0
    for _ in range(100):
        p = _random_params(rng, 1)[0]
        alpha, beta = rng.uniform(-2, 2, size=2)
        if abs(alpha + beta) < 1e-3:
            beta += 1.0
        t, s = math.exp(rng.uniform(-1, 1)), math.exp(rng.uniform(-1, 1))
        q = scaling_combine(alpha, t, beta, s, p)
        z = complex(rng.normal(), rng.normal())
        if abs(z) < 1e-3:
            z += 0.5
        lhs = alpha * green_g(Params(p.af * t, p.bf * t), z) + beta * green_g(
            Params(p.af * s, p.bf * s), z
        )
        rhs = (alpha + beta) * green_g(q, z)
        worst = max(worst, abs(lhs - rhs))
    results.append(
        _result("charfun", "green scaling identity", worst <= 1e-12, f"worst={worst:.2e}")
    )
    return results


# ----------------------------------------------------------------- sections


def suite_sections() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED + 2)
    results = []

    worst = 0.0
    grid = [0.5, 1.0, 2.0]
    for a in grid:
        for b in grid:
            p = Params(a, b)
            for n in range(1, 26):
                for i in range(n + 1):
                    closed = float(monomial_l2_norm_sq(p, MonomialBasisElement(n, i)))
                    quad = radial_integral_quadrature(p, i, n)
                    worst = max(worst, abs(quad - closed) / closed)
    results.append(
        _result("sections", "l2 closed form vs quadrature", worst <= 1e-8, f"worst rel={worst:.2e}")
    )

    worst = 0.0
    p = Params(0.8, 1.7)
    for n in range(1, 11):
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                val = abs(
                    inner_product_quadrature(
                        p, MonomialBasisElement(n, i), MonomialBasisElement(n, j)
                    )
                )
                geo = math.sqrt(
                    float(monomial_l2_norm_sq(p, MonomialBasisElement(n, i)))
                    * float(monomial_l2_norm_sq(p, MonomialBasisElement(n, j)))
                )
                worst = max(worst, val / geo)
    results.append(
        _result("sections", "angular orthogonality", worst <= 1e-10, f"worst ratio={worst:.2e}")
    )

    ok = True
    detail = ""
    for _ in range(500):
        p = _random_params(rng, 1)[0]
        n = int(rng.integers(1, 9))
        coeffs = tuple(int(c) for c in rng.integers(-3, 4, size=n + 1))
        s = IntegerSection(n, coeffs)
        if s.is_zero:
            continue
        l2 = float(section_l2_norm_sq(p, s))
        sup = section_sup_norm_sq(p, s, grid=64, refine_iters=40)
        if l2 > sup * (1.0 + 1e-9):
            ok, detail = False, f"{p} {coeffs}: {l2} > {sup}"
            break
    results.append(_result("sections", "l2 below sup", ok, detail))

    worst = 0.0
    for a, b in [(1.0, 1.0), (0.7, 1.9), (2.0, 0.5)]:
        p = Params(a, b)
        for n in range(1, 21, 3):
            for i in range(0, n + 1, max(1, n // 4)):
                m = MonomialBasisElement(n, i)
                closed = monomial_sup_norm_sq(p, m)
                vec = [0] * (n + 1)
                vec[i] = 1
                measured = section_sup_norm_sq(p, IntegerSection(n, tuple(vec)))
                worst = max(worst, abs(measured - closed) / closed)
    results.append(
        _result("sections", "monomial sup closed vs maximizer", worst <= 1e-8, f"worst rel={worst:.2e}")
    )

    ok = True
    detail = ""
    for p in [Params(1, 1), Params(Fraction(1, 2), Fraction(1, 2)), Params(Fraction(3, 5), Fraction(3, 5))]:
        for n in range(1, 4):
            sup_res = h0_enumerate(p, n, norm="sup")
            l2_res = h0_enumerate(p, n, norm="l2")
            momo = {
                s.as_monomial()[0]
                for s in sup_res.sections
                if not s.is_zero and s.as_monomial() is not None
            }
            try:
                span = set(h0_monomial_span(p, n))
            except Exception:
                span = set()
            if momo != span:
                ok, detail = False, f"{p} n={n}: {momo} != {span}"
                break
            if any(s not in l2_res.sections for s in sup_res.sections):
                ok, detail = False, f"{p} n={n}: sup ball leaves the l2 ball"
                break
        if not ok:
            break
    results.append(_result("sections", "sup ball monomials match span", ok, detail))

    ok = True
    detail = ""
    for p in [Params(1, 1), Params(Fraction(1, 2), Fraction(1, 2))]:
        for n in (1, 2, 3):
            for s in h0_enumerate(p, n, norm="sup").sections:
                if s.is_zero:
                    continue
                sq = section_product(s, s)
                v = section_sup_norm_sq(p, sq)
                if v > 1.0 + 1e-8:
                    ok, detail = False, f"{p} {s.coeffs}: square has sup^2 {v}"
                    break
    results.append(_result("sections", "power stability", ok, detail))
    return results


# ------------------------------------------------------------------- volume


def suite_volume() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED + 3)
    results = []

    worst = 0.0
    for p in _random_params(rng, 40):
        x = rng.uniform(1e-3, 1.0 - 1e-3)
        h = 1e-6
        deriv = (phi_antiderivative(p, x + h) - phi_antiderivative(p, x - h)) / (2 * h)
        worst = max(worst, abs(deriv - phi(p, x)))
    results.append(
        _result("volume", "antiderivative differentiates back", worst <= 1e-7, f"worst={worst:.2e}")
    )

    worst = 0.0
    vals = np.exp(np.linspace(math.log(0.1), math.log(4.0), 20))
    for a in vals:
        for b in vals:
            p = Params(float(a), float(b))
            worst = max(worst, abs(volume_closed(p) - volume_quadrature(p)))
    results.append(
        _result("volume", "closed vs quadrature grid", worst <= 1e-9, f"worst={worst:.2e}")
    )

    # The window integral drops the negative part of the integrand, so it
    # dominates the full-interval integral, with equality exactly for nef pairs.
    ok = True
    detail = ""
    for p in _random_params(rng, 200):
        v = volume_closed(p)
        d = selfint_degree(p)
        if v < d - 1e-10:
            ok, detail = False, f"{p}: window integral below self-intersection"
            break
        nef = classify(p) in (GeographyClass.AMPLE, GeographyClass.NEF_NOT_AMPLE)
        if nef and abs(v - d) > 1e-10:
            ok, detail = False, f"{p}: nef but volume != self-intersection"
            break
    witness = Params(0.6, 0.6)
    if volume_closed(witness) - selfint_degree(witness) <= 1e-3:
        ok, detail = False, "non-nef witness failed to separate the two integrals"
    results.append(_result("volume", "window integral vs self-intersection", ok, detail))

    ok = True
    detail = ""
    for _ in range(500):
        p = _random_params(rng, 1)[0]
        q = Params(p.af * math.exp(rng.uniform(0, 0.5)), p.bf * math.exp(rng.uniform(0, 0.5)))
        if volume_closed(q) < volume_closed(p) - 1e-12:
            ok, detail = False, f"{p} -> {q} decreased the volume"
            break
    results.append(_result("volume", "monotone in the weights", ok, detail))

    ok = True
    detail = ""
    for b in (0.5, 0.25, 0.75):
        p = Params(1.0 - b, b)
        vols = [volume_closed(Params(p.af * t, p.bf * t)) for t in (1.1, 1.01, 1.001, 1.0001)]
        if not all(x > y for x, y in zip(vols, vols[1:])) or vols[-1] > 1e-4:
            ok, detail = False, f"b={b}: {vols}"
            break
    results.append(_result("volume", "volume vanishes toward the boundary", ok, detail))

    ok = True
    detail = ""
    for p in [Params(2.0, 2.0), Params(1.0, 1.0), Params(0.9, 0.8)]:
        closed = volume_closed(p)
        for n in (50, 120, 400):
            lo, hi = volume_lattice_estimate(p, n)
            if not lo <= closed <= hi:
                ok, detail = False, f"{p} n={n}: {lo} !<= {closed} !<= {hi}"
                break
    results.append(_result("volume", "lattice sandwich brackets closed form", ok, detail))
    return results


# ------------------------------------------------------------------ zariski


def suite_zariski() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED + 4)
    results = []

    params = _random_params(rng, 1000, big=True)

    worst = 0.0
    for p in params:
        theta = theta_interval(p)
        d = positive_part(p, theta)
        for piece, nxt in zip(d.green.pieces, d.green.pieces[1:]):
            r = piece.r_hi
            left = (
                -2.0 * piece.kappa * math.log(r)
                if piece.kind is PieceKind.PURE_LOG
                else green_g(p, r)
            )
            right = (
                -2.0 * nxt.kappa * math.log(r)
                if nxt.kind is PieceKind.PURE_LOG
                else green_g(p, r)
            )
            worst = max(worst, abs(left - right))
    results.append(
        _result("zariski", "profile continuity", worst <= 1e-9, f"worst={worst:.2e}")
    )

    radii = np.logspace(-2.0, 2.0, 10_000)
    worst = math.inf
    for p in params[:200]:
        d = positive_part(p)
        gap = green_g_radial(p, radii) - d.green.radial_values(radii)
        worst = min(worst, float(gap.min()))
    results.append(
        _result("zariski", "positive part below green", worst >= -1e-12, f"min gap={worst:.2e}")
    )

    ok = True
    detail = ""
    for p in params[:200]:
        theta = theta_interval(p)
        r_in, r_out = breakpoint_radii(p, theta)
        if r_in > 0.0:
            v = eval_r1(p, theta, r_in)
            if abs(v) > 1e-9 or eval_r1(p, theta, 0.0) != 0.0:
                ok, detail = False, f"{p}: inner comparison not vanishing"
                break
        if math.isfinite(r_out):
            v = eval_r2(p, theta, r_out)
            if v < -1e-12 or eval_r2(p, theta, INFINITY) != 0.0:
                ok, detail = False, f"{p}: outer comparison negative"
                break
    results.append(_result("zariski", "comparison functions nonnegative", ok, detail))

    ok = True
    detail = ""
    for p in params[:100]:
        report = nef_witness(p, positive_part(p))
        if not report.all_ok:
            ok, detail = False, f"{p}: {report}"
            break
    results.append(_result("zariski", "nef witnesses", ok, detail))

    ok = True
    detail = ""
    for p in params[:300]:
        if classify(p) in (GeographyClass.AMPLE, GeographyClass.NEF_NOT_AMPLE):
            d = positive_part(p)
            single_full = (
                len(d.green.pieces) == 1
                and d.green.pieces[0].kind is not PieceKind.PURE_LOG
            )
            if not (single_full and d.c0 == 1.0 and d.cinf == 0.0):
                ok, detail = False, f"{p}: nef pair with nontrivial profile"
                break
    results.append(_result("zariski", "nef pairs keep their green function", ok, detail))

    ok = True
    detail = ""
    annulus = np.logspace(math.log10(0.5), math.log10(2.0), 256)
    for b in (0.5, 0.3):
        p = Params(1.0 - b, b)
        prev = None
        for t in (1.01, 1.05, 1.2):
            d = positive_part(Params(p.af * t, p.bf * t))
            vals = d.green.radial_values(annulus)
            if prev is not None and np.any(vals < prev - 1e-12):
                ok, detail = False, f"b={b}, t={t}: profile not monotone in t"
                break
            prev = vals
    results.append(_result("zariski", "profiles grow with the scale", ok, detail))
    return results


SUITES = {
    "numerics": suite_numerics,
    "charfun": suite_charfun,
    "sections": suite_sections,
    "volume": suite_volume,
    "zariski": suite_zariski,
}


def run_suite(name: str) -> list[CheckResult]:
    return SUITES[name]()


def run_suites(names) -> list[CheckResult]:
    out = []
    for name in names:
        out.extend(run_suite(name))
    return out
