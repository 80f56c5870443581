"""Command-line front end.

Every invocation writes a single JSON envelope (or CSV rows for the profile
command) with deterministic field order and full-precision numbers.  Exit
codes: 0 success, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from .charfun import Params, ThetaKind, classify, theta_interval
from .checks import SUITES, run_suites
from .errors import ArithLineError, NoDecompositionError
from .numerics import Tolerance, DEFAULT_TOL
from .sections import (
    h0_enumerate,
    h0_monomial_span,
    h0_nonzero,
    scaled_theta_integers,
)
from .volume import (
    construct_gap_params,
    selfint_degree,
    volume_closed,
    volume_lattice_estimate,
    volume_quadrature,
)
from .zariski import (
    breakpoint_radii,
    negative_green,
    positive_part,
    zariski_exists,
)

__all__ = ["main", "build_parser"]

SCHEMA_VERSION = "1"


def _parse_scalar(text: str):
    """Rational p/q syntax keeps exact arithmetic; anything else is a float."""
    if "/" in text:
        return Fraction(text)
    return float(text)


def _params_from(args) -> Params:
    return Params(_parse_scalar(args.a), _parse_scalar(args.b))


def _tolerance_from(args) -> Tolerance:
    if getattr(args, "tol", None) is None:
        return DEFAULT_TOL
    return Tolerance(abs_tol=args.tol, rel_tol=max(args.tol, 1e-14))


def _envelope(command, args, payload, diagnostics):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": {
            "a": getattr(args, "a", None),
            "b": getattr(args, "b", None),
        },
        "payload": payload,
        "diagnostics": diagnostics,
    }


def _theta_payload(theta) -> dict:
    return {
        "kind": theta.kind.value,
        "lower": theta.lower,
        "upper": theta.upper,
        "solver_tol": theta.solver_tol,
    }


def _cmd_classify(args):
    p = _params_from(args)
    return {"class": classify(p).value}, []


def _cmd_theta(args):
    p = _params_from(args)
    theta = theta_interval(p, _tolerance_from(args))
    return _theta_payload(theta), []


def _cmd_volume(args):
    p = _params_from(args)
    theta = theta_interval(p, _tolerance_from(args))
    diagnostics = []
    if args.method == "closed":
        payload = {"method": "closed", "value": volume_closed(p, theta)}
    elif args.method == "quadrature":
        payload = {"method": "quadrature", "value": volume_quadrature(p, theta)}
    else:
        n = args.n if args.n is not None else 1000
        lo, hi = volume_lattice_estimate(p, n, theta)
        payload = {"method": "lattice", "lower": lo, "upper": hi, "n": n}
        diagnostics.append("lattice bounds converge to the closed form at O(log n / n)")
    return payload, diagnostics


def _cmd_selfint(args):
    p = _params_from(args)
    return {"value": selfint_degree(p)}, []


def _cmd_sections(args):
    p = _params_from(args)
    tol = _tolerance_from(args)
    theta = theta_interval(p, tol)
    n = args.n
    payload = {"n": n, "nonzero": h0_nonzero(p, n, theta)}
    diagnostics = []
    if args.span:
        payload["span"] = h0_monomial_span(p, n, theta)
    if args.enumerate:
        result = h0_enumerate(p, n, norm=args.enumerate, tol=tol)
        payload["norm"] = result.norm
        payload["sections"] = [list(s.coeffs) for s in result.sections]
        if result.boundary_uncertain:
            payload["boundary_uncertain"] = [
                list(s.coeffs) for s in result.boundary_uncertain
            ]
            diagnostics.append(
                f"{len(result.boundary_uncertain)} section(s) sit within tolerance "
                "of the unit-norm boundary"
            )
    return payload, diagnostics


def _profile_rows(p, d, args):
    r_in, r_out = breakpoint_radii(p)
    rmin = args.rmin if args.rmin is not None else (r_in / 10.0 if r_in > 0.0 else 1e-3)
    rmax = args.rmax if args.rmax is not None else (
        10.0 * r_out if math.isfinite(r_out) else 1e3
    )
    samples = args.samples
    radii = np.logspace(math.log10(rmin), math.log10(rmax), samples)
    rows = []
    from .charfun import green_g_radial

    gvals = green_g_radial(p, radii)
    pvals = d.green.radial_values(radii)
    for r, pv, gv in zip(radii, pvals, gvals):
        rows.append((float(r), float(pv), float(gv), float(gv - pv)))
    return rows, r_in, r_out


def _cmd_zariski(args):
    p = _params_from(args)
    if not zariski_exists(p):
        raise NoDecompositionError(
            f"no Zariski decomposition: a + b = {p.af + p.bf} < 1 "
            "(the pair is not pseudo-effective)"
        )
    theta = theta_interval(p, _tolerance_from(args))
    d = positive_part(p, theta)
    rows, r_in, r_out = _profile_rows(p, d, args)
    payload = {
        "theta": _theta_payload(theta),
        "positive": {"c0": d.c0, "cinf": d.cinf},
        "breakpoints": {"r_in": r_in, "r_out": r_out},
        "profile": [
            {
                "r_lo": piece.r_lo,
                "r_hi": piece.r_hi,
                "kind": piece.kind.value,
                "kappa": piece.kappa,
            }
            for piece in d.green.pieces
        ],
        "negative_at_origin": negative_green(p, d, 0.0),
        "samples": [
            {"radius": r, "p": pv, "g": gv, "neg": nv} for r, pv, gv, nv in rows
        ],
    }
    return payload, []


def _cmd_construct_gap(args):
    p = construct_gap_params(args.n)
    theta = theta_interval(p)
    checks = {str(level): h0_nonzero(p, level, theta) for level in range(1, args.n + 1)}
    payload = {
        "a": str(p.a),
        "b": str(p.b),
        "class": classify(p).value,
        "theta": _theta_payload(theta),
        "nonzero_by_level": checks,
    }
    diagnostics = []
    if any(checks.values()):
        diagnostics.append("verification failed: some level admits a section")
    return payload, diagnostics


def _cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(names)
    payload = {
        "results": [
            {"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    diagnostics = [
        f"FAIL {r.suite}/{r.name}: {r.detail}" for r in results if not r.passed
    ]
    return payload, diagnostics


def _add_param_args(sub):
    sub.add_argument("--a", required=True, help="first weight (decimal or rational p/q)")
    sub.add_argument("--b", required=True, help="second weight (decimal or rational p/q)")
    sub.add_argument("--tol", type=float, default=None, help="absolute solver tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arithline",
        description=(
            "Positivity profile of the divisor pair (a, b): geography class, "
            "nonnegativity window, volume, small sections and the Zariski "
            "decomposition."
        ),
    )
    parser.add_argument("--out", default=None, help="write output to this path")
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="csv applies to the profile (zariski) command only",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify", help="geography class of the pair")
    _add_param_args(sub)

    sub = subs.add_parser("theta", help="nonnegativity window of the characteristic function")
    _add_param_args(sub)

    sub = subs.add_parser("volume", help="volume by the chosen method")
    _add_param_args(sub)
    sub.add_argument("--method", choices=("closed", "quadrature", "lattice"), default="closed")
    sub.add_argument("--n", type=int, default=None, help="level for the lattice method")

    sub = subs.add_parser("selfint", help="arithmetic self-intersection number")
    _add_param_args(sub)

    sub = subs.add_parser("sections", help="small-section data at one level")
    _add_param_args(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--enumerate", choices=("sup", "l2"), default=None)
    sub.add_argument("--span", action="store_true")

    sub = subs.add_parser("zariski", help="positive-part profile for plotting")
    _add_param_args(sub)
    sub.add_argument("--samples", type=int, default=512)
    sub.add_argument("--rmin", type=float, default=None)
    sub.add_argument("--rmax", type=float, default=None)

    sub = subs.add_parser("construct-gap", help="big pair with no sections through level n")
    sub.add_argument("--n", type=int, required=True)

    sub = subs.add_parser("verify", help="run the invariant suites")
    sub.add_argument(
        "--suite",
        choices=tuple(SUITES) + ("all",),
        default="all",
    )
    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "theta": _cmd_theta,
    "volume": _cmd_volume,
    "selfint": _cmd_selfint,
    "sections": _cmd_sections,
    "zariski": _cmd_zariski,
    "construct-gap": _cmd_construct_gap,
    "verify": _cmd_verify,
}


def _write(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "zariski":
        parser.error("--format csv is only available for the zariski profile command")
    try:
        payload, diagnostics = _HANDLERS[args.command](args)
    except ArithLineError as exc:
        envelope = _envelope(args.command, args, None, [str(exc)])
        _write(json.dumps(envelope, indent=2), args.out)
        return 3
    if args.command == "zariski" and args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["radius", "p", "g", "neg"])
        for row in payload["samples"]:
            writer.writerow(
                [repr(row["radius"]), repr(row["p"]), repr(row["g"]), repr(row["neg"])]
            )
        _write(buf.getvalue(), args.out)
        return 0
    envelope = _envelope(args.command, args, payload, diagnostics)
    _write(json.dumps(envelope, indent=2), args.out)
    if args.command == "verify" and not payload["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
