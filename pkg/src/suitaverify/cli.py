"""Command-line front end.

Subcommands expose the kernel, Green-function, indicatrix and invariant
computations and write plot-ready CSV/JSON artifacts.  Exit codes: 0 on
success, 1 on validation errors, 2 on numerical failures.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import bergman, domains, green1d, indicatrix, suita
from .domains import Annulus, EllipsoidFamilyParams
from .indicatrix import EnvelopeGapError
from .numerics import BracketError, ConvergenceError, SampleStream, Tolerance

_NUMERICAL_ERRORS = (
    ConvergenceError,
    BracketError,
    green1d.CriticalLevelError,
    EnvelopeGapError,
    ArithmeticError,
)


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def _build_parser():
    parser = _Parser(prog="suitaverify", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-12, help="absolute tolerance")
        p.add_argument("--seed", type=int, default=0, help="sample stream seed")
        p.add_argument("--samples", type=int, default=2**20, help="sample count")
        p.add_argument("--out", default=None, help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("kernel", help="Bergman kernel diagonal value")
    p.add_argument("--domain", help="domain spec as inline JSON")
    p.add_argument("--annulus", type=float, help="annulus inner radius")
    p.add_argument("--g2", action="store_true", help="symmetrized bidisk at 0")
    p.add_argument("--w", default="0", help="base point ('sqrt' = sqrt of the inner radius)")
    common(p)

    p = sub.add_parser("green", help="annulus Green function diagnostics")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--w", default="sqrt")
    p.add_argument("--levels", default="", help="comma-separated negative levels to trace")
    common(p)

    p = sub.add_parser("indicatrix", help="indicatrix profile and volume")
    p.add_argument("--family", choices=("ell1", "p", "g2"), default="ell1")
    p.add_argument("--m", type=float, default=0.5)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--b", type=float, default=0.5)
    p.add_argument("--numeric", action="store_true", help="use the extremal-disc pipeline")
    common(p)

    p = sub.add_parser("suita-f", help="the invariant F at a supported point")
    p.add_argument("--g2", action="store_true")
    p.add_argument("--domain", help="domain spec as inline JSON")
    p.add_argument("--annulus", type=float)
    p.add_argument("--w", default="0")
    p.add_argument("--b", type=float, help="axis coordinate for ellipsoid specs")
    common(p)

    p = sub.add_parser("scan", help="figure tables (b, F) along a family")
    p.add_argument("--family", choices=("ell1", "p"), required=True)
    p.add_argument("--m", type=float, default=0.5)
    p.add_argument("--n", default="2..6", help="n range like 2..6 (ell1 family)")
    p.add_argument("--m-list", default="0.5,2,8,32,128", help="m values (p family)")
    p.add_argument("--grid", type=int, default=200)
    common(p)

    p = sub.add_parser("experiment", help="sublevel-volume experiments")
    p.add_argument("--kind", choices=("monotonicity",), default="monotonicity")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--w", default="sqrt")
    p.add_argument("--t-grid", default="-6,-5,-4,-3,-2,-1,-0.5")
    common(p)

    p = sub.add_parser("verify-all", help="run the full verification table")
    p.add_argument("--quick", action="store_true", help="skip sampling-heavy checks")
    common(p)
    return parser


def _parse_w(text, r=None):
    if text == "sqrt":
        if r is None:
            raise _ArgumentError("--w sqrt needs an annulus radius")
        return complex(math.sqrt(r))
    try:
        return complex(text)
    except ValueError as exc:
        raise _ArgumentError(f"cannot parse base point {text!r}") from exc


def _emit(args, payload, csv_rows=None, csv_header=None):
    text = json.dumps(payload, indent=2, sort_keys=True, default=float)
    if args.out and args.format == "csv" and csv_rows is not None:
        import csv as _csv

        with open(args.out, "w", newline="") as fh:
            writer = _csv.writer(fh)
            writer.writerow(csv_header)
            writer.writerows(csv_rows)
        print(f"wrote {args.out}")
    elif args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)


def _tol(args):
    return Tolerance(abs_tol=args.tol, rel_tol=max(args.tol, 1e-13) * 100, max_iter=200)


def _cmd_kernel(args):
    if args.g2:
        k = bergman.kernel_g2_center()
    elif args.annulus is not None:
        if not 0.0 < args.annulus < 1.0:
            raise _ArgumentError(f"annulus radius {args.annulus} outside (0, 1)")
        w = _parse_w(args.w, args.annulus)
        k = bergman.kernel_annulus(args.annulus, w, _tol(args))
    elif args.domain:
        dom = domains.from_json(args.domain)
        w = np.asarray(json.loads(args.w), dtype=complex) if args.w != "0" else np.zeros(dom.dimension)
        k = bergman.kernel_reinhardt(dom, w, _tol(args))
    else:
        raise _ArgumentError("choose one of --g2, --annulus, --domain")
    _emit(args, {"value": k.value, "method": k.method, "error_bound": k.error_bound})
    return 0


def _cmd_green(args):
    w = _parse_w(args.w, args.r)
    g = green1d.solve_green_annulus(args.r, w, _tol(args))
    payload = {
        "r": args.r,
        "w": [w.real, w.imag],
        "modes": g.n_modes,
        "robin": g.robin,
        "capacity": green1d.robin_capacity(g),
        "covering_bound": green1d.covering_capacity_bound(args.r) if abs(w - math.sqrt(args.r)) < 1e-12 else None,
        "tail_bound": g.tail_bound,
    }
    levels = [float(t) for t in args.levels.split(",") if t.strip()]
    if levels:
        payload["levels"] = []
        for t in levels:
            st = green1d.level_flux_and_isoperimetric(g, t)
            payload["levels"].append(
                {
                    "t": t,
                    "flux": st.flux,
                    "density": st.density,
                    "length": st.length,
                    "area": st.area,
                    "iso_ratio": st.iso_ratio,
                }
            )
    _emit(args, payload)
    return 0


def _cmd_indicatrix(args):
    if args.family == "g2":
        profile = indicatrix.azukawa_g2_center()
        payload = {"family": "g2", "volume": profile.volume()}
    elif args.family == "ell1":
        params = EllipsoidFamilyParams(m=args.m, n=args.n, b=args.b)
        profile = indicatrix.kobayashi_profile_p1half(args.m, args.n, args.b)
        payload = {
            "family": "ell1",
            "m": args.m,
            "n": args.n,
            "b": args.b,
            "volume_closed": indicatrix.indicatrix_volume_closed(params),
            "volume_quadrature": profile.volume(),
        }
    else:
        vol = indicatrix.indicatrix_volume_numeric((args.m, 1.0), args.b)
        payload = {"family": "p", "m": args.m, "b": args.b, "volume_numeric": vol}
        profile = None
    if args.out and args.format == "csv" and profile is not None and profile.kind == "radial-profile":
        profile.to_csv(args.out)
        print(f"wrote {args.out}")
        return 0
    _emit(args, payload)
    return 0


def _cmd_suita_f(args):
    if args.g2:
        ratio = suita.suita_F(domains.SymmetrizedBidisk())
    elif args.annulus is not None:
        w = _parse_w(args.w, args.annulus)
        ratio = suita.suita_F(Annulus(args.annulus), np.array([w]))
    elif args.domain:
        dom = domains.from_json(args.domain)
        w = np.zeros(dom.dimension, dtype=complex)
        if args.b is not None:
            w[0] = args.b
        ratio = suita.suita_F(dom, w)
    else:
        raise _ArgumentError("choose one of --g2, --annulus, --domain")
    print(f"F = {ratio.F:.7f}")
    _emit(
        args,
        {
            "F": ratio.F,
            "kernel": ratio.kernel.value,
            "indicatrix_volume": ratio.indicatrix_volume,
            "n": ratio.n,
            "classification": ratio.classification,
        },
    )
    return 0


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _cmd_scan(args):
    if args.grid < 2:
        raise _ArgumentError("grid must have at least 2 points")
    b_grid = np.linspace(1e-3, 1.0 - 1e-3, args.grid)
    if args.family == "ell1":
        report = suita.figure_scan("ell1", b_grid, m=args.m, n_list=_parse_range(args.n))
    else:
        m_list = [float(x) for x in getattr(args, "m_list").split(",") if x.strip()]
        report = suita.figure_scan("p", b_grid, m_list=m_list)
    if args.out and args.format == "csv":
        report.curves_to_csv(args.out)
        with open(args.out + ".json", "w") as fh:
            fh.write(report.to_json() + "\n")
        print(f"wrote {args.out} and {args.out}.json")
    else:
        _emit(args, json.loads(report.to_json()))
    return 0


def _cmd_experiment(args):
    w = _parse_w(args.w, args.r)
    t_grid = [float(t) for t in getattr(args, "t_grid").split(",") if t.strip()]
    stream = SampleStream(dimension=2, seed=args.seed)
    report = suita.monotonicity_experiment(args.r, w, t_grid, stream, args.samples)
    if args.out:
        report.to_json(args.out)
        print(f"wrote {args.out}")
    else:
        print(report.to_json())
    failed = [k for k, v in report.verdicts.items() if v is False]
    return 2 if failed else 0


def _verification_table(quick):
    """(name, ok, detail) rows mirroring the acceptance checks."""
    rows = []

    def add(name, fn):
        try:
            ok, detail = fn()
        except _NUMERICAL_ERRORS as exc:
            ok, detail = False, f"numerical failure: {exc}"
        rows.append((name, ok, detail))

    def product_grid():
        worst = 0.0
        for b in (0.1, 0.5, 0.9):
            for m in (0.5, 1.0, 2.0):
                for n in (2, 3, 4):
                    params = EllipsoidFamilyParams(m=m, n=n, b=b)
                    v = suita.product_closed_form(params)
                    f = bergman.kernel_deflated(params).value * indicatrix.indicatrix_volume_closed(params)
                    worst = max(worst, abs(f / v - 1.0))
        return worst < 1e-12, f"max rel dev {worst:.2e}"

    add("product formula vs factors (27-point grid)", product_grid)

    def family_max():
        b_star, f_star = suita.maximize_F(0.5, 3)
        ok = abs(b_star - 0.163501) <= 5e-5 and abs(f_star - 1.004178) <= 5e-6
        return ok, f"b*={b_star:.6f} F*={f_star:.7f} (printed target 1.004178)"

    add("ellipsoid family maximum (m=1/2, n=3)", family_max)

    def g2():
        ratio = suita.suita_F(domains.SymmetrizedBidisk())
        return abs(ratio.F - 2.0 / math.sqrt(3.0)) <= 1e-10, f"F={ratio.F:.10f}"

    add("symmetrized bidisk F = 2/sqrt(3)", g2)

    def volumes():
        worst = 0.0
        for p in (1, 2, 5):
            v = domains.volume(domains.Ellipsoid((0.5, 1.0 / p)))
            worst = max(worst, abs(v / (2 * math.pi**2 / ((p + 1) * (p + 2))) - 1.0))
        return worst < 1e-12, f"max rel dev {worst:.2e}"

    add("Gamma-product ellipsoid volumes", volumes)

    def kernels():
        worst = 0.0
        for p in (1, 2):
            for b in (0.3, 0.6):
                dom = domains.Ellipsoid((0.5, 1.0 / p))
                k = bergman.kernel_reinhardt(dom, np.array([b, 0.0], dtype=complex))
                kc = bergman.kernel_ellipsoid_closed(p, b)
                worst = max(worst, abs(k.value / kc.value - 1.0))
        return worst < 1e-8, f"max rel dev {worst:.2e}"

    add("monomial series vs closed-form kernels", kernels)

    def geodesic():
        worst = 0.0
        for m in (0.5, 1.0, 2.0):
            for b in (0.2, 0.5):
                v = indicatrix.indicatrix_volume_numeric((0.5, m), b)
                c = indicatrix.indicatrix_volume_closed(EllipsoidFamilyParams(m=m, n=2, b=b))
                worst = max(worst, abs(v / c - 1.0))
        return worst < 1e-4, f"max rel dev {worst:.2e}"

    add("extremal-disc pipeline vs closed volumes", geodesic)

    def large_m():
        _, f_star = suita.maximize_F(128.0, family="p")
        return abs(f_star - 1.010182) <= 2e-3, f"F*={f_star:.7f}"

    add("large-m limit of the second family", large_m)

    def annulus_ratio():
        ok = True
        for r in (0.5, 0.1, 0.01):
            res = suita.check_reverse_suita(r)
            ok = ok and res.ratio >= res.bound
        growing = suita.check_reverse_suita(1e-4).ratio > suita.check_reverse_suita(1e-2).ratio
        suita_dir = all(
            math.pi * bergman.kernel_annulus(0.2, w).value
            >= green1d.robin_capacity(green1d.solve_green_annulus(0.2, w)) ** 2
            for w in np.linspace(0.25, 0.95, 10)
        )
        return ok and growing and suita_dir, f"unbounded={growing}, suita direction={suita_dir}"

    add("reverse capacity inequality fails on annuli", annulus_ratio)

    def green_quality():
        g = green1d.solve_green_annulus(0.2, math.sqrt(0.2))
        th = np.linspace(0.0, 2 * math.pi, 720, endpoint=False)
        res = max(
            float(np.abs(g.value(np.exp(1j * th))).max()),
            float(np.abs(g.value(0.2 * np.exp(1j * th))).max()),
        )
        flux_dev = max(
            abs(green1d.level_flux_and_isoperimetric(g, t).flux - 2 * math.pi)
            for t in (-1.0, -2.0, -3.0)
        )
        return res < 1e-8 and flux_dev < 1e-6, f"residual {res:.2e}, flux dev {flux_dev:.2e}"

    add("Green solver boundary residual and flux", green_quality)

    if not quick:

        def monotone():
            report = suita.monotonicity_experiment(
                0.2, math.sqrt(0.2), [-6, -5, -4, -3, -2, -1, -0.5], SampleStream(2, seed=0)
            )
            ok = report.verdicts["normalized_non_decreasing_3sigma"] and report.verdicts["limit_within_2pct"]
            return ok, f"limit dev {report.metadata['limit_rel_dev']:.3%}"

        add("normalized sublevel monotonicity and limit", monotone)

        def est1():
            exact = all(
                suita.check_lower_bound_est1(domains.disk(), None, t) == (0.0, 0.0)
                for t in (-3.0, -2.0, -1.0)
            )
            margin, sigma = suita.check_lower_bound_est1(
                Annulus(0.2), math.sqrt(0.2), -2.0, SampleStream(2, seed=1)
            )
            return exact and margin >= -3 * sigma and margin > 0, f"annulus margin {margin:.4f} (sigma {sigma:.1e})"

        add("kernel lower bound margins", est1)

    def convex_bounds():
        vals = []
        for m in (0.5, 1.0, 2.0):
            for n in (2, 3):
                for b in (0.1, 0.5, 0.9):
                    vals.append(
                        suita.product_closed_form(EllipsoidFamilyParams(m=m, n=n, b=b)) ** (1.0 / n)
                    )
        ok = all(1.0 - 1e-10 <= v <= 4.0 for v in vals)
        center_ok = 1.0 <= 16.0 / math.pi**2
        return ok and center_ok, f"range [{min(vals):.6f}, {max(vals):.6f}]"

    add("convex bounds on computed F values", convex_bounds)

    return rows


def _cmd_verify_all(args):
    rows = _verification_table(args.quick)
    width = max(len(name) for name, _, _ in rows)
    failures = 0
    for name, ok, detail in rows:
        status = "PASS" if ok else "FAIL"
        if not ok:
            failures += 1
        print(f"{name:<{width}}  {status}  {detail}")
    print(f"{failures} of {len(rows)} checks failed" if failures else "all checks passed")
    return 2 if failures else 0


_COMMANDS = {
    "kernel": _cmd_kernel,
    "green": _cmd_green,
    "indicatrix": _cmd_indicatrix,
    "suita-f": _cmd_suita_f,
    "scan": _cmd_scan,
    "experiment": _cmd_experiment,
    "verify-all": _cmd_verify_all,
}


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
