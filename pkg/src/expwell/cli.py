"""Command-line front end.

Subcommands expose each pipeline and emit machine-readable data (CSV with
#-prefixed metadata lines, or JSON with a stable schema) suitable for
re-plotting the standard figures: wavefunctions, the spectrum function,
levels / intervals / matrix elements against V0.

Exit codes: 0 success, 1 computation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import model, oracle, refute, spectrum, wavefunc
from .errors import ExpwellError, NotAnEigenvalue, ScanIncomplete, TooFewLevels
from .model import PhysParams

SCHEMA_PREFIX = "expwell"
SCHEMA_VERSION = "v1"

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_USAGE = 2


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


@dataclass
class Output:
    fmt: str
    path: str | None

    def write(self, meta: dict, rows: list[dict], columns: list[str], kind: str):
        if self.fmt == "json":
            doc = {
                "schema": f"{SCHEMA_PREFIX}.{kind}/{SCHEMA_VERSION}",
                "meta": meta,
                "columns": columns,
                "rows": rows,
            }
            text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        else:
            lines = [f"# {SCHEMA_PREFIX}.{kind}/{SCHEMA_VERSION}"]
            for key in sorted(meta):
                lines.append(f"# {key}: {meta[key]}")
            lines.append(",".join(columns))
            for row in rows:
                lines.append(",".join(_fmt(row.get(c)) for c in columns))
            text = "\n".join(lines) + "\n"
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _params_meta(p: PhysParams) -> dict:
    return {"m": p.m, "hbar": p.hbar, "v0": p.v0, "delta": p.delta}


def _add_common(sub: argparse.ArgumentParser, *, v0_default=None):
    sub.add_argument("--m", type=float, default=1.0, help="particle mass (default 1)")
    sub.add_argument("--hbar", type=float, default=1.0, help="reduced Planck constant (default 1)")
    sub.add_argument("--v0", type=float, default=v0_default, required=v0_default is None,
                     help="well strength V0 (must be negative)")
    sub.add_argument("--delta", type=float, default=2.0, help="range parameter delta (default 2)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    sub.add_argument("--output", default=None, help="output path (default: stdout)")
    sub.add_argument("--points-per-decade", type=int, default=400,
                     help="scan grid density for the analytic level search")
    sub.add_argument("--refine-rtol", type=float, default=1e-10,
                     help="relative bisection tolerance for level refinement")
    sub.add_argument("--jobs", type=int,
                     default=int(os.environ.get("EXPWELL_JOBS", "1")),
                     help="parallel workers for sweeps (env EXPWELL_JOBS)")


def _build_params(parser: argparse.ArgumentParser, args) -> PhysParams:
    if args.v0 >= 0:
        parser.error("V0 must be negative")
    try:
        return PhysParams(m=args.m, hbar=args.hbar, v0=args.v0, delta=args.delta)
    except ExpwellError as exc:
        parser.error(str(exc))


def _scan_config(args) -> spectrum.ScanConfig:
    return spectrum.ScanConfig(
        points_per_decade=args.points_per_decade, refine_rtol=args.refine_rtol
    )


# ---------------------------------------------------------------- levels ---

def cmd_levels(parser, args) -> int:
    p = _build_params(parser, args)
    scan = _scan_config(args)
    out = Output(args.format, args.output)
    try:
        ls = spectrum.find_levels(p, scan)
    except ScanIncomplete as exc:
        print(f"level scan incomplete: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    oracle_evs: list[float | None] = [None] * ls.count
    if not args.no_oracle:
        try:
            cfg = oracle.ShootingConfig(points_per_decade=args.oracle_points_per_decade)
            found = oracle.shoot_eigenvalues(p, cfg)
        except ExpwellError as exc:
            print(f"oracle failed: {exc}", file=sys.stderr)
            return EXIT_COMPUTE
        for i, e in enumerate(ls.energies):
            best = min(found, key=lambda f: abs(f - e)) if found else None
            oracle_evs[i] = best

    meta = {
        **_params_meta(p),
        "chadan_bound": ls.estimate,
        "bargmann_integral": model.bargmann_integral(p),
        "scan_points_per_decade": scan.points_per_decade,
        "scan_refine_rtol": scan.refine_rtol,
        "scan_floor": ls.scan_floor,
        "level_order": "paper index 1 = shallowest",
        "tolerance_level_abs": 1e-5,
        "provenance": "analytic=spectrum-function-roots oracle=two-sided-shooting",
    }
    rows = []
    for i, e in enumerate(ls.energies):
        oe = oracle_evs[i]
        rows.append(
            {
                "paper_index": ls.count - i,
                "energy": e,
                "oracle_energy": oe,
                "abs_diff": None if oe is None else abs(oe - e),
            }
        )
    out.write(meta, rows, ["paper_index", "energy", "oracle_energy", "abs_diff"], "levels")

    if args.s_curve_out:
        lo = ls.energies[0] * 10.0 if ls.count else -10.0 * abs(p.v0)
        curve = spectrum.level_scan_curve(p, lo, -1e-6 * p.energy_scale, args.s_curve_points)
        crows = [
            {"energy": e, "s_value": s, "pole": int(is_pole)} for e, s, is_pole in curve
        ]
        Output(args.format, args.s_curve_out).write(
            {**_params_meta(p), "curve": "spectrum function S(E)"},
            crows,
            ["energy", "s_value", "pole"],
            "s_curve",
        )
    return EXIT_OK


# ---------------------------------------------------------- wavefunction ---

def cmd_wavefunction(parser, args) -> int:
    p = _build_params(parser, args)
    if args.y_points < 1:
        parser.error("--y-points must be >= 1")
    if not (0.0 < args.y_from < args.y_to):
        parser.error("need 0 < --y-from < --y-to")
    out = Output(args.format, args.output)
    try:
        ls = spectrum.find_levels(p, _scan_config(args))
        if args.level < 1 or args.level > ls.count:
            print(f"level {args.level} not available: only {ls.count} levels exist",
                  file=sys.stderr)
            return EXIT_COMPUTE
        # paper index 1 = shallowest = last of the ascending list
        energy = ls.energies[ls.count - args.level]
        state = wavefunc.normalize(p, energy, index=args.level)
    except (NotAnEigenvalue, TooFewLevels, ExpwellError) as exc:
        print(f"wavefunction failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    ys = (
        np.geomspace(args.y_from, args.y_to, args.y_points)
        if args.y_log
        else np.linspace(args.y_from, args.y_to, args.y_points)
    )
    norm_dev = abs(wavefunc.overlap(p, state, state) - 1.0)
    resid = model.schrodinger_residual(
        p, energy, state, domain=(1e-3, 10.0 * p.delta)
    ).max_norm
    meta = {
        **_params_meta(p),
        "paper_index": args.level,
        "energy": energy,
        "norm_deviation": norm_dev,
        "max_relative_residual": resid,
        "sign_convention": "positive on the first lobe from the origin",
    }
    rows = [{"y": float(y), "psi": state(float(y))} for y in ys]
    out.write(meta, rows, ["y", "psi"], "wavefunction")
    return EXIT_OK


# ------------------------------------------------------------------ sweep ---

def _sweep_worker(v0: float, p: PhysParams, scan, with_m12: bool):
    try:
        table = wavefunc.sweep_v0(
            spectrum.with_v0(p, v0), [v0], scan=scan, with_m12=with_m12
        )
        return v0, table.levels[0], table.intervals[0], table.m12[0], table.m12_deep[0], None
    except Exception as exc:
        return v0, (), (), None, None, f"{type(exc).__name__}: {exc}"


def cmd_sweep(parser, args) -> int:
    p = _build_params(parser, args)
    if args.step <= 0:
        parser.error("--step must be positive")
    lo, hi = args.v0_from, args.v0_to
    if lo >= 0 or hi >= 0:
        parser.error("V0 must be negative")
    a, b = sorted((abs(lo), abs(hi)))
    grid = [-v for v in np.arange(a, b + 0.5 * args.step, args.step)]
    if not grid:
        parser.error("empty sweep grid")
    out = Output(args.format, args.output)
    scan = _scan_config(args)

    table = wavefunc.sweep_v0(
        p, grid, scan=scan, with_m12=not args.no_m12,
        emergence_tol=args.emergence_tol,
    ) if args.jobs <= 1 else _parallel_sweep(p, grid, scan, args)

    n_fail = len(table.failures)
    meta = {
        **_params_meta(p),
        "v0_from": -a,
        "v0_to": -b,
        "step": args.step,
        "emergence_points_abs_v0": ",".join(f"{e:.4f}" for e in table.emergence_points),
        "emergence_tol": args.emergence_tol,
        "m12_convention": "dipole <psi_1|y|psi_2>, levels 1,2 = two shallowest",
        "m12_deep_convention": "dipole element between the two deepest levels",
        "failed_points": n_fail,
    }
    rows = []
    if args.wide:
        columns = ["v0", "n_levels", "energies", "intervals", "m12", "m12_deep", "error"]
        for i, v0 in enumerate(table.v0_grid):
            rows.append(
                {
                    "v0": v0,
                    "n_levels": len(table.levels[i]),
                    "energies": ";".join(_fmt(e) for e in table.levels[i]),
                    "intervals": ";".join(_fmt(d) for d in table.intervals[i]),
                    "m12": table.m12[i],
                    "m12_deep": table.m12_deep[i],
                    "error": table.failures.get(i),
                }
            )
    else:
        columns = ["v0", "n_levels", "paper_index", "energy", "m12", "m12_deep", "error"]
        for i, v0 in enumerate(table.v0_grid):
            levels = table.levels[i]
            if not levels:
                rows.append({"v0": v0, "n_levels": 0, "error": table.failures.get(i)})
                continue
            n = len(levels)
            for j, e in enumerate(levels):
                rows.append(
                    {
                        "v0": v0,
                        "n_levels": n,
                        "paper_index": n - j,
                        "energy": e,
                        "m12": table.m12[i],
                        "m12_deep": table.m12_deep[i],
                        "error": table.failures.get(i),
                    }
                )
    out.write(meta, rows, columns, "sweep")
    ok_frac = 1.0 - n_fail / max(1, len(table.v0_grid))
    return EXIT_OK if ok_frac >= 0.9 else EXIT_COMPUTE


def _parallel_sweep(p, grid, scan, args) -> wavefunc.SweepTable:
    """Per-point parallel sweep with deterministic output order; emergence
    refinement runs serially afterwards exactly as in the serial path."""
    worker = partial(_sweep_worker, p=p, scan=scan, with_m12=not args.no_m12)
    order = sorted(grid, reverse=True)  # ascending |V0|
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(worker, order))
    levels, intervals, m12s, m12ds, failures = [], [], [], [], {}
    for i, (v0, lv, iv, m12, m12d, err) in enumerate(results):
        levels.append(tuple(lv))
        intervals.append(tuple(iv))
        m12s.append(m12)
        m12ds.append(m12d)
        if err is not None:
            failures[i] = err
    emergence = []
    counts = [len(lv) if i not in failures else None for i, lv in enumerate(levels)]
    for i in range(len(order) - 1):
        ca, cb = counts[i], counts[i + 1]
        if ca is None or cb is None or cb <= ca:
            continue
        for target in range(ca + 1, cb + 1):
            lo, hi = abs(order[i]), abs(order[i + 1])
            while hi - lo > args.emergence_tol:
                mid = 0.5 * (lo + hi)
                try:
                    c = spectrum.find_levels(spectrum.with_v0(p, -mid), scan).count
                except Exception:
                    break
                if c >= target:
                    hi = mid
                else:
                    lo = mid
            emergence.append(0.5 * (lo + hi))
    return wavefunc.SweepTable(
        v0_grid=tuple(order),
        levels=tuple(levels),
        intervals=tuple(intervals),
        m12=tuple(m12s),
        m12_deep=tuple(m12ds),
        emergence_points=tuple(emergence),
        failures=failures,
    )


# --------------------------------------------------------------- estimate ---

def cmd_estimate(parser, args) -> int:
    p = _build_params(parser, args)
    out = Output(args.format, args.output)
    bound = model.chadan_estimate(p)
    thr = {n: model.generation_threshold(p, n) for n in (2, 3, 4)}
    try:
        count = spectrum.find_levels(p, _scan_config(args)).count
    except ExpwellError:
        count = None
    thg_possible = count >= 4 if count is not None else abs(p.v0) >= thr[4]
    meta = {
        **_params_meta(p),
        "verdict_basis": "exact level count (threshold shown for comparison)",
    }
    rows = [
        {"quantity": "chadan_level_bound", "value": bound},
        {"quantity": "bargmann_integral", "value": model.bargmann_integral(p)},
        {"quantity": "calogero_integral", "value": model.calogero_integral(p)},
        {"quantity": "exact_level_count", "value": count},
        {"quantity": "min_abs_v0_for_2_levels", "value": thr[2]},
        {"quantity": "min_abs_v0_for_3_levels_three_wave_mixing", "value": thr[3]},
        {"quantity": "min_abs_v0_for_4_levels_third_harmonic", "value": thr[4]},
        {"quantity": "third_harmonic_verdict",
         "value": "possible" if thg_possible else "not possible"},
    ]
    out.write(meta, rows, ["quantity", "value"], "estimate")
    return EXIT_OK


# ----------------------------------------------------------------- refute ---

def cmd_refute(parser, args) -> int:
    p = _build_params(parser, args)
    out = Output(args.format, args.output)
    report = refute.refute_report(p)
    doc = report.to_dict()
    if args.format == "json":
        doc["schema"] = f"{SCHEMA_PREFIX}.refute/{SCHEMA_VERSION}"
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        meta = {**_params_meta(p), "passed": report.passed}
        rows = [
            {"check": "heun_control_max_defect", "value": report.heun_control_max,
             "verdict": "pass" if report.heun_control_max < report.thresholds["control_heun_max"] else "fail"},
            {"check": "heun_wrong_min_defect", "value": report.heun_wrong_min,
             "verdict": "fails-equation" if report.heun_wrong_min > report.thresholds["wrong_heun_floor"] else "unexpected"},
            {"check": "schrodinger_control_max_defect", "value": report.schrod_control_max,
             "verdict": "pass" if report.schrod_control_max < report.thresholds["control_schrod_max"] else "fail"},
            {"check": "schrodinger_wrong_min_defect", "value": report.schrod_wrong_min,
             "verdict": "fails-equation" if report.schrod_wrong_min > report.thresholds["wrong_schrod_floor"] else "unexpected"},
            {"check": "wrong_psi1_origin_value", "value": report.origin_value,
             "verdict": "nonzero (must vanish)"},
            {"check": "origin_sigma_independence_spread", "value": report.origin_sigma_spread,
             "verdict": "sigma-independent"},
            {"check": "exact_level_count", "value": report.exact_count,
             "verdict": f"finite vs claimed infinite (estimate {report.count_estimate:.4f})"},
            {"check": "negative_control_offroot_rejected", "value": report.negative_control_ok,
             "verdict": "pass" if report.negative_control_ok else "fail"},
            {"check": "asymmetry_ratio", "value": report.asymmetry_ratio,
             "verdict": "pass" if report.asymmetry_ratio >= report.thresholds["asymmetry_min"] else "fail"},
        ]
        out.write(meta, rows, ["check", "value", "verdict"], "refute")
    return EXIT_OK if report.passed else EXIT_COMPUTE


# ------------------------------------------------------------------- main ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expwell",
        description="Bound states of the bottomless exponential potential well",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("levels", help="bound-state energies, count bound, diagnostics")
    _add_common(s)
    s.add_argument("--no-oracle", action="store_true",
                   help="skip the shooting-method cross-check")
    s.add_argument("--oracle-points-per-decade", type=int, default=60)
    s.add_argument("--s-curve-out", default=None,
                   help="also dump the spectrum function S(E) to this path")
    s.add_argument("--s-curve-points", type=int, default=400)
    s.set_defaults(func=cmd_levels)

    s = subs.add_parser("wavefunction", help="normalized wavefunction samples")
    _add_common(s)
    s.add_argument("--level", type=int, required=True,
                   help="1-based level index, 1 = shallowest")
    s.add_argument("--y-from", type=float, default=1e-3)
    s.add_argument("--y-to", type=float, default=20.0)
    s.add_argument("--y-points", type=int, default=400)
    s.add_argument("--y-log", action="store_true", help="geometric y grid")
    s.set_defaults(func=cmd_wavefunction)

    s = subs.add_parser("sweep", help="levels/intervals/matrix elements vs V0")
    _add_common(s)
    s.add_argument("--v0-from", type=float, required=True)
    s.add_argument("--v0-to", type=float, required=True)
    s.add_argument("--step", type=float, default=0.05, help="grid step in |V0|")
    s.add_argument("--no-m12", action="store_true", help="skip matrix elements")
    s.add_argument("--wide", action="store_true", help="one row per V0 instead of tidy rows")
    s.add_argument("--emergence-tol", type=float, default=1e-3)
    s.set_defaults(func=cmd_sweep)

    s = subs.add_parser("estimate", help="count bound, integrals, feasibility thresholds")
    _add_common(s)
    s.set_defaults(func=cmd_estimate)

    s = subs.add_parser("refute", help="run the wrong-solution refutation harness")
    _add_common(s)
    s.set_defaults(func=cmd_refute)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except ExpwellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
