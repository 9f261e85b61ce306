"""Command-line front end: iso-compare <command> --config <file>.

Every command writes a single CSV or JSON artifact with a header naming the
command, its parameters and the package version.  Output is deterministic:
numbers carry 12 significant digits, keys are sorted, no timestamps.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .config import COMMANDS, RunConfig, build_metric, read_pairs, validate
from .errors import ConfigError, NumericalError, ValidationError
from .football import alpha_result, cylinder_growth, epsilon0
from .gmt import (RadiusFamily, cone_over_circle, cutoff_budget,
                  monotonicity_profile, unit_circle, unit_sphere)
from .phase_plane import extremal_path, phase_curve, ricci_mass, volume_from_path
from .variation import (check_first_variation, check_mean_curvature_evolution,
                        check_second_variation, variation_report)
from .warped import candidate_profile


def format_number(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if x == 0.0:
            x = 0.0  # normalize negative zero
        return f"{x:.12g}"
    return str(x)


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return format_number(obj)
        if obj == 0.0:
            obj = 0.0
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, np.floating):
        return _round_floats(float(obj))
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _worker_count(n_tasks: int) -> int:
    env = os.environ.get("ISO_COMPARE_THREADS")
    cap = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(n_tasks, cap))


# ---------------------------------------------------------------------------
# command handlers: each returns (default_format, columns, rows, summary)


def _run_profile(opts):
    metric = build_metric(opts)
    prof = candidate_profile(metric, opts.get("grid_size", 257))
    rows = [(t, v, a) for t, v, a in zip(prof.t_grid, prof.v_grid, prof.a_values)]
    return "csv", ["t", "V", "A"], rows, {"total_volume": prof.total_volume}


def _run_variation_check(opts):
    metric = build_metric(opts)
    h0 = opts.get("h", 1e-3 * metric.t_max)
    levels = opts.get("levels", 3)
    rows = []
    for t in opts["t"]:
        rep = variation_report(metric, t, h0, levels=levels)
        order = rep.order_estimate if rep.order_estimate is not None else math.nan
        step = h0
        for _ in range(levels):
            rows.append((t, step,
                         check_first_variation(metric, t, step).residual_first,
                         check_mean_curvature_evolution(metric, t, step).residual_h_dot,
                         check_second_variation(metric, t, step).residual_second,
                         order))
            step /= 2.0
    columns = ["t", "h", "residual_first", "residual_h_dot", "residual_second",
               "order"]
    return "csv", columns, rows, {}


def _run_mass(opts):
    metric = build_metric(opts)
    prof = candidate_profile(metric, opts.get("grid_size", 257))
    curve = phase_curve(prof)
    mass = ricci_mass(prof, opts["ric0"])
    rows = [(v, a, x, y, m) for v, a, x, y, m in
            zip(prof.v_grid, prof.a_values, curve.x, curve.y, mass.m_values)]
    return "csv", ["V", "A", "F", "F_prime", "m"], rows, {}


def _run_bishop_bound(opts):
    path = extremal_path(opts["n"], opts["ric0"], 0.0)
    bound = volume_from_path(path)
    return "json", None, None, {"y0": path.y0, "x0": path.x0, "bound": bound}


def _run_football_alpha(opts):
    if "eps_grid" in opts:
        lo, hi, num = opts["eps_grid"]
        eps_values = [float(e) for e in np.linspace(lo, hi, num)]
    else:
        eps_values = [opts["epsilon"]]
    coarse = opts.get("coarse", 33)
    workers = _worker_count(len(eps_values))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda e: alpha_result(e, coarse=coarse),
                                    eps_values))
    else:
        results = [alpha_result(e, coarse=coarse) for e in eps_values]
    rows = [(r.epsilon, r.alpha_oracle, r.alpha_as_written, r.z_argmax,
             r.discrepancy) for r in results]
    columns = ["epsilon", "alpha_oracle", "alpha_as_written", "z_argmax",
               "discrepancy"]
    summary = {
        "domain_violations": {
            format_number(r.epsilon): r.domain_violations
            for r in results if r.domain_violations
        },
        "switch_points": {
            format_number(r.epsilon): r.switch_x for r in results
        },
    }
    return "csv", columns, rows, summary


def _run_epsilon0(opts):
    bracket = epsilon0(method=opts.get("method", "oracle"),
                       tol=opts.get("tol", 5e-4))
    return "json", None, None, {
        "lo": bracket.lo, "hi": bracket.hi, "iterations": bracket.iterations,
        "method": bracket.method, "no_root": bracket.no_root,
    }


def _run_monotonicity(opts):
    rho = np.linspace(opts.get("rho_min", 0.01), opts.get("rho_max", 2.0),
                      opts.get("rho_n", 64))
    lam = opts["lambda"]
    case_name = opts["case"]
    if case_name == "circle":
        case = unit_circle(lam, rho)
    elif case_name == "sphere":
        case = unit_sphere(lam, rho, dim=opts.get("sphere_dim", 2))
    else:
        case = cone_over_circle(opts.get("angle", math.pi / 4), lam, rho)
    profile = monotonicity_profile(case)
    rows = list(zip(profile.rho, profile.values))
    return "csv", ["rho", "profile"], rows, {"clamped": int(profile.clamped.sum())}


def _run_cutoff_budget(opts):
    family = RadiusFamily(radii=np.asarray(opts["radii"], dtype=float),
                          delta=opts["delta"], n=opts["n"],
                          c0=opts["c0"], c=opts["c"], h=opts.get("h", 0.0))
    budget = cutoff_budget(family)
    return "json", None, None, {
        "area_term": budget.area_term,
        "dirichlet_term": budget.dirichlet_term,
        "c1": budget.c1,
        "area_bound": budget.area_bound,
        "dirichlet_bound": budget.dirichlet_bound,
        "area_ok": budget.area_ok,
        "dirichlet_ok": budget.dirichlet_ok,
        "admissible": budget.admissible,
        "violated": budget.violated,
    }


def _run_cylinder_growth(opts):
    rows = [(g.length, g.volume, g.ric_inf, g.scalar_inf)
            for g in cylinder_growth(opts["lengths"], opts.get("radius", 1.0))]
    return "csv", ["N", "volume", "ric_inf", "scalar_inf"], rows, {}


_HANDLERS = {
    "profile": _run_profile,
    "variation-check": _run_variation_check,
    "mass": _run_mass,
    "bishop-bound": _run_bishop_bound,
    "football-alpha": _run_football_alpha,
    "epsilon0": _run_epsilon0,
    "monotonicity": _run_monotonicity,
    "cutoff-budget": _run_cutoff_budget,
    "cylinder-growth": _run_cylinder_growth,
}


# ---------------------------------------------------------------------------
# rendering


def _parameter_strings(opts: dict) -> dict[str, str]:
    out = {}
    for key in sorted(opts):
        value = opts[key]
        if isinstance(value, (list, tuple)):
            out[key] = ",".join(format_number(float(v)) if isinstance(v, (int, float))
                                else str(v) for v in value)
        elif isinstance(value, float):
            out[key] = format_number(value)
        else:
            out[key] = str(value)
    return out


def render(config: RunConfig, columns, rows, summary) -> str:
    fmt = config.format or ("csv" if rows is not None else "json")
    params = _parameter_strings(config.options)
    if fmt == "json":
        doc = {"command": config.command, "version": __version__,
               "parameters": params}
        if columns is not None:
            doc["columns"] = columns
            doc["rows"] = [[_round_floats(float(v) if isinstance(v, (np.floating, int, float)) else v)
                            for v in row] for row in rows]
        if summary:
            doc["summary"] = _round_floats(summary)
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    lines = [f"# iso-compare {config.command}", f"# version = {__version__}"]
    lines += [f"# {key} = {value}" for key, value in params.items()]
    if rows is None:
        columns = ["key", "value"]
        rows = [(k, summary[k]) for k in sorted(summary)]
        summary = {}
    for key in sorted(summary or {}):
        value = summary[key]
        if isinstance(value, dict):
            for sub in sorted(value):
                lines.append(f"# {key}.{sub} = {value[sub]}")
        else:
            lines.append(f"# {key} = {format_number(value) if isinstance(value, float) else value}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(
            format_number(float(v)) if isinstance(v, (int, float, np.floating, np.integer))
            and not isinstance(v, bool) else str(v)
            for v in row))
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit status."""
    try:
        default_fmt, columns, rows, summary = _HANDLERS[config.command](config.options)
    except (ConfigError, ValidationError) as exc:
        print(f"iso-compare: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"iso-compare: numerical failure in {config.command}: {exc}",
              file=sys.stderr)
        return 3
    if config.format is None:
        config.format = default_fmt
    text = render(config, columns, rows, summary)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


_FLAG_KEYS = {
    "eps_grid": "eps_grid",
    "method": "method",
    "case": "case",
    "lambda_": "lambda",
    "tol": "tol",
    "epsilon": "epsilon",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iso-compare",
        description="Isoperimetric-profile volume comparison toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        p = sub.add_parser(command)
        p.add_argument("--config", help="key-value configuration file")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        if command == "football-alpha":
            p.add_argument("--eps-grid", dest="eps_grid", help="lo:hi:n")
            p.add_argument("--epsilon", dest="epsilon")
        if command == "epsilon0":
            p.add_argument("--method", choices=("oracle", "as-written"))
            p.add_argument("--tol", dest="tol")
        if command == "monotonicity":
            p.add_argument("--case", choices=("sphere", "circle", "cone"))
            p.add_argument("--lambda", dest="lambda_")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        pairs = {}
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                pairs = read_pairs(fh.read())
        file_command = pairs.pop("command", (None, 0))[0]
        if file_command is not None and file_command != args.command:
            raise ConfigError(
                f"config file names command {file_command!r} but "
                f"{args.command!r} was invoked")
        for attr, key in _FLAG_KEYS.items():
            value = getattr(args, attr, None)
            if value is not None:
                pairs[key] = (value, 0)
        config = validate(args.command, pairs)
        if args.out:
            config.output = args.out
        if args.format:
            config.format = args.format
    except OSError as exc:
        print(f"iso-compare: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValidationError) as exc:
        print(f"iso-compare: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
