"""Command-line front end: verification suites and sweeps emitting CSV/JSON.

Every artifact embeds its full configuration and the tool version, so a file
can be reparsed into the run that produced it.  Output is deterministic:
sequential evaluation, fixed reduction order, repr-formatted floats.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import ConvergenceError, LacsphereError
from .polyspace import (
    DimensionParams,
    nikolskii_ratio,
    random_lacunary_zonal,
    theorem_bound,
    validate_spectrum,
)
from .quadrature import gauss_jacobi_rule
from .reproducing import (
    build_kernel,
    convolution_residual,
    kernel_sup_norm_report,
    reproducing_residual,
)
from .search import maximize_ratio, packed_spectrum, sweep
from .specfun import empirical_bound_constant

SWEEP_COLUMNS = [
    "family", "d", "l", "l0", "p", "q", "n", "m", "ratio",
    "theorem_bound", "coarse_bound", "classical_bound", "ratio_over_bound", "seed",
]


def parse_exponent(text):
    if text == "inf":
        return math.inf
    value = float(text)
    if value <= 0:
        raise LacsphereError(f"exponent must be positive or 'inf', got {text}")
    return value


def format_exponent(p):
    return "inf" if p == math.inf else repr(p)


def parse_spectrum(text):
    return [int(part) for part in text.split(",")]


def parse_n_grid(text):
    """Either a comma list '16,32,64' or a dyadic range '16:512:dyadic'."""
    if ":" in text:
        lo, hi, kind = text.split(":")
        if kind != "dyadic":
            raise LacsphereError(f"unknown grid kind {kind!r}; use start:stop:dyadic")
        lo, hi = int(lo), int(hi)
        grid = []
        n = lo
        while n <= hi:
            grid.append(n)
            n *= 2
        return grid
    return [int(part) for part in text.split(",")]


def _csv_text(config, columns, rows, extra_comments=()):
    buf = io.StringIO()
    buf.write(f"# lacsphere-version: {__version__}\n")
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    for line in extra_comments:
        buf.write(f"# {line}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return "inf" if v == math.inf else repr(float(v))
    return str(v)


def _json_text(config, result):
    return json.dumps(
        {"lacsphere_version": __version__, "config": config, "result": result},
        sort_keys=True, indent=2, allow_nan=False,
    ) + "\n"


def read_artifact(text):
    """Reparse a CLI artifact into its config and payload (round-trip check)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(text)
        return obj["config"], obj["result"]
    config = None
    columns = None
    rows = []
    for line in text.splitlines():
        if line.startswith("# config: "):
            config = json.loads(line[len("# config: "):])
        elif line.startswith("#") or not line.strip():
            continue
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append(dict(zip(columns, line.split(","))))
    if config is None:
        raise LacsphereError("artifact has no config header")
    return config, rows


def _jsonable(value):
    if isinstance(value, float) and value == math.inf:
        return "inf"
    if isinstance(value, np.ndarray):
        return [float(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def cmd_quad_check(args):
    config = {"command": "quad-check", "alpha": args.alpha, "n": args.n,
              "format": args.format}
    rule = gauss_jacobi_rule(args.alpha, args.n)
    if args.format == "json":
        result = {
            "alpha": rule.alpha,
            "exactness_degree": rule.exactness_degree,
            "nodes": list(rule.nodes),
            "weights": list(rule.weights),
            "weight_sum": float(np.sum(rule.weights)),
            "weight_sum_exact": rule.weight_sum_exact,
        }
        return _json_text(config, _jsonable(result))
    rows = list(zip(rule.nodes, rule.weights))
    return _csv_text(config, ["node", "weight"], rows)


def cmd_kernel(args):
    config = {"command": "kernel", "d": args.d, "l": args.l,
              "spectrum": args.spectrum, "format": "json"}
    dim = DimensionParams(args.d)
    spectrum = validate_spectrum(parse_spectrum(args.spectrum), args.l)
    kernel = build_kernel(spectrum, dim)
    report = kernel_sup_norm_report(kernel)
    result = kernel.to_json()
    result["sup_norm"] = {"measured": report.measured, "reference": report.reference,
                          "ratio": report.ratio}
    return _json_text(config, _jsonable(result))


def cmd_reproduce(args):
    config = {"command": "reproduce", "d": args.d, "l": args.l,
              "spectrum": args.spectrum, "seed": args.seed, "s2": bool(args.s2),
              "format": "json"}
    dim = DimensionParams(args.d)
    spectrum = validate_spectrum(parse_spectrum(args.spectrum), args.l)
    kernel = build_kernel(spectrum, dim)
    f = random_lacunary_zonal(spectrum, dim, args.seed, distribution="gaussian")
    result = {"residual_coefficient": reproducing_residual(f, kernel)}
    if args.s2:
        if args.d != 2:
            raise LacsphereError("--s2 requires --d 2")
        from .polyspace import random_lacunary_s2

        f2 = random_lacunary_s2(spectrum, args.seed)
        result["residual_convolution"] = convolution_residual(f2, kernel)
    return _json_text(config, _jsonable(result))


def cmd_ratio(args):
    config = {"command": "ratio", "d": args.d, "l": args.l, "p": format_exponent(args.p),
              "q": format_exponent(args.q), "spectrum": args.spectrum,
              "seed": args.seed, "format": args.format}
    dim = DimensionParams(args.d)
    spectrum = validate_spectrum(parse_spectrum(args.spectrum), args.l)
    f = random_lacunary_zonal(spectrum, dim, args.seed, distribution="signs")
    ratio = nikolskii_ratio(f, args.p, args.q)
    m_bound = max(spectrum.m, 1)
    bounds = theorem_bound(args.d, spectrum.n, m_bound, args.l, args.p, args.q)
    row = ["spectrum", args.d, args.l, min(args.l, (args.d - 1) / 2.0),
           format_exponent(args.p), format_exponent(args.q), spectrum.n, m_bound,
           ratio, bounds.theorem, bounds.coarse, bounds.classical,
           ratio / bounds.theorem, args.seed]
    if args.format == "json":
        return _json_text(config, _jsonable(dict(zip(SWEEP_COLUMNS, row))))
    return _csv_text(config, SWEEP_COLUMNS, [row],
                     extra_comments=[f"warning: {w}" for w in bounds.warnings])


def cmd_bounds(args):
    config = {"command": "bounds", "d": args.d, "l": args.l, "n": args.n,
              "grid_size": args.grid_size, "format": "csv"}
    dim = DimensionParams(args.d)
    degrees = parse_n_grid(args.n)
    report = empirical_bound_constant(dim, degrees, args.l, args.grid_size)
    rows = [
        (n, args.d, args.l, report.per_degree[n], report.per_degree_flat[n])
        for n in degrees
    ]
    comments = [
        f"pointwise-spread: {report.spread()!r}",
        f"flat-spread: {report.spread(flat=True)!r}",
    ]
    return _csv_text(config, ["n", "d", "l", "c_pointwise", "c_flat"], rows, comments)


def cmd_sweep(args):
    config = {"command": "sweep", "family": args.family, "d": args.d, "l": args.l,
              "p": format_exponent(args.p), "q": format_exponent(args.q),
              "n": args.n, "m_rule": args.m_rule, "seed": args.seed, "format": "csv"}
    dim = DimensionParams(args.d)
    n_grid = parse_n_grid(args.n)
    m_rule = args.m_rule if args.m_rule == "max" else int(args.m_rule)
    result = sweep(args.family, dim, args.l, args.p, args.q, n_grid,
                   m_rule=m_rule, seed=args.seed)
    rows = []
    for r in result.reports:
        rows.append([result.family, r.d, r.ell, r.l0, format_exponent(r.p),
                     format_exponent(r.q), r.n, r.m, r.ratio, r.theorem_bound,
                     r.coarse_bound, r.classical_bound, r.ratio / r.theorem_bound,
                     args.seed])
    comments = [
        f"fit-ratio: slope={result.fit_ratio.slope!r} "
        f"intercept={result.fit_ratio.intercept!r} r2={result.fit_ratio.r_squared!r}",
        f"fit-ratio-over-bound: slope={result.fit_ratio_over_bound.slope!r} "
        f"intercept={result.fit_ratio_over_bound.intercept!r} "
        f"r2={result.fit_ratio_over_bound.r_squared!r}",
    ] + [f"warning: {w}" for w in result.warnings]
    return _csv_text(config, SWEEP_COLUMNS, rows, comments)


def cmd_search(args):
    config = {"command": "search", "d": args.d, "l": args.l,
              "p": format_exponent(args.p), "q": format_exponent(args.q),
              "spectrum": args.spectrum, "restarts": args.restarts,
              "seed": args.seed, "budget": args.budget, "format": "json"}
    dim = DimensionParams(args.d)
    spectrum = validate_spectrum(parse_spectrum(args.spectrum), args.l)
    report = maximize_ratio(spectrum, dim, args.p, args.q, restarts=args.restarts,
                            seed=args.seed, budget=args.budget)
    result = {
        "spectrum": list(spectrum.degrees),
        "best_ratio": report.best_ratio,
        "best_coefficients": report.best_coefficients,
        "restart_ratios": report.restart_ratios,
        "restarts_used": report.restarts_used,
        "evaluations": report.evaluations,
    }
    return _json_text(config, _jsonable(result))


def build_parser():
    parser = argparse.ArgumentParser(prog="lacsphere")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, spectrum=False, exponents=False, grid=False):
        sp.add_argument("--d", type=int, default=2)
        sp.add_argument("--l", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None)
        if spectrum:
            sp.add_argument("--spectrum", required=True,
                            help="comma-separated degrees, e.g. 0,3,6")
        if exponents:
            sp.add_argument("--p", type=parse_exponent, required=True)
            sp.add_argument("--q", type=parse_exponent, required=True)
        if grid:
            sp.add_argument("--n", required=True,
                            help="comma list or dyadic range start:stop:dyadic")

    sp = sub.add_parser("quad-check", help="build and export a Gauss-Jacobi rule")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("kernel", help="build the reproducing kernel for a spectrum")
    add_common(sp, spectrum=True)

    sp = sub.add_parser("reproduce", help="verify T f = f on a random lacunary f")
    add_common(sp, spectrum=True)
    sp.add_argument("--s2", action="store_true",
                    help="also run the S^2 convolution route (d=2 only)")

    sp = sub.add_parser("ratio", help="measured ratio and bounds for one spectrum")
    add_common(sp, spectrum=True, exponents=True)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = sub.add_parser("bounds", help="empirical difference-kernel constants")
    add_common(sp, grid=True)
    sp.add_argument("--grid-size", dest="grid_size", type=int, default=4096)

    sp = sub.add_parser("sweep", help="Nikolskii ratio sweep over a degree grid")
    add_common(sp, exponents=True, grid=True)
    sp.add_argument("--family", default="single_harmonic",
                    choices=["single_harmonic", "lacunary_random", "lacunary_extremal"])
    sp.add_argument("--m-rule", dest="m_rule", default="max")

    sp = sub.add_parser("search", help="maximize the ratio over coefficient space")
    add_common(sp, spectrum=True, exponents=True)
    sp.add_argument("--restarts", type=int, default=4)
    sp.add_argument("--budget", type=int, default=600)

    return parser


COMMANDS = {
    "quad-check": cmd_quad_check,
    "kernel": cmd_kernel,
    "reproduce": cmd_reproduce,
    "ratio": cmd_ratio,
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
    "search": cmd_search,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
    except ConvergenceError as exc:
        _emit_error(2, exc)
        return 2
    except (LacsphereError, ValueError) as exc:
        _emit_error(1, exc)
        return 1
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _emit_error(code, exc):
    payload = {"code": code, "message": str(exc), "context": type(exc).__name__}
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


if __name__ == "__main__":
    sys.exit(main())
