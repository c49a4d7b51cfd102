"""Command-line driver: parameter sweeps, field maps, benchmarks, validation.

Subcommands
-----------
sweep-k      cross section / conductance / renormalization data vs kd
sweep-geom   sigma(a, y0) grid at fixed kd, with the free-space column
field-map    mirror-wave or Green's function samples on a grid
greens-bench terms-vs-error convergence table
validate     run the full identity suite; exit 1 on any failure

Exit codes: 0 success, 1 validation failure, 2 usage or domain error.
Grid points falling inside the guard band of a mode opening are emitted as
flagged gap rows carrying the one-sided asymptote columns instead of being
dropped.  Outputs are deterministic: rerunning a command produces
byte-identical files.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__, greens, mirror, renorm, scattering
from .errors import DegenerateMode, WireError
from .output import fmt, svg_heatmap, svg_line_plot, write_table_csv, write_table_json
from .validate import CHECK_GROUPS, run_checks
from .waveguide import DEFAULT_MODE_GUARD, WireConfig

SWEEP_COLUMNS = [
    "kd", "n_open", "sigma", "conductance", "conductance_empty", "sigma_free",
    "g_r_re", "g_r_im", "rs_re", "rs_im", "delta0", "gap",
    "sigma_asym_below", "sigma_limit_above", "gr_asym_below_re", "gr_asym_above_im",
]
GEOM_COLUMNS = ["a", "y0", "sigma", "sigma_free", "gap"]
BENCH_COLUMNS = ["representation", "terms", "error"]
FIELD_COLUMNS = ["x", "y", "value_re", "value_im"]

NAN = float("nan")


def _sweep_row(kd: float, cfg: WireConfig):
    guard = cfg.mode_guard
    n_near = int(round(kd / np.pi))
    if n_near >= 1 and abs(kd - n_near * np.pi) <= guard:
        eps = max(abs(kd - n_near * np.pi), guard)
        try:
            sig_below = scattering.sigma_edge_asymptote(n_near, eps, cfg.y0) if n_near >= 2 else NAN
            gr_below = renorm.gr_edge_asymptote(n_near, eps, cfg.y0, "below").real
            gr_above = renorm.gr_edge_asymptote(n_near, eps, cfg.y0, "above").imag
            sig_above = 1.0
        except DegenerateMode:
            sig_below = gr_below = gr_above = NAN
            sig_above = NAN
        return [kd, n_near, NAN, NAN, n_near, NAN, NAN, NAN, NAN, NAN, NAN, 1,
                sig_below, sig_above, gr_below, gr_above]
    n_open = int(np.floor(kd / np.pi))
    st = renorm.renorm_state(kd, cfg)
    sigma_f = scattering.free_cross_section(kd, cfg.a) / cfg.d if cfg.a != 0.0 else 0.0
    if n_open >= 1:
        sigma = float(abs(st.rs) ** 2 * st.sigma_open ** 2)
        cond = n_open - sigma
        delta0 = scattering.phase_shift(kd, cfg).delta0 if cfg.a != 0.0 else 0.0
    else:
        sigma, cond, delta0 = 0.0, 0.0, NAN
    return [kd, n_open, sigma, cond, n_open, sigma_f,
            st.g_r.real, st.g_r.imag, st.rs.real, st.rs.imag, delta0, 0,
            NAN, NAN, NAN, NAN]


def _map_ordered(fn, items, workers: int):
    """Map preserving input order; rows are pure, so threading cannot change values."""
    if workers <= 1:
        return [fn(it) for it in items]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def run_sweep_k(args) -> int:
    cfg = WireConfig(y0=args.y0, a=args.a, x0=args.x0)
    kds = np.linspace(args.kd_min, args.kd_max, args.points)
    rows = _map_ordered(lambda kd: _sweep_row(float(kd), cfg), kds, args.workers)
    meta = {
        "generator": f"wirescat {__version__}",
        "command": "sweep-k",
        "y0": fmt(args.y0), "a": fmt(args.a), "x0": fmt(args.x0),
        "kd_min": fmt(args.kd_min), "kd_max": fmt(args.kd_max),
        "points": args.points, "mode_guard": fmt(DEFAULT_MODE_GUARD),
        "tolerance": fmt(args.tol),
    }
    _write(args, SWEEP_COLUMNS, rows, meta)
    if args.svg:
        svg_line_plot(args.svg, [r[0] for r in rows],
                      {"sigma": [r[2] for r in rows],
                       "conductance": [r[3] for r in rows],
                       "N (empty wire)": [float(r[4]) for r in rows]},
                      f"impurity at y0={fmt(args.y0)}, a={fmt(args.a)}", "kd")
    return 0


def run_sweep_geom(args) -> int:
    kd = args.kd
    a_grid = np.linspace(args.a_min, args.a_max, args.a_points)
    y0_grid = np.linspace(args.y0_min, args.y0_max, args.y0_points)
    pairs = [(float(a), float(y0)) for a in a_grid for y0 in y0_grid]

    def geom_row(pair):
        a, y0 = pair
        cfg = WireConfig(y0=y0, a=a)
        sigma = scattering.cross_section(kd, cfg)
        sigma_f = scattering.free_cross_section(kd, a) / cfg.d if a != 0.0 else 0.0
        return [a, y0, sigma, sigma_f, 0]

    rows = _map_ordered(geom_row, pairs, args.workers)
    sigma_map = np.array([row[2] for row in rows]).reshape(len(a_grid), len(y0_grid))
    meta = {
        "generator": f"wirescat {__version__}",
        "command": "sweep-geom", "kd": fmt(kd),
        "a_min": fmt(args.a_min), "a_max": fmt(args.a_max), "a_points": args.a_points,
        "y0_min": fmt(args.y0_min), "y0_max": fmt(args.y0_max), "y0_points": args.y0_points,
    }
    _write(args, GEOM_COLUMNS, rows, meta)
    if args.svg:
        svg_heatmap(args.svg, list(a_grid), list(y0_grid), sigma_map.tolist(),
                    f"sigma(a, y0) at kd={fmt(kd)}")
    return 0


def run_field_map(args) -> int:
    cfg = WireConfig(y0=args.y0, a=args.a, x0=args.x0)
    spec = mirror.GridSpec(args.x_min, args.x_max, args.y_min, args.y_max,
                           args.nx, args.ny)
    grid = mirror.field_map(args.kind, args.kd, cfg, spec, tol=args.tol)
    complex_field = np.iscomplexobj(grid.values)
    rows = []
    for i, x in enumerate(grid.xs):
        for j, y in enumerate(grid.ys):
            v = grid.values[i, j]
            rows.append([float(x), float(y), float(np.real(v)),
                         float(np.imag(v)) if complex_field else 0.0])
    meta = {
        "generator": f"wirescat {__version__}",
        "command": "field-map", "kind": grid.kind, "kd": fmt(args.kd),
        "y0": fmt(args.y0), "a": fmt(args.a), "x0": fmt(args.x0),
        "nx": args.nx, "ny": args.ny,
        "x_min": fmt(args.x_min), "x_max": fmt(args.x_max),
        "y_min": fmt(args.y_min), "y_max": fmt(args.y_max),
    }
    _write(args, FIELD_COLUMNS, rows, meta)
    if args.svg:
        re_vals = np.real(grid.values)
        svg_heatmap(args.svg, list(grid.xs), list(grid.ys), re_vals.tolist(),
                    f"{grid.kind} at kd={fmt(args.kd)}, y0={fmt(args.y0)}")
    return 0


def run_greens_bench(args) -> int:
    r = (args.x, args.y)
    r0 = (args.x0, args.y0)
    reps = tuple(args.representations.split(","))
    term_grid = tuple(int(t) for t in args.terms.split(","))
    rows_b = greens.convergence_benchmark(r, r0, args.kd, reps, term_grid)
    rows = [[b.representation, b.terms, b.error] for b in rows_b]
    meta = {
        "generator": f"wirescat {__version__}",
        "command": "greens-bench", "kd": fmt(args.kd),
        "x": fmt(args.x), "y": fmt(args.y), "x0": fmt(args.x0), "y0": fmt(args.y0),
        "representations": args.representations,
    }
    _write(args, BENCH_COLUMNS, rows, meta)
    return 0


def run_validate(args) -> int:
    groups = args.groups.split(",") if args.groups else None
    results = run_checks(fast=args.fast, perturb_s=args.perturb_s, groups=groups)
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        note = f"  ({r.note})" if r.note else ""
        lines.append(f"{status}  {r.name:<{width}}  residual={fmt(r.residual)}"
                     f"  threshold={fmt(r.threshold)}{note}")
    report = "\n".join(lines)
    print(report)
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    if args.out:
        rows = [[r.name, r.residual, r.threshold, int(r.passed)] for r in results]
        meta = {"generator": f"wirescat {__version__}", "command": "validate",
                "fast": int(args.fast)}
        cols = ["check", "residual", "threshold", "passed"]
        if args.format == "json":
            write_table_json(args.out, cols, rows, meta)
        else:
            write_table_csv(args.out, cols, rows, meta)
    return 1 if n_fail else 0


def _write(args, columns, rows, meta) -> None:
    if args.format == "json":
        write_table_json(args.out, columns, rows, meta)
    else:
        write_table_csv(args.out, columns, rows, meta)


def _load_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line {line!r} is not key=value")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wirescat",
        description="Scattering and transport observables for a point impurity "
                    "in a hard-walled 2D waveguide (nondimensional units, d = 1).")
    parser.add_argument("--version", action="version", version=f"wirescat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_impurity=True):
        # required values may come from --config, so requiredness is checked
        # after the merge rather than by argparse
        p.add_argument("--config", help="key=value file; command-line flags win")
        p.add_argument("--out", help="output file path (required)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--svg", help="optional SVG rendering path")
        p.add_argument("--tol", type=float, default=1e-12, help="series tolerance")
        p.add_argument("--workers", type=int, default=1,
                       help="thread budget for sweep points (output order fixed)")
        if with_impurity:
            p.add_argument("--y0", type=float, help="impurity height, 0<y0<1 (required)")
            p.add_argument("--a", type=float, default=0.1, help="scattering length, |a|<1/2")
            p.add_argument("--x0", type=float, default=0.0)

    p = sub.add_parser("sweep-k", help="observables vs kd at fixed impurity")
    common(p)
    p.add_argument("--kd-min", type=float, default=0.5 * np.pi)
    p.add_argument("--kd-max", type=float, default=12.5 * np.pi)
    p.add_argument("--points", type=int, default=2000)
    p.set_defaults(func=run_sweep_k)

    p = sub.add_parser("sweep-geom", help="sigma over (a, y0) at fixed kd")
    common(p, with_impurity=False)
    p.add_argument("--kd", type=float, default=12.5 * np.pi)
    p.add_argument("--a-min", type=float, default=-0.1)
    p.add_argument("--a-max", type=float, default=0.1)
    p.add_argument("--a-points", type=int, default=101)
    p.add_argument("--y0-min", type=float, default=0.05)
    p.add_argument("--y0-max", type=float, default=0.5)
    p.add_argument("--y0-points", type=int, default=51)
    p.set_defaults(func=run_sweep_geom)

    p = sub.add_parser("field-map", help="sample a mirror wave or G_w on a grid")
    common(p)
    p.add_argument("--kind", default="s",
                   choices=("s", "s_plus", "px", "dxy", "f", "greens"))
    p.add_argument("--kd", type=float, default=40.0)
    p.add_argument("--x-min", type=float, default=-1.0)
    p.add_argument("--x-max", type=float, default=1.0)
    p.add_argument("--y-min", type=float, default=0.0)
    p.add_argument("--y-max", type=float, default=1.0)
    p.add_argument("--nx", type=int, default=400)
    p.add_argument("--ny", type=int, default=100)
    p.set_defaults(func=run_field_map)

    p = sub.add_parser("greens-bench", help="convergence benchmark at one point pair")
    common(p, with_impurity=False)
    p.add_argument("--kd", type=float, default=2.5 * np.pi)
    p.add_argument("--x", type=float, default=0.37)
    p.add_argument("--y", type=float, default=0.61)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--y0", type=float, default=0.3)
    p.add_argument("--representations", default="spectral,image,kummer,kummer_raw")
    p.add_argument("--terms", default="10,30,100,300,1000,3000,10000")
    p.set_defaults(func=run_greens_bench)

    p = sub.add_parser("validate", help="run the identity suite")
    p.add_argument("--fast", action="store_true", help="shrink grids for a smoke run")
    p.add_argument("--groups", help="comma-separated subset of: " + ",".join(CHECK_GROUPS))
    p.add_argument("--out", help="optional machine-readable report path")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--perturb-s", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=run_validate)
    return parser


def _argument_types(parser: argparse.ArgumentParser, command: str) -> dict:
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    return {action.dest: (action.type or str)
            for action in sub.choices[command]._actions}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, remaining = parser.parse_known_args(argv)
    if remaining:
        parser.error(f"unrecognized arguments: {' '.join(remaining)}")
    if getattr(args, "config", None):
        try:
            overrides = _load_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        explicit = set()
        for token in (argv if argv is not None else sys.argv[1:]):
            if token.startswith("--"):
                explicit.add(token[2:].split("=", 1)[0].replace("-", "_"))
        casters = _argument_types(parser, args.command)
        for key, val in overrides.items():
            if key in explicit or not hasattr(args, key):
                continue
            caster = casters.get(key, str)
            try:
                setattr(args, key, caster(val))
            except ValueError:
                print(f"error: config value {key}={val!r} is not a {caster.__name__}",
                      file=sys.stderr)
                return 2
    required = ("out", "y0") if args.command != "validate" else ()
    missing = [name for name in required
               if hasattr(args, name) and getattr(args, name) is None]
    if missing:
        print("error: missing required value(s): " + ", ".join(f"--{m}" for m in missing),
              file=sys.stderr)
        return 2
    if getattr(args, "points", 2) < 2 or getattr(args, "a_points", 2) < 2 \
            or getattr(args, "y0_points", 2) < 2:
        print("error: sweeps need at least 2 grid points", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except WireError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
