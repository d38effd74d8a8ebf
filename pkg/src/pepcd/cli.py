"""Command-line entry point: ``pepcd <command> [options]``.

Exit status: 0 on success, 2 on bad input, 3 when the requested normal
approximation is degenerate.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Dict, List, Optional

import numpy as np

from . import asymptotics as asy
from .errors import DegenerateLimit, PcdError
from .geometry import (Triangle, delaunay, equilateral, read_points_csv,
                       write_points_csv)
from .graphs import as_triangulation, build_pcd, density_report
from .montecarlo import SimConfig, replicate_sample, run_replicates
from .mtdensity import multi_density
from .proximity import parse_r, proximity_polygon
from .spatial import csr_test

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE = 0, 2, 3


# ---------------------------------------------------------------------------
# output


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    if x == 0.0:
        return "0"  # no negative zero
    return f"{x:.17g}"


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(to_json(v) for v in seq) + "]"
        items = [pad + to_json(v, indent, _level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit(text: str, out: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def parse_grid(text: str) -> np.ndarray:
    """"a:b:k" for k evenly spaced values, or a comma list (may include inf)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:count, got {text!r}")
        a, b, k = float(parts[0]), float(parts[1]), int(parts[2])
        if a < 1 or b < a or k < 1:
            raise ValueError(f"grid must lie in [1, r_max] with count >= 1, got {text!r}")
        return np.linspace(a, b, k)
    return np.array([parse_r(v) for v in text.split(",") if v.strip()])


def parse_pair(text: str) -> np.ndarray:
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 2:
        raise ValueError(f"expected x,y, got {text!r}")
    return np.array(vals)


def parse_triangle(text: str) -> Triangle:
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 6:
        raise ValueError(f"expected x1,y1,x2,y2,x3,y3, got {text!r}")
    return Triangle.from_array(vals)


def read_config(path: str) -> Dict[str, str]:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def _default_seed() -> int:
    env = os.environ.get("PCD_SEED")
    return int(env) if env not in (None, "") else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pepcd", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="key=value file; command-line flags take precedence")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False):
        sp.add_argument("--out", default="-", help="output path (default stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--drop-outside", action="store_true",
                        help="skip points outside the hull instead of failing")
        sp.add_argument("--exact-predicates", dest="exact_predicates",
                        action=argparse.BooleanOptionalAction, default=True)
        if seed:
            sp.add_argument("--seed", type=int, default=_default_seed())
            sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("curves", help="closed-form p, Var and nu on an r grid (CSV)")
    sp.add_argument("--grid", default="1:5:401", help="start:stop:count or comma list")
    common(sp)
    sp.set_defaults(format="csv")

    sp = sub.add_parser("simulate", help="Monte Carlo densities on uniform samples")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=parse_r, required=True)
    sp.add_argument("--reps", type=int, default=1000)
    sp.add_argument("--kind", choices=("arc", "and", "or", "all"), default="all")
    sp.add_argument("--geometry", default="te", help="'te' or a CSV of anchor points")
    sp.add_argument("--bins", type=int, default=None)
    sp.add_argument("--values", action="store_true", help="include per-replicate values")
    sp.add_argument("--dump-sample", default=None, help="write replicate 0's points as CSV")
    sp.add_argument("--hist-csv", default=None, help="write the first kind's histogram")
    common(sp, seed=True)

    sp = sub.add_parser("analyze", help="densities of given data")
    sp.add_argument("--x", required=True, help="CSV of sample points")
    sp.add_argument("--y", default=None, help="CSV of anchors (default: standard triangle)")
    sp.add_argument("--r", type=parse_r, required=True)
    common(sp)

    sp = sub.add_parser("test", help="CSR test with the all-pairs edge density")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--r", type=parse_r, required=True)
    sp.add_argument("--kind", choices=("and", "or"), default="and")
    sp.add_argument("--allow-degenerate", action="store_true",
                    help="permit r = 1 with the and kernel when triangle weights differ")
    common(sp)

    sp = sub.add_parser("region", help="proximity region polygon of one point")
    sp.add_argument("--tri", default=None, help="x1,y1,x2,y2,x3,y3 (default: standard)")
    sp.add_argument("--r", type=parse_r, required=True)
    sp.add_argument("--x", type=parse_pair, required=True, help="px,py")
    common(sp)

    sp = sub.add_parser("delaunay", help="Delaunay triangulation of anchor points")
    sp.add_argument("--y", required=True)
    common(sp)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: List[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = read_config(known.config)
    cmd = next((a for a in rest if not a.startswith("-")), None)
    subs = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    sp = subs.choices.get(cmd)
    if sp is None:
        return
    actions = {a.dest: a for a in sp._actions}
    defaults = {}
    for k, v in cfg.items():
        if k not in actions:
            raise ValueError(f"unknown config key {k!r} for {cmd}")
        act = actions[k]
        act.required = False
        if act.nargs == 0 or isinstance(act, argparse.BooleanOptionalAction):
            defaults[k] = v.lower() in ("1", "true", "yes", "on")
        else:
            defaults[k] = v
    sp.set_defaults(**defaults)


# ---------------------------------------------------------------------------
# commands


def cmd_curves(a) -> str:
    rows = asy.curves(parse_grid(a.grid))
    cols = ["r", "p_and", "p_or", "var_and", "var_or", "nu_and", "nu_or"]
    if a.format == "json":
        return to_json([dict(zip(cols, map(float, row))) for row in rows])
    lines = [",".join(cols)] + [",".join(fmt_float(float(v)) for v in row) for row in rows]
    return "\n".join(lines)


def _anchors(geometry: Optional[str], exact: bool):
    if geometry in (None, "te"):
        return as_triangulation(equilateral())
    pts = read_points_csv(geometry)
    if pts.shape[0] == 3:
        return as_triangulation(Triangle.from_array(pts))
    return delaunay(pts, exact=exact)


def cmd_simulate(a) -> str:
    kinds = ("arc", "and", "or") if a.kind == "all" else (a.kind,)
    tri = _anchors(a.geometry, a.exact_predicates)
    cfg = SimConfig(r=a.r, n=a.n, reps=a.reps, seed=a.seed, anchors=tri, kinds=kinds,
                    workers=a.threads, bins=a.bins)
    res = run_replicates(cfg)
    if a.dump_sample:
        write_points_csv(replicate_sample(cfg, tri, 0), a.dump_sample)
    if a.hist_csv:
        emit(res[cfg.kinds[0]].hist.to_csv(), a.hist_csv)
    report = {"n": a.n, "r": a.r, "reps": a.reps, "seed": a.seed,
              "stats": {k.value: v.to_json(with_values=a.values) for k, v in res.items()}}
    if a.format == "csv":
        lines = ["kind,mean,variance,skewness,kurtosis"]
        for k, v in res.items():
            rp = v.report
            lines.append(",".join([k.value] + [fmt_float(x) for x in
                                               (rp.mean, rp.variance, rp.skewness, rp.kurtosis)]))
        return "\n".join(lines)
    return to_json(report)


def cmd_analyze(a) -> str:
    X = read_points_csv(a.x)
    tri = _anchors(a.y, a.exact_predicates) if a.y else as_triangulation(equilateral())
    inst = build_pcd(tri, X, a.r, drop_outside=a.drop_outside)
    rep = density_report(inst)
    rep["excluded"] = inst.excluded
    if tri.n_triangles > 1:
        rep["multi"] = {k: multi_density(inst, k).to_json() for k in ("and", "or")}
    if inst.n >= 2 and not math.isinf(a.r):
        rep["asymptotic"] = {
            k: {"mean": asy.mean(a.r, k), "nu": asy.cov_kernel(a.r, k)} for k in ("and", "or")}
    if a.format == "csv":
        return "rho_a,rho_and,rho_or,n,r\n" + ",".join(
            fmt_float(float(rep[c])) if c not in ("n",) else str(rep[c])
            for c in ("rho_a", "rho_and", "rho_or", "n", "r"))
    return to_json(rep)


def cmd_test(a) -> str:
    X = read_points_csv(a.x)
    Y = read_points_csv(a.y)
    tri = delaunay(Y, exact=a.exact_predicates)
    res = csr_test(X, Y, a.r, a.kind, triangulation=tri, allow_degenerate=a.allow_degenerate)
    return to_json(res.to_json())


def cmd_region(a) -> str:
    tri = parse_triangle(a.tri) if a.tri else equilateral()
    poly = proximity_polygon(tri, a.r, a.x)
    return to_json({"r": a.r, "x": a.x.tolist(), "triangle": tri.vertices.tolist(),
                    "polygon": poly.to_json(), "area": poly.area})


def cmd_delaunay(a) -> str:
    tri = delaunay(read_points_csv(a.y), exact=a.exact_predicates)
    return to_json({**tri.to_json(), "hull": tri.hull})


COMMANDS = {"curves": cmd_curves, "simulate": cmd_simulate, "analyze": cmd_analyze,
            "test": cmd_test, "region": cmd_region, "delaunay": cmd_delaunay}


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        text = COMMANDS[args.command](args)
    except DegenerateLimit as exc:
        print(f"error: DegenerateLimit: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (PcdError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(text, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
