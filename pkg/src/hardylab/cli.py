"""Command-line entry point: every operation, deterministic file export.

Exit codes: 0 ok, 2 usage, 3 numeric contract violation, 4 cache IO.
Gram indices follow the (n-1) convention of the defining equations, so
the first-kind point with theta = 0 (t ~ 17.8456) has index n = 1.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import __version__, binom, hardy, io, pairs, roots, specfun, weights
from .errors import CacheIOError, HardyLabError
from .hardy import Perturbation
from .weights import WeightMode, WeightPlan

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_CACHE = 4

_PLAN_MODES = {
    "exact": WeightMode.EXACT_CESARO,
    "sigmoid": WeightMode.SIGMOID,
    "cutoff": WeightMode.SHARP_CUTOFF,
}

CONFIG_ENV_VAR = "HARDYLAB_CONFIG"


@dataclass
class RunConfig:
    """Defaults shared by all subcommands; flags override the config file."""

    mode: str = "sigmoid"
    step: float = 0.0  # 0 means: pick from the window (roots.default_step)
    tol: float = 1e-10
    format: str = "csv"
    cache_dir: str = os.path.join(os.path.expanduser("~"), ".cache", "hardylab")
    workers: int = 0  # 0 means: machine parallelism


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}
_CONFIG_CASTS = {"step": float, "tol": float, "workers": int}


class UsageError(Exception):
    pass


def load_config_file(path: str) -> dict:
    values: dict = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                key, _, val = line.partition("=")
                key = key.strip()
                if key not in _CONFIG_KEYS:
                    raise UsageError(f"{path}:{lineno}: unknown key '{key}'")
                values[key] = _CONFIG_CASTS.get(key, str)(val.strip())
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


def make_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if path:
        for key, val in load_config_file(path).items():
            setattr(cfg, key, val)
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    if cfg.format not in ("csv", "json"):
        raise UsageError(f"unknown output format '{cfg.format}'")
    return cfg


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo, _, hi = text.partition(":")
        lo_f, hi_f = float(lo), float(hi)
    except ValueError as exc:
        raise UsageError(f"bad range '{text}', expected LO:HI") from exc
    if not lo_f < hi_f:
        raise UsageError(f"bad range '{text}': need LO < HI")
    return lo_f, hi_f


def parse_perturb(text: str | None) -> Perturbation | None:
    if text is None:
        return None
    try:
        n0_s, _, phi_s = text.partition(",")
        return Perturbation(int(n0_s), float(phi_s))
    except (ValueError, HardyLabError) as exc:
        raise UsageError(f"bad perturbation '{text}', expected N0,PHI") from exc


def plan_mode(name: str) -> WeightMode:
    if name not in _PLAN_MODES:
        raise UsageError(f"mode '{name}' is not a weight mode")
    return _PLAN_MODES[name]


def grid(t_lo: float, t_hi: float, step: float) -> np.ndarray:
    count = int(math.floor((t_hi - t_lo) / step + 1e-9)) + 1
    return t_lo + step * np.arange(count)


def step_for(cfg: RunConfig, t_hi: float) -> float:
    return cfg.step if cfg.step > 0.0 else roots.default_step(t_hi)


def sidecar_meta(args: argparse.Namespace) -> dict:
    return {
        "schema": "hardylab.meta.v1",
        "version": __version__,
        "argv": sys.argv[1:],
        "command": args.command,
    }


# ---------------------------------------------------------------------------
# Point evaluation helpers (module level so worker processes can pickle them)
# ---------------------------------------------------------------------------


def _z_row(task: tuple) -> tuple:
    t, alpha, mode_name, pert = task
    if mode_name == "rs":
        return (t, hardy.z_riemann_siegel(t), None)
    if mode_name == "oracle":
        z, y = hardy.z_alpha_oracle(t, alpha)
        return (t, z, y)
    mode = _PLAN_MODES[mode_name]
    table = hardy.term_table(t, hardy.plan_for(t, mode), pert)
    return (t, hardy.z_alpha(table, alpha), hardy.y_alpha(table, alpha))


def _eval_z_rows(ts, alpha, mode_name, pert, workers: int) -> list[tuple]:
    tasks = [(float(t), alpha, mode_name, pert) for t in ts]
    if workers == 0:
        workers = os.cpu_count() or 1
    if workers > 1 and len(tasks) >= 512:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_z_row, tasks, chunksize=64))
    return [_z_row(task) for task in tasks]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_theta(args, cfg: RunConfig) -> None:
    if args.t is not None:
        ts = [args.t]
    elif args.range:
        lo, hi = parse_range(args.range)
        ts = grid(lo, hi, args.grid_step if args.grid_step else step_for(cfg, hi))
    else:
        raise UsageError("theta: need --t or --range")
    rows = []
    for t in ts:
        ev = specfun.theta(float(t))
        rows.append((ev.t, ev.theta, ev.theta_prime))
    if cfg.format == "json":
        io.write_json(
            {
                "schema": "hardylab.theta.v1",
                "rows": [
                    {"t": r[0], "theta": r[1], "theta_prime": r[2]} for r in rows
                ],
            },
            args.out,
        )
    else:
        io.write_csv(rows, ["t", "theta", "theta_prime"], args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_z(args, cfg: RunConfig) -> None:
    mode_name = args.mode or cfg.mode
    if mode_name not in (*_PLAN_MODES, "rs", "oracle"):
        raise UsageError(f"z: unknown mode '{mode_name}'")
    pert = parse_perturb(args.perturb)
    if args.t is not None:
        ts = [args.t]
    elif args.range:
        lo, hi = parse_range(args.range)
        ts = grid(lo, hi, args.grid_step if args.grid_step else step_for(cfg, hi))
    else:
        raise UsageError("z: need --t or --range")
    rows = _eval_z_rows(ts, args.alpha, mode_name, pert, cfg.workers)
    if cfg.format == "json":
        io.write_json(
            {
                "schema": "hardylab.z.v1",
                "alpha": args.alpha,
                "mode": mode_name,
                "rows": [{"t": r[0], "z": r[1], "y": r[2]} for r in rows],
            },
            args.out,
        )
    else:
        io.write_csv(rows, ["t", "z", "y"], args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_gram(args, cfg: RunConfig) -> None:
    mode = plan_mode(args.mode or cfg.mode)
    pts = roots.gram_points(
        args.kind,
        args.n_from,
        args.count,
        mode=mode,
        step=cfg.step if cfg.step > 0.0 else None,
        tol=cfg.tol,
    )
    rows = [(p.kind, p.index, p.t) for p in pts]
    if cfg.format == "json":
        io.write_json(
            {
                "schema": "hardylab.gram.v1",
                "points": [{"kind": r[0], "n": r[1], "t": r[2]} for r in rows],
            },
            args.out,
        )
    else:
        io.write_csv(rows, ["kind", "n", "t"], args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def _zero_function(args, cfg: RunConfig, t_lo: float, t_hi: float):
    """(callable, label) for the zeros subcommand's --function choices."""
    name = args.function
    mode_name = args.mode or cfg.mode
    pert = parse_perturb(getattr(args, "perturb", None))
    if name == "cos":
        return roots.cos_theta, "cos_theta"
    if name == "rs":
        return (lambda t: hardy.z_riemann_siegel(t)), "z_rs"
    if name == "oracle":
        return roots.z_oracle_function(args.alpha), f"z_oracle[alpha={args.alpha}]"
    mode = plan_mode(mode_name)
    label_pert = f",perturb=({pert.n0},{pert.phi})" if pert else ""
    if name == "z":
        f = roots.z_alpha_function(args.alpha, mode, t_lo, t_hi, pert)
        return f, f"z[alpha={args.alpha},mode={mode_name}{label_pert}]"
    if name == "y":
        factory = roots.table_factory_for(mode, t_lo, t_hi, pert)
        return (
            lambda t: hardy.y_alpha(factory(t), args.alpha)
        ), f"y[alpha={args.alpha},mode={mode_name}{label_pert}]"
    if name == "q":
        factory = roots.table_factory_for(mode, t_lo, t_hi, pert)
        return (
            lambda t: binom.q_k(factory(t), args.j)
        ), f"q[j={args.j},mode={mode_name}{label_pert}]"
    if name == "zk":
        factory = roots.table_factory_for(mode, t_lo, t_hi, pert)
        return (
            lambda t: binom.z_sequence(factory(t), args.alpha, args.k).z_seq[args.k]
        ), f"zk[alpha={args.alpha},k={args.k},mode={mode_name}{label_pert}]"
    raise UsageError(f"zeros: unknown function '{name}'")


def _compute_zero_list(args, cfg: RunConfig) -> roots.ZeroList:
    t_lo, t_hi = parse_range(args.range)
    f, label = _zero_function(args, cfg, t_lo, t_hi)
    step = step_for(cfg, t_hi)
    request = {
        "op": "zeros",
        "label": label,
        "interval": [t_lo, t_hi],
        "step": step,
        "tol": cfg.tol,
    }
    cache = None if args.no_cache else io.ZeroCache(cfg.cache_dir)
    if cache is not None:
        hit = cache.load(request)
        if hit is not None:
            return roots.ZeroList.from_dict(hit)
    zl = roots.zeros_of(f, label, t_lo, t_hi, step, cfg.tol)
    if cache is not None:
        cache.store(request, zl.to_dict())
    return zl


def cmd_zeros(args, cfg: RunConfig) -> None:
    zl = _compute_zero_list(args, cfg)
    if cfg.format == "json":
        io.write_json(zl.to_dict(), args.out)
    else:
        io.write_csv(
            [(i, z) for i, z in enumerate(zl.zeros)], ["index", "t"], args.out
        )
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_pairs(args, cfg: RunConfig) -> None:
    import json as _json

    if args.alpha_zeros and args.zero_zeros:
        za = roots.ZeroList.from_dict(_json.loads(open(args.alpha_zeros).read()))
        z0 = roots.ZeroList.from_dict(_json.loads(open(args.zero_zeros).read()))
    elif args.range:
        t_lo, t_hi = parse_range(args.range)
        mode = plan_mode(args.mode or cfg.mode)
        step = step_for(cfg, t_hi)
        fa = roots.z_alpha_function(args.alpha, mode, t_lo, t_hi)
        f0 = roots.z_alpha_function(0.0, mode, t_lo, t_hi)
        za = roots.zeros_of(fa, f"z[alpha={args.alpha}]", t_lo, t_hi, step, cfg.tol)
        z0 = roots.zeros_of(f0, "z[alpha=0]", t_lo, t_hi, step, cfg.tol)
    else:
        raise UsageError("pairs: need --range or both --alpha-zeros/--zero-zeros")
    records = pairs.classify_pairs(za, z0)
    rows = [
        (
            r.i,
            r.z0_left,
            r.z0_right,
            r.za_left,
            r.za_right,
            r.pair_class.value,
            r.gap,
        )
        for r in records
    ]
    header = ["i", "z0_left", "z0_right", "za_left", "za_right", "class", "gap"]
    if cfg.format == "json":
        io.write_json(
            {
                "schema": "hardylab.pairs.v1",
                "records": [dict(zip(header, row)) for row in rows],
            },
            args.out,
        )
    else:
        io.write_csv(rows, header, args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_spacing(args, cfg: RunConfig) -> None:
    t_lo, t_hi = parse_range(args.range)
    step = step_for(cfg, t_hi)
    if args.function == "oracle":
        f = roots.z_oracle_function(args.alpha)
        label = f"z_oracle[alpha={args.alpha}]"
    else:
        mode = plan_mode(args.mode or cfg.mode)
        f = roots.z_alpha_function(args.alpha, mode, t_lo, t_hi)
        label = f"z[alpha={args.alpha}]"
    zl = roots.zeros_of(f, label, t_lo, t_hi, step, cfg.tol)
    report = pairs.gap_statistics(zl, bin_width=args.bin_width, u_max=args.u_max)
    if cfg.format == "json":
        io.write_json(report.to_dict(), args.out)
    else:
        centers = [
            0.5 * (report.bin_edges[i] + report.bin_edges[i + 1])
            for i in range(len(report.counts))
        ]
        rows = list(zip(centers, report.counts, report.gue_reference))
        io.write_csv(rows, ["u", "count", "gue"], args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_qk(args, cfg: RunConfig) -> None:
    t_lo, t_hi = parse_range(args.range)
    mode = plan_mode(args.mode or cfg.mode)
    plan = roots.frozen_plan(mode, t_lo, t_hi) or WeightPlan.sigmoid_for(
        0.5 * (t_lo + t_hi)
    )
    factory = roots.table_factory_for(mode, t_lo, t_hi)
    j_list = [int(j) for j in args.j.split(",")]
    step = step_for(cfg, t_hi)
    report = binom.qk_cos_drift(
        (t_lo, t_hi), plan, j_list, step, cfg.tol, table_factory=factory
    )
    if args.estimate_threshold:
        report["threshold_N"] = binom.estimate_threshold_N(
            (t_lo, t_hi),
            plan,
            args.estimate_threshold,
            step,
            cfg.tol,
            table_factory=factory,
        )
    report["schema"] = "hardylab.qkdrift.v1"
    io.write_json(report, args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_reconstruct(args, cfg: RunConfig) -> None:
    mode = plan_mode(args.mode or cfg.mode)
    table = hardy.term_table(args.t, hardy.plan_for(args.t, mode))
    value, depth = binom.reconstruct_z_alpha(table, args.alpha, args.series_tol)
    direct = hardy.z_alpha(table, args.alpha)
    row = (args.t, args.alpha, value, direct, abs(value - direct), depth)
    header = ["t", "alpha", "reconstructed", "direct", "residual", "depth"]
    if cfg.format == "json":
        io.write_json(
            {"schema": "hardylab.reconstruct.v1", **dict(zip(header, row))}, args.out
        )
    else:
        io.write_csv([row], header, args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_sequence(args, cfg: RunConfig) -> None:
    mode = plan_mode(args.mode or cfg.mode)
    table = hardy.term_table(args.t, hardy.plan_for(args.t, mode))
    ev = binom.z_sequence(table, args.alpha, args.kmax)
    rows = [(0, None, None, ev.z_seq[0])]
    for j in range(1, ev.depth + 1):
        rows.append((j, ev.q[j - 1], ev.p[j - 1], ev.z_seq[j]))
    header = ["j", "q", "p", "z"]
    if cfg.format == "json":
        io.write_json(
            {
                "schema": "hardylab.sequence.v1",
                "t": args.t,
                "alpha": args.alpha,
                "rows": [dict(zip(header, r)) for r in rows],
            },
            args.out,
        )
    else:
        io.write_csv(rows, header, args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_nesting(args, cfg: RunConfig) -> None:
    t_lo, t_hi = parse_range(args.range)
    mode = plan_mode(args.mode or cfg.mode)
    plan = roots.frozen_plan(mode, t_lo, t_hi) or WeightPlan.sigmoid_for(
        0.5 * (t_lo + t_hi)
    )
    factory = roots.table_factory_for(mode, t_lo, t_hi)
    report = binom.nesting_check(
        (t_lo, t_hi),
        plan,
        args.alpha,
        args.kmax,
        step=step_for(cfg, t_hi),
        tol=cfg.tol,
        table_factory=factory,
    )
    report["schema"] = "hardylab.nesting.v1"
    io.write_json(report, args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_simulate(args, cfg: RunConfig) -> None:
    t_lo, t_hi = parse_range(args.range)
    a_lo, a_hi = parse_range(args.alpha_range)
    report = roots.simulate_critical_pair(
        t_lo,
        t_hi,
        args.n0,
        args.phi,
        a_lo,
        a_hi,
        mode=plan_mode(args.mode or cfg.mode),
        eps=args.eps,
    )
    io.write_json(report, args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


def cmd_deltas(args, cfg: RunConfig) -> None:
    if args.t is not None:
        mode = plan_mode(args.mode or cfg.mode)
        plan = hardy.plan_for(args.t, mode)
    elif args.m is not None:
        mode = plan_mode(args.mode or cfg.mode)
        plan = WeightPlan(
            mode=mode, m=args.m, r=args.r or 0, t_anchor=args.t_anchor
        )
    else:
        raise UsageError("deltas: need --t or --m")
    profile = weights.delta_profile(plan)
    rows = [(n + 1, v) for n, v in enumerate(profile)]
    if cfg.format == "json":
        io.write_json(
            {
                "schema": "hardylab.deltas.v1",
                "plan": binom._plan_dict(plan),
                "rows": [{"n": r[0], "delta": r[1]} for r in rows],
            },
            args.out,
        )
    else:
        io.write_csv(rows, ["n", "delta"], args.out)
    io.write_sidecar(args.out, sidecar_meta(args))


# Figure-analog presets: window, grid step and parameters documented here.
_FIGURES = {8, 9, 12, 13, 14, 15}


def cmd_reproduce(args, cfg: RunConfig) -> None:
    if args.figure not in _FIGURES:
        raise UsageError(
            f"reproduce: unknown figure {args.figure}, pick one of {sorted(_FIGURES)}"
        )
    os.makedirs(args.out_dir, exist_ok=True)
    out = os.path.join(args.out_dir, f"figure{args.figure:02d}.csv")
    if args.figure == 8:
        ts = grid(50.0, 85.0, 0.05)
        rows = []
        for t in ts:
            table = hardy.term_table(t, WeightPlan.sigmoid_for(t))
            rows.append((t, hardy.z_alpha(table, 6.0), roots.cos_theta(t)))
        io.write_csv(rows, ["t", "z6", "cos_theta"], out)
    elif args.figure in (9, 12):
        t_lo, t_hi = 30.0, 60.0
        ts = grid(t_lo, t_hi, 0.02)
        f0 = roots.z_alpha_function(0.0, WeightMode.SIGMOID, t_lo, t_hi)
        rows = [(t, roots.cos_theta(t), f0(t)) for t in ts]
        io.write_csv(rows, ["t", "cos_theta", "z0"], out)
        kind = 2 if args.figure == 9 else 3
        pts = roots.gram_points(kind, 1, 15 if kind == 2 else 8)
        io.write_csv(
            [(p.kind, p.index, p.t) for p in pts],
            ["kind", "n", "t"],
            os.path.join(args.out_dir, f"figure{args.figure:02d}_gram.csv"),
        )
    elif args.figure == 13:
        t_lo, t_hi = 7000.0, 7012.0
        j = 3000
        plan = WeightPlan.exact_for(0.5 * (t_lo + t_hi))
        factory = lambda t: hardy.term_table(t, plan)
        ts = grid(t_lo, t_hi, 0.01)
        qs = np.array([binom.q_k(factory(t), j) for t in ts])
        cs = np.array([roots.cos_theta(t) for t in ts])
        a_hat = binom._fit_amplitude(ts, qs, cs)
        rows = list(zip(ts, qs, a_hat * cs))
        io.write_csv(rows, ["t", f"q{j}", "a_cos_theta"], out)
    else:  # 14, 15: generalized binomial coefficient magnitudes
        alpha = args.alpha if args.alpha is not None else (-1.5 if args.figure == 14 else 0.5)
        rows = []
        b = 1.0
        for j in range(1, 201):
            b *= (alpha - j + 1) / j
            rows.append((j, abs(b)))
        io.write_csv(rows, ["j", "abs_coefficient"], out)
    io.write_sidecar(out, sidecar_meta(args))


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file (or $HARDYLAB_CONFIG)")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], help="output format")
    common.add_argument("--mode", help="weight mode: exact|sigmoid|cutoff")
    common.add_argument("--step", type=float, help="scan/grid step")
    common.add_argument("--tol", type=float, help="root refinement tolerance")
    common.add_argument("--cache-dir", dest="cache_dir", help="zero cache directory")
    common.add_argument(
        "--no-cache", action="store_true", help="bypass the zero cache"
    )
    common.add_argument("--workers", type=int, help="parallel workers (0 = auto)")

    p = argparse.ArgumentParser(
        prog="hardylab",
        description="Generalized Hardy function laboratory",
    )
    p.add_argument("--version", action="version", version=f"hardylab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("theta", parents=[common], help="theta and theta' rows")
    sp.add_argument("--t", type=float)
    sp.add_argument("--range")
    sp.add_argument("--grid-step", type=float, dest="grid_step")
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("z", parents=[common], help="Z_alpha / Y_alpha evaluation")
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--t", type=float)
    sp.add_argument("--range")
    sp.add_argument("--grid-step", type=float, dest="grid_step")
    sp.add_argument("--perturb", help="N0,PHI phase shift of one term")
    sp.set_defaults(func=cmd_z)

    sp = sub.add_parser("gram", parents=[common], help="Gram points of three kinds")
    sp.add_argument("--kind", type=int, choices=[1, 2, 3], required=True)
    sp.add_argument("--from", type=int, dest="n_from", required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.set_defaults(func=cmd_gram)

    sp = sub.add_parser("zeros", parents=[common], help="zero lists of any function")
    sp.add_argument(
        "--function",
        choices=["z", "y", "q", "zk", "cos", "rs", "oracle"],
        default="z",
    )
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--j", type=int, default=1)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--range", required=True)
    sp.add_argument("--perturb")
    sp.set_defaults(func=cmd_zeros)

    sp = sub.add_parser("pairs", parents=[common], help="classify zero pairs")
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--range")
    sp.add_argument("--alpha-zeros", dest="alpha_zeros", help="ZeroList JSON file")
    sp.add_argument("--zero-zeros", dest="zero_zeros", help="ZeroList JSON file")
    sp.set_defaults(func=cmd_pairs)

    sp = sub.add_parser("spacing", parents=[common], help="gap statistics vs GUE")
    sp.add_argument("--function", choices=["z", "oracle"], default="oracle")
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--range", required=True)
    sp.add_argument("--bin-width", type=float, default=0.1, dest="bin_width")
    sp.add_argument("--u-max", type=float, default=3.0, dest="u_max")
    sp.set_defaults(func=cmd_spacing)

    sp = sub.add_parser("qk", parents=[common], help="Q_j zero drift vs cos theta")
    sp.add_argument("--range", required=True)
    sp.add_argument("--j", default="1,10,100", help="comma-separated j values")
    sp.add_argument(
        "--estimate-threshold",
        type=int,
        dest="estimate_threshold",
        help="also estimate the drift-flip threshold N up to this j",
    )
    sp.set_defaults(func=cmd_qk)

    sp = sub.add_parser(
        "reconstruct", parents=[common], help="binomial-series reconstruction"
    )
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--series-tol", type=float, default=1e-13, dest="series_tol")
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("sequence", parents=[common], help="Z_{alpha,k} trajectory")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--kmax", type=int, default=20)
    sp.set_defaults(func=cmd_sequence)

    sp = sub.add_parser("nesting", parents=[common], help="zero-interval nesting")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--range", required=True)
    sp.add_argument("--kmax", type=int, default=5)
    sp.set_defaults(func=cmd_nesting)

    sp = sub.add_parser(
        "simulate", parents=[common], help="critical-pair simulation (phase shift)"
    )
    sp.add_argument("--range", required=True)
    sp.add_argument("--n0", type=int, default=3)
    sp.add_argument("--phi", type=float, default=-1.0)
    sp.add_argument("--alpha-range", dest="alpha_range", default="0.4:1.2")
    sp.add_argument("--eps", type=float, default=1e-6)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("deltas", parents=[common], help="weight profile export")
    sp.add_argument("--t", type=float)
    sp.add_argument("--m", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--t-anchor", type=float, dest="t_anchor")
    sp.set_defaults(func=cmd_deltas)

    sp = sub.add_parser(
        "reproduce", parents=[common], help="figure-analog dataset presets"
    )
    sp.add_argument("--figure", type=int, required=True)
    sp.add_argument("--out-dir", dest="out_dir", default="figures")
    sp.add_argument("--alpha", type=float)
    sp.set_defaults(func=cmd_reproduce)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CacheIOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except HardyLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
