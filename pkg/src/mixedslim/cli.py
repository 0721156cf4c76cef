"""Command-line front end: simulate, detect, evaluate, experiment, sweeps.

All commands emit CSV (floats at 6 significant digits); the sweep commands can
additionally render a PNG figure next to the CSV with --plot. Every flag has a
config-file twin (INI sections, flat keys); flags win over the config file.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import dcmm, graph, metrics
from .errors import InputError, NumericalError
from .membership import ClusterOptions, harden, mixed_slim
from .slim import SlimConfig

__all__ = ["main"]

FLOAT_FMT = "%.6g"


def _fmt(x) -> str:
    if isinstance(x, float):
        return FLOAT_FMT % x
    return str(x)


def _write_csv(path, fieldnames, rows, report_items=None):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(fieldnames)
        for row in rows:
            w.writerow([_fmt(row[k]) for k in fieldnames])
        for key, val in report_items or []:
            f.write(f"# {key} = {val}\n")


def _write_pi(path, pi, report_items=None):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        for row in pi:
            w.writerow([FLOAT_FMT % v for v in row])
        for key, val in report_items or []:
            f.write(f"# {key} = {val}\n")


def _read_pi(path) -> np.ndarray:
    rows = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([float(tok) for tok in line.split(",")])
    if not rows:
        raise InputError(f"{path}: no membership rows")
    return np.array(rows)


def _slim_config(args) -> SlimConfig:
    rule = args.tau_rule
    kwargs = dict(gamma=args.gamma, tau_rule=rule, tau_coeff=args.tau_coeff,
                  variant=args.variant, t=args.t)
    if rule == "explicit":
        kwargs["tau_value"] = args.tau_value
    return SlimConfig(**kwargs)


def _cluster_options(args) -> ClusterOptions:
    return ClusterOptions(restarts=args.restarts, seed=args.seed)


def _rep_seed(base_seed: int, sweep_value: float, rep: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(base_seed), int(round(sweep_value * 1e6)) & 0x7FFFFFFF, rep])


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"bad grid {text!r}") from exc


# --- subcommands ----------------------------------------------------------

def cmd_simulate(args) -> int:
    values = _parse_grid(args.values) if args.values else dcmm.experiment1_grid(args.sub, args.n)
    os.makedirs(args.out, exist_ok=True)
    for gi, v in enumerate(values):
        for rep in range(args.reps):
            ss = _rep_seed(args.seed, v, rep)
            theta_seed, sample_seed = ss.spawn(2)
            params = dcmm.experiment1_params(args.sub, v, n=args.n, seed=theta_seed)
            a = dcmm.sample_adjacency(params, sample_seed)
            stem = os.path.join(args.out, f"sub-{args.sub}_v{_fmt(float(v))}_rep{rep}")
            graph.save_edge_list(a, stem + ".edges")
            _write_pi(stem + ".pi.csv", params.pi)
            if args.sub == "g":
                with open(stem + ".theta.csv", "w") as f:
                    for t in params.theta:
                        f.write(FLOAT_FMT % t + "\n")
    print(f"wrote {len(values) * args.reps} samples to {args.out}")
    return 0


def cmd_detect(args) -> int:
    loaded = graph.load_edge_list(args.network, fmt=args.format)
    result = mixed_slim(loaded.graph, args.k, _slim_config(args),
                        _cluster_options(args), norm_mode=args.norm)
    items = result.report.as_items()
    if args.out:
        _write_pi(args.out, result.pi, report_items=items)
    else:
        for row in result.pi:
            print(",".join(FLOAT_FMT % v for v in row))
    for key, val in items:
        print(f"# {key} = {val}", file=sys.stderr)
    return 0


def cmd_evaluate(args) -> int:
    pi_hat = _read_pi(args.estimate)
    pi_true = _read_pi(args.truth)
    report = metrics.mixed_hamming_error(pi_hat, pi_true)
    print(f"mixed_hamming = {FLOAT_FMT % report.mixed_hamming}")
    print(f"hard_errors = {report.hard_errors}/{report.n}")
    print(f"permutation = {report.permutation}")
    return 0


def _run_rep(task):
    """One replication of one grid point; module-level for process pools."""
    sub, value, n, base_seed, rep, cfg, opts, norm = task
    ss = _rep_seed(base_seed, value, rep)
    theta_seed, sample_seed = ss.spawn(2)
    params = dcmm.experiment1_params(sub, value, n=n, seed=theta_seed)
    a = dcmm.sample_adjacency(params, sample_seed)
    t0 = time.perf_counter()
    result = mixed_slim(a, params.k, cfg, opts, norm_mode=norm)
    elapsed = (time.perf_counter() - t0) * 1000.0
    err = metrics.mixed_hamming_error(result.pi, params.pi).mixed_hamming
    flagged = result.report.degenerate_rows + result.report.fallback_rows
    return err, result.report.eigengap, flagged / n, elapsed


def cmd_experiment(args) -> int:
    values = _parse_grid(args.values) if args.values else dcmm.experiment1_grid(args.sub, args.n)
    if not values:
        raise InputError("empty sweep grid")
    cfg = _slim_config(args)
    opts = _cluster_options(args)
    tasks = [(args.sub, v, args.n, args.seed, rep, cfg, opts, args.norm)
             for v in values for rep in range(args.reps)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_run_rep, tasks))
    else:
        results = [_run_rep(t) for t in tasks]

    rows = []
    for gi, v in enumerate(values):
        chunk = results[gi * args.reps:(gi + 1) * args.reps]
        errs = np.array([c[0] for c in chunk])
        rows.append({
            "sweep_value": float(v),
            "mean_error": float(errs.mean()),
            "std_error": float(errs.std(ddof=1)) if len(errs) > 1 else 0.0,
            "mean_eigengap": float(np.mean([c[1] for c in chunk])),
            "flagged_row_rate": float(np.mean([c[2] for c in chunk])),
            "wall_time_ms": float(np.sum([c[3] for c in chunk])),
        })
    fields = ["sweep_value", "mean_error", "std_error", "mean_eigengap",
              "flagged_row_rate", "wall_time_ms"]
    _write_csv(args.out, fields, rows)
    if args.plot:
        from .plots import render_sweep
        render_sweep(rows, "sweep_value", "mean_error",
                     os.path.splitext(args.out)[0] + ".png",
                     title=f"Experiment 1({args.sub}), n={args.n}, reps={args.reps}",
                     y_err_key="std_error")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _fixed_sample(args):
    """The graph/truth pair a sensitivity sweep runs against."""
    if args.network:
        loaded = graph.load_edge_list(args.network, fmt=args.format)
        if not args.truth:
            raise InputError("--truth is required with --network")
        pi_true = _read_pi(args.truth)
        return loaded.graph, pi_true, pi_true.shape[1]
    ss = _rep_seed(args.seed, 0.0, 0)
    theta_seed, sample_seed = ss.spawn(2)
    params = dcmm.experiment1_params(args.sub, args.sweep_value, n=args.n, seed=theta_seed)
    a = dcmm.sample_adjacency(params, sample_seed)
    return a, params.pi, params.k


def _sweep(args, grid, make_cfg, x_key):
    a, pi_true, k = _fixed_sample(args)
    if args.k:
        k = args.k
    opts = _cluster_options(args)
    rows = []
    for v in grid:
        result = mixed_slim(a, k, make_cfg(v), opts, norm_mode=args.norm)
        report = metrics.mixed_hamming_error(result.pi, pi_true)
        rows.append({x_key: float(v),
                     "mixed_hamming": report.mixed_hamming,
                     "hard_errors": report.hard_errors,
                     "eigengap": result.report.eigengap})
    fields = [x_key, "mixed_hamming", "hard_errors", "eigengap"]
    _write_csv(args.out, fields, rows)
    if args.plot:
        from .plots import render_sweep
        render_sweep(rows, x_key, "mixed_hamming",
                     os.path.splitext(args.out)[0] + ".png",
                     title=f"{x_key} sensitivity")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_sweep_tau(args) -> int:
    grid = _parse_grid(args.c_grid) if args.c_grid else [round(0.1 * i, 1) for i in range(21)]

    def make_cfg(c):
        if c == 0:
            return SlimConfig(gamma=args.gamma, tau_rule="zero",
                              variant=args.variant, t=args.t)
        return SlimConfig(gamma=args.gamma, tau_rule="mean-degree", tau_coeff=c,
                          variant=args.variant, t=args.t)

    return _sweep(args, grid, make_cfg, "c")


def cmd_sweep_t(args) -> int:
    grid = [int(v) for v in _parse_grid(args.t_grid)] if args.t_grid else list(range(1, 21))

    def make_cfg(t):
        return SlimConfig(gamma=args.gamma, tau_rule=args.tau_rule,
                          tau_coeff=args.tau_coeff, variant="approx", t=int(t))

    return _sweep(args, grid, make_cfg, "t")


# --- argument plumbing ----------------------------------------------------

_DEFAULTS = {
    "k": 0, "gamma": 0.25, "tau_rule": "mean-degree", "tau_coeff": 0.1,
    "tau_value": 0.0, "variant": "exact", "t": 10, "reps": 50, "seed": 0,
    "norm": "l1", "restarts": 10, "n": 500, "workers": 1, "format": "auto",
    "values": "", "sub": "a", "sweep_value": 0.1, "plot": False,
    "network": "", "truth": "", "estimate": "", "c_grid": "", "t_grid": "",
    "out": "",
}


def _add_common(p, *names):
    for name in names:
        flag = "--" + name.replace("_", "-")
        default = argparse.SUPPRESS
        if name in ("k", "t", "reps", "seed", "restarts", "n", "workers"):
            p.add_argument(flag, type=int, default=default)
        elif name in ("gamma", "tau_coeff", "tau_value", "sweep_value"):
            p.add_argument(flag, type=float, default=default)
        elif name == "plot":
            p.add_argument(flag, action="store_true", default=default)
        elif name == "variant":
            p.add_argument(flag, choices=["exact", "approx"], default=default)
        elif name == "norm":
            p.add_argument(flag, choices=["l1", "l2"], default=default)
        else:
            p.add_argument(flag, type=str, default=default)


def _build_parser():
    parser = argparse.ArgumentParser(prog="mixedslim", description=__doc__)
    parser.add_argument("--config", default="", help="INI config file; flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="sample networks + ground truth from presets")
    _add_common(p, "sub", "values", "n", "reps", "seed", "out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("detect", help="estimate memberships for one network")
    _add_common(p, "network", "format", "k", "gamma", "tau_rule", "tau_coeff",
                "tau_value", "variant", "t", "norm", "restarts", "seed", "out")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("evaluate", help="compare an estimate against ground truth")
    _add_common(p, "estimate", "truth")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("experiment", help="replicated sweep over a preset grid")
    _add_common(p, "sub", "values", "n", "reps", "seed", "gamma", "tau_rule",
                "tau_coeff", "tau_value", "variant", "t", "norm", "restarts",
                "workers", "out", "plot")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("sweep-tau", help="tau-coefficient sensitivity on a fixed sample")
    _add_common(p, "sub", "sweep_value", "n", "seed", "network", "truth", "format",
                "k", "gamma", "variant", "t", "norm", "restarts", "c_grid",
                "out", "plot")
    p.set_defaults(func=cmd_sweep_tau)

    p = sub.add_parser("sweep-t", help="series-order sensitivity on a fixed sample")
    _add_common(p, "sub", "sweep_value", "n", "seed", "network", "truth", "format",
                "k", "gamma", "tau_rule", "tau_coeff", "norm", "restarts",
                "t_grid", "out", "plot")
    p.set_defaults(func=cmd_sweep_t)
    return parser


def _apply_config(args):
    """Fill unset attributes from the config file, then package defaults."""
    section = {}
    if getattr(args, "config", ""):
        cp = configparser.ConfigParser()
        if not cp.read(args.config):
            raise InputError(f"cannot read config file {args.config}")
        for sec in (args.command, "defaults"):
            if cp.has_section(sec):
                for key, val in cp.items(sec):
                    section.setdefault(key.replace("-", "_"), val)
    for key, default in _DEFAULTS.items():
        if hasattr(args, key):
            continue
        if key in section:
            val = section[key]
            if isinstance(default, bool):
                val = val.lower() in ("1", "true", "yes", "on")
            elif isinstance(default, int):
                val = int(val)
            elif isinstance(default, float):
                val = float(val)
            setattr(args, key, val)
        else:
            setattr(args, key, default)
    return args


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config(args)
        if args.command in ("simulate", "experiment", "sweep-tau", "sweep-t"):
            if not args.network and args.sub not in dcmm.EXPERIMENT1_SUBS:
                raise InputError(f"unknown sub-experiment {args.sub!r}")
        if args.command != "evaluate" and args.command != "detect" and not args.out:
            raise InputError("--out is required")
        if args.command == "detect" and args.k < 1:
            raise InputError("--k is required and must be >= 1")
        if args.command in ("sweep-tau", "sweep-t") and args.network and args.k < 1:
            pass  # K inferred from the truth file
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
