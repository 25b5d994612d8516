"""Command-line interface.

Subcommands: simulate, nag, compare, sweep-h, restart, reparam, suite.
Exit codes: 0 success, 2 configuration error, 3 divergence in all requested
models, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import csvio
from .errors import ConfigError, DivergenceError
from .flows import make_model
from .harness import (EXPERIMENTS, ExperimentSpec, build_problem, canonical_spec,
                      load_config, run_experiment, run_suite)
from .integrate import IntegrationSpec, integrate
from .nag import NAG_VARIANTS, run_nag
from .coefficients import su_growth, wilson_growth


_FLAG_DEFAULTS = {"seed": 7, "h": 1.0, "steps": 300, "mu": 0.0, "bigL": 1.0,
                  "eps": 1.0, "kmin": 20, "problem": "paper2d"}


def _common_flags(p: argparse.ArgumentParser) -> None:
    d = _FLAG_DEFAULTS
    p.add_argument("--config", metavar="PATH", help="JSON config; overrides other flags")
    p.add_argument("--out", metavar="DIR", default="out", help="output directory")
    p.add_argument("--seed", type=int, default=d["seed"])
    p.add_argument("--h", type=float, default=d["h"], help="sample interval t = h k")
    p.add_argument("--steps", type=int, default=d["steps"], help="number of samples k_max")
    p.add_argument("--mu", type=float, default=d["mu"], help="strong convexity parameter")
    p.add_argument("--bigL", type=float, default=d["bigL"], help="configured smoothness L")
    p.add_argument("--eps", type=float, default=d["eps"],
                   help="offset of the quadratic growth (0 selects the limit form)")
    p.add_argument("--kmin", type=int, default=d["kmin"],
                   help="minimum steps between restarts")
    p.add_argument("--model", action="append", default=None,
                   help="model or method name (repeatable)")
    p.add_argument("--problem", choices=("paper2d", "restart2d", "randquad"),
                   default=d["problem"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="accelflow",
                                     description="Accelerated-gradient ODE model experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in (
        ("simulate", "integrate flow models and write trajectory CSVs"),
        ("nag", "run discrete method variants and write trajectory CSVs"),
        ("compare", "model-fidelity comparison (EXP1 for mu = 0, EXP2 for mu > 0)"),
        ("sweep-h", "step-size sweep against the a = 0 models (EXP3)"),
        ("restart", "restart-scheme comparison (EXP4)"),
        ("reparam", "time-reparametrization checks (EXP5)"),
        ("suite", "run every experiment and merge the manifests"),
    ):
        p = sub.add_parser(name, help=desc)
        _common_flags(p)
    return parser


def _spec_from_args(args, experiment: str) -> ExperimentSpec:
    if args.config:
        return load_config(args.config)
    spec = canonical_spec(experiment, out_dir=args.out)
    # flags left at their defaults defer to the experiment's canonical values
    overrides = {}
    mapping = (("h", "h"), ("k_max", "steps"), ("mu", "mu"), ("L", "bigL"),
               ("eps", "eps"), ("seed", "seed"), ("k_min", "kmin"),
               ("problem", "problem"))
    for field_name, flag in mapping:
        val = getattr(args, flag)
        if val != _FLAG_DEFAULTS[flag]:
            overrides[field_name] = val
    if args.model:
        overrides["models"] = tuple(args.model)
    from dataclasses import replace

    return replace(spec, out_dir=args.out, **overrides)


def _cmd_simulate(args) -> int:
    problem, x0 = build_problem(args.problem, args.mu, args.bigL, args.seed)
    names = args.model or (["ODE-C"] if args.mu == 0 else ["ODE-SC"])
    spec = IntegrationSpec(t_end=args.steps * args.h, h=args.h,
                           substeps=max(1, int(round(100 * args.h))))
    diverged = 0
    for name in names:
        model = make_model(name, problem, mu=args.mu, L=args.bigL, eps=args.eps,
                           h=args.h, t_floor=args.h / spec.substeps)
        try:
            traj = integrate(model, spec, x0)
        except DivergenceError as e:
            print(f"{name}: diverged at t={e.last_valid_time}", file=sys.stderr)
            diverged += 1
            continue
        path = f"{args.out}/traj_{name}.csv"
        csvio.write_trajectory_csv(path, traj)
        print(f"{name}: wrote {path}")
    return 3 if diverged == len(names) else 0


def _cmd_nag(args) -> int:
    problem, x0 = build_problem(args.problem, args.mu, args.bigL, args.seed)
    names = args.model or (["NAG-C-C"] if args.mu == 0 else ["NAG-SC-C"])
    for name in names:
        if name not in NAG_VARIANTS:
            raise ConfigError(f"unknown method variant {name!r}; expected one of {NAG_VARIANTS}")
        schedule = None
        if name == "NAG-C":
            schedule = su_growth(args.eps if args.eps > 0 else 1.0, args.bigL,
                                 args.h).schedule(args.steps)
        elif name == "NAG-SC":
            if args.mu <= 0:
                raise ConfigError("NAG-SC requires --mu > 0")
            schedule = wilson_growth(args.mu, args.bigL, args.h).schedule(args.steps)
        traj = run_nag(problem, name, x0, args.steps, schedule=schedule, h=args.h)
        path = f"{args.out}/traj_{name}.csv"
        csvio.write_trajectory_csv(path, traj)
        print(f"{name}: wrote {path}")
    return 0


def _run_and_report(spec: ExperimentSpec) -> int:
    res = run_experiment(spec)
    for name, t in res.diverged:
        print(f"diverged: {name} at t={t}", file=sys.stderr)
    for key, val in res.summary.items():
        if key in ("metrics", "sweep"):
            continue
        print(f"{key} = {val}")
    for row in res.summary.get("metrics", []):
        print("metric: pair=%s reduction=%.1f%%" % (row[0], row[5]))
    print(f"wrote {len(res.files)} files to {res.out_dir}")
    if res.requested_models and len(res.diverged) >= res.requested_models:
        return 3
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "nag":
            return _cmd_nag(args)
        if args.command == "compare":
            exp = "EXP1" if (args.config is None and args.mu == 0) else "EXP2"
            return _run_and_report(_spec_from_args(args, exp))
        if args.command == "sweep-h":
            return _run_and_report(_spec_from_args(args, "EXP3"))
        if args.command == "restart":
            return _run_and_report(_spec_from_args(args, "EXP4"))
        if args.command == "reparam":
            return _run_and_report(_spec_from_args(args, "EXP5"))
        if args.command == "suite":
            if args.config:
                return _run_and_report(load_config(args.config))
            results = run_suite(args.out, EXPERIMENTS)
            for res in results:
                print(f"{res.experiment}: {len(res.files)} files, "
                      f"{len(res.diverged)} diverged")
            return 0
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
