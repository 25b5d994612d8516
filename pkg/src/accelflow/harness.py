"""Experiment registry, configuration loading, and CSV emission.

Six experiments are registered:

* EXP1 -- convex model-fidelity comparison at h = 1 (trajectories of the
  auxiliary-sequence model against the limit and high-resolution models, with
  deviation statistics against the constant-step and exact-coefficient runs).
* EXP2 -- the strongly convex counterpart.
* EXP3 -- step-size sweep h in {1, 0.1, 0.01} over a fixed time horizon,
  gradient-corrected models against their a = 0 counterparts, on the 2-D and
  the 200-D random quadratic.
* EXP4 -- restart schemes: the monotone scheme against the plain run, and the
  monotone/speed comparison on the near-isotropic 2-D quadratic.
* EXP5 -- time-reparametrization checks (a = 1 model, its discretization gap).
* EXP6 -- Lyapunov certification sweep over the generalized models.

Every experiment writes per-run trajectory CSVs, deviation CSVs, a metrics
CSV, and a manifest mapping figure panels to the files that feed them.
Running the same spec twice produces byte-identical files.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import csvio
from .coefficients import (chen_scaling, muehlebach_convex_scaling, muehlebach_sc_scaling,
                           su_growth, su_limit_coefficients, wilson_growth)
from .errors import (ConfigFileNotFoundError, ConfigParseError, ConfigSchemaError,
                     DivergenceError)
from .flows import CATALOG, g_ode_c_flow, g_ode_uc_flow, make_model
from .integrate import IntegrationSpec, deviation_metrics, integrate, reduction_percent
from .lyapunov import certify
from .nag import run_nag, run_two_sequence
from .problems import make_diag_quadratic, make_random_spd_quadratic
from .reparam import verify_time_xz
from .restart import run_restart, verify_monotone

EXPERIMENTS = ("EXP1", "EXP2", "EXP3", "EXP4", "EXP5", "EXP6")
PROBLEM_NAMES = ("paper2d", "restart2d", "randquad")
_SC_MODELS = {"ODE-SC", "WILSON", "MUEHLEBACH-SC", "SHI-SC", "CHEN-SC", "BLF-SC",
              "G-ODE-UC", "ODE-SC-TIME", "TIME-XZ"}

_CONFIG_KEYS = {"experiment", "problem", "models", "h", "k_max", "mu", "L", "eps",
                "seed", "k_min", "out_dir"}


@dataclass(frozen=True)
class ExperimentSpec:
    """Fully resolved description of one experiment run."""

    experiment: str
    problem: str = "paper2d"
    models: Optional[tuple] = None      # None selects the experiment's defaults
    h: float = 1.0
    k_max: int = 300
    mu: float = 0.0
    L: float = 1.0
    eps: float = 1.0
    seed: int = 7
    k_min: int = 20
    out_dir: str = "."

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigSchemaError(f"unknown experiment {self.experiment!r}")
        if self.problem not in PROBLEM_NAMES:
            raise ConfigSchemaError(f"unknown problem {self.problem!r}")
        if not self.h > 0:
            raise ConfigSchemaError(f"h must be positive, got {self.h}")
        if self.k_max < 1:
            raise ConfigSchemaError(f"k_max must be >= 1, got {self.k_max}")
        if self.mu < 0:
            raise ConfigSchemaError(f"mu must be non-negative, got {self.mu}")
        if self.models is not None:
            if len(self.models) == 0:
                raise ConfigSchemaError("model list must not be empty")
            for name in self.models:
                if name not in CATALOG:
                    raise ConfigSchemaError(f"unknown model {name!r}")
                if name in _SC_MODELS and self.mu <= 0:
                    raise ConfigSchemaError(f"model {name} requires mu > 0")


def load_config(path: str) -> ExperimentSpec:
    """Parse a JSON config file into an ExperimentSpec; unknown keys rejected."""
    if not os.path.exists(path):
        raise ConfigFileNotFoundError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as e:
        raise ConfigParseError(f"{path}: parse error at line {e.lineno}: {e.msg}") from e
    if not isinstance(raw, dict):
        raise ConfigSchemaError("config must be a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigSchemaError(f"unknown config keys: {sorted(unknown)}")
    if "experiment" not in raw:
        raise ConfigSchemaError("config must name an experiment")
    kwargs = dict(raw)
    if "models" in kwargs and kwargs["models"] is not None:
        if not isinstance(kwargs["models"], list):
            raise ConfigSchemaError("models must be a list of model names")
        kwargs["models"] = tuple(kwargs["models"])
    try:
        return ExperimentSpec(**kwargs)
    except TypeError as e:
        raise ConfigSchemaError(str(e)) from e


def canonical_spec(experiment: str, out_dir: str = ".") -> ExperimentSpec:
    """The run configuration each experiment was designed with."""
    base = dict(experiment=experiment, out_dir=out_dir)
    if experiment == "EXP1":
        return ExperimentSpec(eps=0.0, **base)
    if experiment == "EXP2":
        return ExperimentSpec(mu=0.001, **base)
    if experiment == "EXP3":
        return ExperimentSpec(eps=0.0, **base)
    if experiment == "EXP4":
        return ExperimentSpec(eps=1.0, k_min=20, **base)
    if experiment == "EXP5":
        return ExperimentSpec(mu=0.001, **base)
    if experiment == "EXP6":
        return ExperimentSpec(**base)
    raise ConfigSchemaError(f"unknown experiment {experiment!r}")


def build_problem(name: str, mu: float, L: float, seed: int):
    """Instantiate a named benchmark problem and its starting point."""
    if name == "paper2d":
        return make_diag_quadratic([0.02, 0.005], L=L, mu=mu), np.array([1.0, 1.0])
    if name == "restart2d":
        return make_diag_quadratic([0.5, 0.49], L=L, mu=mu), np.array([1.0, 1.0])
    if name == "randquad":
        prob = make_random_spd_quadratic(200, mu, L, seed=seed)
        x0 = np.random.default_rng(seed + 1).standard_normal(200)
        return prob, x0
    raise ConfigSchemaError(f"unknown problem {name!r}")


def _substeps_for(h: float) -> int:
    # keep the internal step at 0.01 time units (the default 100 substeps at
    # h = 1); RK4 error is then far below every deviation being measured
    return max(1, int(round(100 * h)))


def _window(k_max: int) -> tuple:
    if k_max >= 300:
        return (100, 300)
    return (max(1, k_max // 3), k_max)


@dataclass
class ExperimentResult:
    experiment: str
    out_dir: str
    files: list = field(default_factory=list)
    manifest_lines: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    diverged: list = field(default_factory=list)
    requested_models: int = 0

    def write_manifest(self):
        path = os.path.join(self.out_dir, "manifest.txt")
        csvio.write_manifest(path, self.manifest_lines)
        self.files.append("manifest.txt")


def _emit_traj(res: ExperimentResult, name: str, traj) -> str:
    rel = f"traj_{name}.csv"
    csvio.write_trajectory_csv(os.path.join(res.out_dir, rel), traj)
    res.files.append(rel)
    return rel


def _emit_err(res: ExperimentResult, label: str, dm, h: float) -> str:
    rel = f"err_{label}.csv"
    csvio.write_error_csv(os.path.join(res.out_dir, rel), dm.ks, dm.ks.astype(float) * h,
                          dm.errors)
    res.files.append(rel)
    return rel


def _panel(res: ExperimentResult, panel: str, rels) -> None:
    for rel in rels:
        res.manifest_lines.append(f"{panel}={res.experiment}:{rel}")


# ---------------------------------------------------------------------------
# EXP1 / EXP2: model fidelity at h = 1
# ---------------------------------------------------------------------------

def _fidelity_experiment(spec: ExperimentSpec, strongly_convex: bool) -> ExperimentResult:
    res = ExperimentResult(spec.experiment, spec.out_dir)
    res.summary["h"] = spec.h
    k_max = spec.k_max
    mu = spec.mu if strongly_convex else 0.0
    problem, x0 = build_problem(spec.problem, mu, spec.L, spec.seed)
    h = spec.h
    t_end = k_max * h
    substeps = _substeps_for(h)

    if strongly_convex:
        methods = {"NAG-SC-C": run_nag(problem, "NAG-SC-C", x0, k_max, h=h)}
        schedule = wilson_growth(mu, spec.L, h).schedule(k_max)
        methods["NAG-SC"] = run_nag(problem, "NAG-SC", x0, k_max, schedule=schedule, h=h)
        model_names = spec.models or ("ODE-SC", "WILSON", "SHI-SC")
        fig_traj, fig_exact = "fig4", "fig5"
        our_model, baseline = "ODE-SC", "WILSON"
        method_c, method_exact = "NAG-SC-C", "NAG-SC"
    else:
        methods = {"NAG-C-C": run_nag(problem, "NAG-C-C", x0, k_max, h=h)}
        if spec.eps == 0.0:
            s_of, b_of = su_limit_coefficients(spec.L, h)
            methods["NAG-C"] = run_two_sequence(problem, s_of, b_of, x0, k_max, h=h)
        else:
            schedule = su_growth(spec.eps, spec.L, h).schedule(k_max)
            methods["NAG-C"] = run_nag(problem, "NAG-C", x0, k_max, schedule=schedule, h=h)
        model_names = spec.models or ("ODE-C", "SU", "SHI-C")
        fig_traj, fig_exact = "fig2", "fig3"
        our_model, baseline = "ODE-C", "SU"
        method_c, method_exact = "NAG-C-C", "NAG-C"

    res.requested_models = len(model_names)
    ispec = IntegrationSpec(t_end=t_end, h=h, substeps=substeps)
    trajs = {}
    for name in model_names:
        model = make_model(name, problem, mu=mu, L=spec.L, eps=spec.eps, h=h,
                           t_floor=h / substeps)
        try:
            trajs[name] = integrate(model, ispec, x0)
        except DivergenceError as e:
            res.diverged.append((name, e.last_valid_time))

    method_rels = {m: _emit_traj(res, m, traj) for m, traj in methods.items()}
    model_rels = {m: _emit_traj(res, m, traj) for m, traj in trajs.items()}

    window = _window(k_max)
    metrics_rows = []
    err_rels = {}
    for mname, mtraj in methods.items():
        for name, traj in trajs.items():
            dm = deviation_metrics(traj, mtraj, window)
            full = deviation_metrics(traj, mtraj)
            err_rels[(name, mname)] = _emit_err(res, f"{name}_vs_{mname}", full, h)
            res.summary[f"dev[{name}@{mname}]"] = dm.mean_error
        if our_model in trajs:
            ours = res.summary[f"dev[{our_model}@{mname}]"]
            for name in trajs:
                if name == our_model:
                    continue
                ref = res.summary[f"dev[{name}@{mname}]"]
                metrics_rows.append((f"{our_model}_vs_{name}@{mname}", window[0], window[1],
                                     ref, ours, reduction_percent(ref, ours)))
    if our_model in trajs and method_c in methods and method_exact in methods:
        ref = res.summary[f"dev[{our_model}@{method_c}]"]
        cand = res.summary[f"dev[{our_model}@{method_exact}]"]
        metrics_rows.append((f"{method_exact}_vs_{method_c}@{our_model}", window[0],
                             window[1], ref, cand, reduction_percent(ref, cand)))

    csvio.write_metrics_csv(os.path.join(res.out_dir, "metrics.csv"), metrics_rows)
    res.files.append("metrics.csv")
    res.summary["metrics"] = metrics_rows

    for fig, mname in ((fig_traj, method_c), (fig_exact, method_exact)):
        series = [method_rels[mname]] + list(model_rels.values())
        _panel(res, f"{fig}a-traj", series)
        _panel(res, f"{fig}b-zoom", series)
        _panel(res, f"{fig}c-ferr", series)
        _panel(res, f"{fig}d-xerr", [err_rels[(n, mname)] for n in trajs])
    res.write_manifest()
    return res


# ---------------------------------------------------------------------------
# EXP3: step-size sweep over a fixed time horizon
# ---------------------------------------------------------------------------

def run_exp3(spec: ExperimentSpec, h_values=(1.0, 0.1, 0.01)) -> ExperimentResult:
    res = ExperimentResult(spec.experiment, spec.out_dir)
    t_end = float(spec.k_max)        # time horizon fixed across h (k_max at h = 1)
    sweep_rows = []
    metrics_rows = []
    fig_by_setting = {("paper2d", "C"): "fig6", ("paper2d", "SC"): "fig7",
                      ("randquad", "C"): "fig8", ("randquad", "SC"): "fig9"}
    problems = ("paper2d", "randquad") if spec.problem == "paper2d" else (spec.problem,)
    mu_sc = spec.mu if spec.mu > 0 else 0.001
    count = 0
    for pname in problems:
        for mode in ("C", "SC"):
            mu = 0.0 if mode == "C" else mu_sc
            problem, x0 = build_problem(pname, mu, spec.L, spec.seed)
            fig = fig_by_setting.get((pname, mode))
            for panel, h in zip("abc", h_values):
                K = int(round(t_end / h))
                substeps = _substeps_for(h)
                ispec = IntegrationSpec(t_end=t_end, h=h, substeps=substeps)
                if mode == "C":
                    if spec.eps == 0.0:
                        s_of, b_of = su_limit_coefficients(spec.L, h)
                        nag = run_two_sequence(problem, s_of, b_of, x0, K, h=h)
                    else:
                        sch = su_growth(spec.eps, spec.L, h).schedule(K)
                        nag = run_nag(problem, "NAG-C", x0, K, schedule=sch, h=h)
                    names = ("ODE-C", "BLF-C")
                else:
                    sch = wilson_growth(mu, spec.L, h).schedule(K)
                    nag = run_nag(problem, "NAG-SC", x0, K, schedule=sch, h=h)
                    names = ("ODE-SC", "BLF-SC")
                w_lo = int(round(min(100.0, t_end / 3.0) / h))
                w_hi = K
                dms = {}
                rels = []
                for name in names:
                    count += 1
                    model = make_model(name, problem, mu=mu, L=spec.L, eps=spec.eps, h=h)
                    try:
                        traj = integrate(model, ispec, x0)
                    except DivergenceError as e:
                        res.diverged.append((f"{name}@{pname}/{mode}/h={h}", e.last_valid_time))
                        continue
                    dm = deviation_metrics(traj, nag, (w_lo, w_hi))
                    full = deviation_metrics(traj, nag)
                    dms[name] = dm
                    label = f"{name}_{pname}_{mode}_h{h:g}"
                    rels.append(_emit_err(res, label, full, h))
                    sweep_rows.append((pname, mode, name, h, dm.mean_error, full.max_error))
                if len(dms) == 2:
                    ours, blf = names
                    metrics_rows.append((f"{ours}_vs_{blf}@{pname}/{mode}/h={h:g}",
                                         w_lo, w_hi, dms[blf].mean_error, dms[ours].mean_error,
                                         reduction_percent(dms[blf].mean_error, dms[ours].mean_error)))
                if fig is not None:
                    _panel(res, f"{fig}{panel}-herr", rels)
    res.requested_models = count
    csvio.write_sweep_csv(os.path.join(res.out_dir, "sweep.csv"), sweep_rows)
    csvio.write_metrics_csv(os.path.join(res.out_dir, "metrics.csv"), metrics_rows)
    res.files += ["sweep.csv", "metrics.csv"]
    res.summary["sweep"] = sweep_rows
    res.summary["metrics"] = metrics_rows
    res.write_manifest()
    return res


# ---------------------------------------------------------------------------
# EXP4: restart schemes
# ---------------------------------------------------------------------------

def run_exp4(spec: ExperimentSpec) -> ExperimentResult:
    res = ExperimentResult(spec.experiment, spec.out_dir)
    res.requested_models = 1
    summary_rows = []

    # (a) monotone restart on the exact-coefficient method, k_min per spec
    for pname, fig in (("paper2d", "fig10a"), ("randquad", "fig10b")):
        problem, x0 = build_problem(pname, 0.0, spec.L, spec.seed)
        s_of, b_of = su_limit_coefficients(spec.L, spec.h)
        plain = run_restart(problem, "none", s_of, b_of, x0, spec.k_max, k_min=spec.k_min)
        ours = run_restart(problem, "ours", s_of, b_of, x0, spec.k_max, k_min=spec.k_min)
        rel_plain = _emit_traj(res, f"NAG-C_{pname}", plain.trajectory)
        rel_ours = _emit_traj(res, f"NAG-C-R_{pname}", ours.trajectory)
        ok, first = verify_monotone(ours)
        summary_rows.append((f"ours@{pname}", str(ok), "" if first is None else str(first), ""))
        _panel(res, f"{fig}-ferr", [rel_plain, rel_ours])

    # (b) monotone vs speed restart on the near-isotropic quadratic
    problem, x0 = build_problem("restart2d", 0.0, spec.L, spec.seed)
    s_const = 1.0 / spec.L
    b_cc = lambda k: k / (k + 3.0)
    runs = {}
    for scheme in ("ours", "su", "none"):
        runs[scheme] = run_restart(problem, scheme, lambda k: s_const, b_cc, x0,
                                   min(spec.k_max, 200), k_min=1)
    rels = {}
    for scheme, run in runs.items():
        rels[scheme] = _emit_traj(res, f"RESTART-{scheme.upper()}", run.trajectory)
        ok, first = verify_monotone(run)
        f = run.trajectory.f_values
        ratio = f[9] / f[8] if len(f) > 9 and f[8] > 0 else math.nan
        summary_rows.append((f"{scheme}@restart2d", str(ok),
                             "" if first is None else str(first), ratio))
        res.summary[f"monotone[{scheme}]"] = ok
        res.summary[f"first_violation[{scheme}]"] = first
        res.summary[f"f9_over_f8[{scheme}]"] = ratio
    _panel(res, "counter-ferr", [rels["ours"], rels["su"]])

    csvio.write_table_csv(os.path.join(res.out_dir, "restart_summary.csv"),
                          ["run", "monotone", "first_violation", "f9_over_f8"], summary_rows)
    csvio.write_metrics_csv(os.path.join(res.out_dir, "metrics.csv"), [])
    res.files += ["restart_summary.csv", "metrics.csv"]
    res.write_manifest()
    return res


# ---------------------------------------------------------------------------
# EXP5: time reparametrization
# ---------------------------------------------------------------------------

def run_exp5(spec: ExperimentSpec) -> ExperimentResult:
    res = ExperimentResult(spec.experiment, spec.out_dir)
    res.requested_models = 2
    mu = spec.mu if spec.mu > 0 else 0.001
    problem, x0 = build_problem(spec.problem, mu, spec.L, spec.seed)
    t_end = math.sqrt(mu) * spec.k_max + 0.5
    report = verify_time_xz(problem, mu, t_end, x0, k_max_qr=spec.k_max)
    rel_xz = _emit_traj(res, "TIME-XZ", report.traj_time_xz)
    rel_sc = _emit_traj(res, "ODE-SC-TIME", report.traj_ode_sc)
    rel_gap = "err_qr_gap.csv"
    csvio.write_error_csv(os.path.join(res.out_dir, rel_gap), report.qr_ks,
                          math.sqrt(mu) * report.qr_ks, report.qr_gaps)
    res.files.append(rel_gap)
    csvio.write_metrics_csv(os.path.join(res.out_dir, "metrics.csv"), [])
    res.files.append("metrics.csv")
    res.summary["f_monotone"] = report.f_monotone
    res.summary["max_f_increase"] = report.max_f_increase
    res.summary["max_qr_gap"] = float(report.qr_gaps.max())
    _panel(res, "fig11a-ferr", [rel_xz, rel_sc])
    _panel(res, "fig11b-xerr", [rel_gap])
    res.write_manifest()
    return res


# ---------------------------------------------------------------------------
# EXP6: Lyapunov certification sweep
# ---------------------------------------------------------------------------

def run_exp6(spec: ExperimentSpec) -> ExperimentResult:
    res = ExperimentResult(spec.experiment, spec.out_dir)
    mu_sc = spec.mu if spec.mu > 0 else 0.001
    rows = []
    ispec = IntegrationSpec(t_end=float(spec.k_max), h=spec.h, substeps=_substeps_for(spec.h))
    cases = []
    for pname in ("paper2d", "randquad"):
        prob_c, x0_c = build_problem(pname, 0.0, spec.L, spec.seed)
        eps = spec.eps if spec.eps > 0 else 1.0
        cases.append((pname, "G-ODE-C", "quadratic-growth",
                      g_ode_c_flow(prob_c, su_growth(eps, spec.L, spec.h).scaling), x0_c))
        cases.append((pname, "G-ODE-C", "muehlebach-c",
                      g_ode_c_flow(prob_c, muehlebach_convex_scaling(spec.L)), x0_c))
        prob_s, x0_s = build_problem(pname, mu_sc, spec.L, spec.seed)
        cases.append((pname, "G-ODE-UC", "exponential-growth",
                      g_ode_uc_flow(prob_s, wilson_growth(mu_sc, spec.L, spec.h).scaling, mu_sc), x0_s))
        cases.append((pname, "G-ODE-UC", "muehlebach-sc",
                      g_ode_uc_flow(prob_s, muehlebach_sc_scaling(mu_sc, spec.L), mu_sc), x0_s))
        cases.append((pname, "G-ODE-UC", "chen",
                      g_ode_uc_flow(prob_s, chen_scaling(mu_sc, 1.0 / spec.L), mu_sc), x0_s))
    res.requested_models = len(cases)
    for pname, mname, sname, model, x0 in cases:
        try:
            traj = integrate(model, ispec, x0)
        except DivergenceError as e:
            res.diverged.append((f"{mname}/{sname}@{pname}", e.last_valid_time))
            continue
        trace = certify(traj, model, tol_rel=1e-6)
        traj.channels["energy"] = trace.energies
        rel = _emit_traj(res, f"{mname}_{sname}_{pname}", traj)
        rows.append((f"{mname}/{sname}@{pname}", str(len(trace.monotonicity_violations)),
                     str(len(trace.rate_violations)), str(trace.certified)))
        res.summary[f"certified[{mname}/{sname}@{pname}]"] = trace.certified
    csvio.write_table_csv(os.path.join(res.out_dir, "certification.csv"),
                          ["case", "monotonicity_violations", "rate_violations", "certified"],
                          rows)
    csvio.write_metrics_csv(os.path.join(res.out_dir, "metrics.csv"), [])
    res.files += ["certification.csv", "metrics.csv"]
    res.write_manifest()
    return res


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    """Dispatch one experiment; raises Config errors for invalid specs and
    OSError for unwritable output directories."""
    os.makedirs(spec.out_dir, exist_ok=True)
    if spec.experiment == "EXP1":
        return _fidelity_experiment(spec, strongly_convex=False)
    if spec.experiment == "EXP2":
        if spec.mu <= 0:
            spec = replace(spec, mu=0.001)
        return _fidelity_experiment(spec, strongly_convex=True)
    if spec.experiment == "EXP3":
        return run_exp3(spec)
    if spec.experiment == "EXP4":
        return run_exp4(spec)
    if spec.experiment == "EXP5":
        return run_exp5(spec)
    if spec.experiment == "EXP6":
        return run_exp6(spec)
    raise ConfigSchemaError(f"unknown experiment {spec.experiment!r}")


def run_suite(out_dir: str, experiments=EXPERIMENTS) -> list:
    """Run the canonical experiments into per-experiment subdirectories and
    merge their manifests into one top-level manifest."""
    results = []
    merged = []
    for exp in experiments:
        sub = os.path.join(out_dir, exp.lower())
        res = run_experiment(canonical_spec(exp, out_dir=sub))
        results.append(res)
        prefix = os.path.relpath(sub, out_dir)
        for line in res.manifest_lines:
            panel, rest = line.split("=", 1)
            exp_id, rel = rest.split(":", 1)
            merged.append(f"{panel}={exp_id}:{prefix}/{rel}")
    csvio.write_manifest(os.path.join(out_dir, "manifest.txt"), merged)
    return results
