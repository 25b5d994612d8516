"""Restart schemes for the two-sequence iteration and monotonicity verification.

The monotone scheme watches the discrete acceleration-velocity inner product

    <x_{k+1} - 2 x_k + x_{k-1}, x_k - x_{k-1}>

and, when it turns negative (with at least ``k_min`` steps since the last
event), discards the momentum step and substitutes the plain gradient step
x_{k+1} = x_k - s_k grad f(x_k). With 0 < s_k <= 1/L and 0 < b_k <= 1 the
objective then decreases strictly at every step.

The speed comparator restarts whenever the step length stops growing,
||x_{k+1} - x_k|| < ||x_k - x_{k-1}||, by resetting the iteration index that
feeds b_k (the next step uses b_1 again, as if the method had just been
started from the current iterate). It keeps the computed iterate, so the
objective may still increase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .problems import Objective
from .trajectory import Trajectory

SCHEMES = ("ours", "su", "none")


def restart_condition_ours(x_next, x, x_prev) -> bool:
    """True when <x_next - 2x + x_prev, x - x_prev> < 0 (descent condition broken).

    Equality does not trigger: a zero inner product still satisfies the
    descent condition.
    """
    x_next = np.asarray(x_next, dtype=float)
    x = np.asarray(x, dtype=float)
    x_prev = np.asarray(x_prev, dtype=float)
    if not (x_next.shape == x.shape == x_prev.shape):
        raise ValueError("restart condition needs points of equal dimension")
    return float(np.dot(x_next - 2.0 * x + x_prev, x - x_prev)) < 0.0


def restart_condition_su(x_next, x, x_prev) -> bool:
    """True when the step length shrinks: ||x_next - x|| < ||x - x_prev|| (strict).

    This is the speed-restart trigger: momentum is kept only while the
    trajectory keeps speeding up.
    """
    x_next = np.asarray(x_next, dtype=float)
    x = np.asarray(x, dtype=float)
    x_prev = np.asarray(x_prev, dtype=float)
    if not (x_next.shape == x.shape == x_prev.shape):
        raise ValueError("restart condition needs points of equal dimension")
    return float(np.linalg.norm(x_next - x)) < float(np.linalg.norm(x - x_prev))


@dataclass
class RestartRun:
    """A restarted run: its trajectory, the event indices, and the scheme used."""

    trajectory: Trajectory
    events: list
    scheme: str
    k_min: int
    problem: Optional[Objective] = None


def run_restart(problem: Objective, scheme: str, s_of_k: Callable[[int], float],
                b_of_k: Callable[[int], float], x0, k_max: int, k_min: int = 1,
                h: float = 1.0, enforce_hypotheses: bool = True) -> RestartRun:
    """Run the two-sequence iteration under a restart scheme.

    ``s_of_k``/``b_of_k`` give the per-step coefficients by index. The
    monotone guarantee needs 0 < s_k <= 1/L_true and 0 < b_k <= 1; these are
    checked per step unless ``enforce_hypotheses`` is disabled. The speed
    comparator feeds b with the index counted since its last restart.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if k_max <= 0:
        raise ValueError(f"k_max must be positive, got {k_max}")
    if k_min < 1:
        raise ValueError(f"k_min must be >= 1, got {k_min}")
    L_true = problem.L_true if problem.L_true is not None else problem.L

    def check(k, s, b):
        if enforce_hypotheses:
            if not 0 < s <= 1.0 / L_true + 1e-12:
                raise ValueError(f"s_{k} = {s} violates 0 < s <= 1/L_true = {1.0 / L_true}")
            if not 0 <= b <= 1:
                raise ValueError(f"b_{k} = {b} violates 0 <= b <= 1")

    x0 = np.asarray(x0, dtype=float)
    grad = problem.gradient
    xs = [x0.copy()]
    events = []
    flags = [0]

    # step 0 is the plain gradient step (b_0 = 0 by convention)
    s0 = s_of_k(0)
    check(0, s0, b_of_k(0))
    x_prev, x = x0, x0 - s0 * grad(x0)
    xs.append(x.copy())
    flags.append(0)

    j = 1            # steps since the last monotone-scheme restart
    since = 1        # index feeding b for the speed comparator
    for k in range(1, k_max):
        s = s_of_k(k)
        idx = since if scheme == "su" else k
        b = b_of_k(idx)
        check(k, s, b)
        y = x + b * (x - x_prev)
        x_next = y - s * grad(y)
        restarted = False
        if scheme == "ours" and j >= k_min and restart_condition_ours(x_next, x, x_prev):
            x_next = x - s * grad(x)
            j = 1
            restarted = True
        elif scheme == "ours":
            j += 1
        if scheme == "su":
            if restart_condition_su(x_next, x, x_prev):
                since = 1  # next step uses the first momentum coefficient again
                restarted = True
            else:
                since += 1
        x_prev, x = x, x_next
        if restarted:
            events.append(k)
        xs.append(x_next.copy())
        flags.append(1 if restarted else 0)

    xs = np.array(xs)
    times = h * np.arange(len(xs))
    f_values = np.array([problem.value(p) for p in xs])
    traj = Trajectory(times=times, points=xs, f_values=f_values,
                      channels={"restart": np.array(flags, dtype=float)})
    return RestartRun(trajectory=traj, events=events, scheme=scheme, k_min=k_min,
                      problem=problem)


def verify_monotone(run: RestartRun) -> tuple[bool, Optional[int]]:
    """True iff f(x_{k+1}) < f(x_k) strictly for every k.

    Equality is tolerated only at the exact optimum: once f equals the optimal
    value exactly, no further strict decrease is representable.
    """
    f = run.trajectory.f_values
    f_star = run.problem.f_star if run.problem is not None else 0.0
    for k in range(len(f) - 1):
        if f[k + 1] < f[k]:
            continue
        if f[k + 1] == f[k] == f_star:
            continue
        return False, k
    return True, None


@dataclass(frozen=True)
class UnifiedForm:
    """Coefficients of the unified second-order form

        ddX + c1(t) dX + c2(t) grad f(Y) = 0,   Y = X + b(t) dX,

    used as a diagnostic. All three must be positive on the evaluation grid.
    """

    c1: Callable[[float], float]
    c2: Callable[[float], float]
    b: Callable[[float], float]

    def validate(self, grid) -> tuple[bool, Optional[tuple[float, str]]]:
        grid = np.asarray(grid, dtype=float)
        for t in grid:
            for name, fn in (("c1", self.c1), ("c2", self.c2), ("b", self.b)):
                if not fn(t) > 0:
                    return False, (float(t), f"{name} <= 0")
        return True, None


def unified_form_from_scaling(scaling, mu: float = 0.0, dt: float = 1e-6) -> UnifiedForm:
    """Diagnostic unified-form coefficients of a generalized flow's scaling.

    Uses c1 = e^alpha + beta_dot_term - alpha_dot with alpha_dot estimated by a
    central difference (the catalog scalings are smooth).
    """

    def alpha_dot(t):
        lo = max(t - dt, dt)
        return (np.log(scaling.exp_alpha(t + dt)) - np.log(scaling.exp_alpha(lo))) / (t + dt - lo)

    if mu == 0:
        def c1(t):
            return scaling.exp_alpha(t) - alpha_dot(t)

        def c2(t):
            return scaling.exp_alpha(t) ** 2 * np.exp(scaling.beta(t))
    else:
        def c1(t):
            return scaling.exp_alpha(t) + scaling.beta_dot(t) * (1.0 - scaling.a(t)) - alpha_dot(t)

        def c2(t):
            return scaling.exp_alpha(t) ** 2 / mu

    def b(t):
        return scaling.a(t) / scaling.exp_alpha(t)

    return UnifiedForm(c1=c1, c2=c2, b=b)
