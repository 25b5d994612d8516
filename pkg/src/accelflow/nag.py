"""Discrete accelerated gradient iterations.

Two equivalent formulations are provided. The three-sequence form keeps
iterates (x, y, z) and is driven by per-step coefficients (theta, a, s); the
two-sequence form keeps (x_prev, x) and is driven by (b, s). Runs from the
same schedule coincide. Variants with the familiar constant-step coefficients
(s = 1/L with b_k = k/(k+3), or the fixed strongly convex momentum) are
exposed through ``run_nag``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coefficients import Schedule, constant_momentum_sc
from .problems import Objective
from .trajectory import Trajectory

NAG_VARIANTS = ("NAG-C", "NAG-SC", "NAG-C-C", "NAG-SC-C")


@dataclass
class IterateState:
    """State of the three-sequence iteration; x = y = z at k = 0."""

    k: int
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray


def nag_step_three(state: IterateState, coeff, grad: Callable) -> IterateState:
    """One step of the three-sequence iteration with coefficients (theta, a, s).

    y = x + a (z - x); x+ = y - s grad(y); z+ = x + (x+ - x) / theta.
    """
    theta, a, s = coeff
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    if not 0 <= a <= 1:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    y = state.x + a * (state.z - state.x)
    x_next = y - s * grad(y)
    z_next = state.x + (x_next - state.x) / theta
    return IterateState(k=state.k + 1, x=x_next, y=y, z=z_next)


def nag_step_two(x: np.ndarray, x_prev: np.ndarray, b: float, s: float, grad: Callable) -> np.ndarray:
    """One step of the two-sequence iteration: y = x + b (x - x_prev); return y - s grad(y)."""
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    y = x + b * (x - x_prev)
    return y - s * grad(y)


def run_three_sequence(problem: Objective, schedule: Schedule, x0, k_max: int,
                       h: float = 1.0, record_yz: bool = False) -> Trajectory:
    """Run the three-sequence iteration for k_max steps; times are t = h k."""
    if k_max <= 0:
        raise ValueError(f"k_max must be positive, got {k_max}")
    if k_max > schedule.k_max:
        raise ValueError(f"schedule covers {schedule.k_max} steps, requested {k_max}")
    x0 = np.asarray(x0, dtype=float)
    state = IterateState(k=0, x=x0.copy(), y=x0.copy(), z=x0.copy())
    xs = [state.x.copy()]
    ys, zs = [state.y.copy()], [state.z.copy()]
    for k in range(k_max):
        state = nag_step_three(state, (schedule.theta[k], schedule.a[k], schedule.s[k]),
                               problem.gradient)
        xs.append(state.x.copy())
        if record_yz:
            ys.append(state.y.copy())
            zs.append(state.z.copy())
    xs = np.array(xs)
    channels = {}
    if record_yz:
        # y_k is the point the gradient was taken at to produce x_{k+1}
        channels["y"] = np.array(ys + [ys[-1]] * (len(xs) - len(ys)))
        channels["z"] = np.array(zs)
    times = h * np.arange(k_max + 1)
    f_values = np.array([problem.value(x) for x in xs])
    return Trajectory(times=times, points=xs, f_values=f_values, channels=channels)


def run_two_sequence(problem: Objective, s_of_k: Callable[[int], float],
                     b_of_k: Callable[[int], float], x0, k_max: int,
                     h: float = 1.0) -> Trajectory:
    """Run the two-sequence iteration with per-step callables s(k) and b(k).

    The first step uses b_0 (normally 0), so the run starts as a plain
    gradient step from x_0.
    """
    if k_max <= 0:
        raise ValueError(f"k_max must be positive, got {k_max}")
    x0 = np.asarray(x0, dtype=float)
    x_prev = x0.copy()
    x = x0.copy()
    xs = [x0.copy()]
    for k in range(k_max):
        x_next = nag_step_two(x, x_prev, b_of_k(k), s_of_k(k), problem.gradient)
        x_prev, x = x, x_next
        xs.append(x.copy())
    xs = np.array(xs)
    times = h * np.arange(k_max + 1)
    f_values = np.array([problem.value(x) for x in xs])
    return Trajectory(times=times, points=xs, f_values=f_values)


def constant_step_coefficients(problem: Objective, variant: str):
    """The familiar constant-step (s, b) callables for the -C variants."""
    if variant == "NAG-C-C":
        s = 1.0 / problem.L
        return (lambda k: s), (lambda k: k / (k + 3.0))
    if variant == "NAG-SC-C":
        if problem.mu <= 0:
            raise ValueError("NAG-SC-C requires mu > 0")
        s = 1.0 / problem.L
        b = constant_momentum_sc(problem.mu, problem.L)
        return (lambda k: s), (lambda k: b)
    raise ValueError(f"unknown constant-step variant {variant!r}")


def run_nag(problem: Objective, variant: str, x0, k_max: int, schedule: Schedule | None = None,
            h: float = 1.0, record_yz: bool = False) -> Trajectory:
    """Run one of the named method variants and return its trajectory.

    NAG-C / NAG-SC run the three-sequence form and need a schedule whose mu
    matches; NAG-C-C / NAG-SC-C run the two-sequence form with constant steps
    derived from the problem's configured L and mu.
    """
    if variant not in NAG_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {NAG_VARIANTS}")
    if k_max <= 0:
        raise ValueError(f"k_max must be positive, got {k_max}")
    if variant in ("NAG-C", "NAG-SC"):
        if schedule is None:
            raise ValueError(f"{variant} requires a schedule")
        if variant == "NAG-C" and schedule.mu != 0:
            raise ValueError("NAG-C requires a mu = 0 schedule")
        if variant == "NAG-SC" and schedule.mu <= 0:
            raise ValueError("NAG-SC requires a mu > 0 schedule")
        return run_three_sequence(problem, schedule, x0, k_max, h=h, record_yz=record_yz)
    s_of_k, b_of_k = constant_step_coefficients(problem, variant)
    return run_two_sequence(problem, s_of_k, b_of_k, x0, k_max, h=h)
