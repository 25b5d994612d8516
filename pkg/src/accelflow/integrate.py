"""Deterministic fixed-step integration sampled at t = h k, plus deviation metrics.

Classical fourth-order Runge-Kutta with ``substeps`` internal steps per sample
interval. A fixed step keeps the samples exactly on the t = h k grid and makes
repeated runs bitwise identical; the integrator error is then negligible
against the model-vs-iterate deviations being measured.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DivergenceError
from .flows import FlowModel
from .trajectory import Trajectory

DIVERGENCE_NORM = 1e12


@dataclass(frozen=True)
class IntegrationSpec:
    """How to drive one integration: horizon, sample interval, internal substeps."""

    t_end: float
    h: float = 1.0
    substeps: int = 100
    initial_state: Optional[np.ndarray] = None

    def __post_init__(self):
        if not self.t_end > 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if not self.h > 0:
            raise ValueError(f"h must be positive, got {self.h}")
        if self.substeps < 1:
            raise ValueError(f"substeps must be >= 1, got {self.substeps}")


def _rk4_step(rhs, t: float, state: np.ndarray, dt: float) -> np.ndarray:
    k1 = rhs(t, state)
    k2 = rhs(t + 0.5 * dt, state + 0.5 * dt * k1)
    k3 = rhs(t + 0.5 * dt, state + 0.5 * dt * k2)
    k4 = rhs(t + dt, state + dt * k3)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(model: FlowModel, spec: IntegrationSpec, x0=None) -> Trajectory:
    """Integrate the model and return its trajectory sampled at t = 0, h, 2h, ...

    The initial state comes from ``spec.initial_state`` if given, otherwise
    from ``model.initial_state(x0)``. Raises DivergenceError (with the last
    valid time) if the state norm exceeds 1e12 or turns non-finite.
    """
    if spec.initial_state is not None:
        state = np.asarray(spec.initial_state, dtype=float).copy()
    else:
        if x0 is None:
            raise ValueError("either spec.initial_state or x0 is required")
        state = model.initial_state(x0)
    n_samples = int(round(spec.t_end / spec.h))
    if n_samples < 1:
        raise ValueError("t_end must cover at least one sample interval")
    dt = spec.h / spec.substeps
    states = np.empty((n_samples + 1, state.size))
    states[0] = state
    for k in range(n_samples):
        base = k * spec.h
        for j in range(spec.substeps):
            state = _rk4_step(model.rhs_fn, base + j * dt, state, dt)
        if not np.all(np.isfinite(state)) or np.linalg.norm(state) > DIVERGENCE_NORM:
            raise DivergenceError(
                f"integration of {model.name} diverged between t={base} and t={base + spec.h}",
                last_valid_time=base,
            )
        states[k + 1] = state
    times = spec.h * np.arange(n_samples + 1)
    points = np.array([model.primary(s) for s in states])
    f_values = np.array([model.problem.value(p) for p in points])
    return Trajectory(times=times, points=points, f_values=f_values, states=states)


@dataclass(frozen=True)
class DeviationMetrics:
    """Per-sample Euclidean gaps between two trajectories and their window mean."""

    ks: np.ndarray
    errors: np.ndarray
    window: tuple
    mean_error: float
    max_error: float


def deviation_metrics(traj_a: Trajectory, traj_b: Trajectory,
                      window: tuple | None = None) -> DeviationMetrics:
    """Per-k errors ||a_k - b_k|| and their mean/max over the index window.

    Both trajectories must share sample times on the window.
    """
    m = min(len(traj_a), len(traj_b))
    if window is None:
        window = (0, m - 1)
    k_lo, k_hi = window
    if not 0 <= k_lo <= k_hi <= m - 1:
        raise ValueError(f"window {window} outside the shared range [0, {m - 1}]")
    ta = traj_a.times[k_lo:k_hi + 1]
    tb = traj_b.times[k_lo:k_hi + 1]
    if not np.allclose(ta, tb, rtol=0.0, atol=1e-9 * (1.0 + np.abs(ta).max())):
        raise ValueError("trajectories do not share sample times on the window")
    ks = np.arange(k_lo, k_hi + 1)
    diffs = traj_a.points[k_lo:k_hi + 1] - traj_b.points[k_lo:k_hi + 1]
    errors = np.linalg.norm(diffs, axis=1)
    return DeviationMetrics(ks=ks, errors=errors, window=(k_lo, k_hi),
                            mean_error=float(errors.mean()),
                            max_error=float(errors.max()))


def reduction_percent(mean_err_ref: float, mean_err_cand: float) -> float:
    """Percentage reduction of the candidate's mean error against the reference's."""
    if mean_err_ref <= 0:
        raise ValueError("reference mean error must be positive")
    return 100.0 * (1.0 - mean_err_cand / mean_err_ref)
