"""Time reparametrization: Q(t) = Z(tau^{-1}(t)) and its discrete counterpart.

Reparametrizing the a = 1 generalized flows through the cumulative coefficient
tau turns them into the (quasi-)gradient flow; the convergence speed of the
original flow is then just the speed at which tau stretches time. The inverse
map is evaluated by bisection on a tabulated tau (linear interpolation), and
off-grid trajectory values come from Catmull-Rom cubic interpolation, matching
the integrator's accuracy class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import MonotoneMap
from .errors import TimeDomainError
from .flows import ode_sc_time_flow, time_xz_flow
from .integrate import IntegrationSpec, integrate
from .problems import Objective
from .trajectory import Trajectory

__all__ = ["MonotoneMap", "cubic_interpolate", "reparametrize", "z_trajectory",
           "qr_discretize", "TimeComparisonReport", "verify_time_xz"]


def cubic_interpolate(traj: Trajectory, s_times, values: np.ndarray | None = None) -> np.ndarray:
    """Catmull-Rom interpolation of a uniformly sampled series at given times.

    ``values`` defaults to the trajectory's points. Times outside the sampled
    range raise TimeDomainError.
    """
    t = traj.times
    y = traj.points if values is None else np.asarray(values, dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    m = t.size - 1
    if m < 1 or not np.allclose(np.diff(t), t[1] - t[0], rtol=1e-9, atol=0.0):
        raise ValueError("cubic interpolation requires a uniform sample grid")
    h = t[1] - t[0]
    s_times = np.atleast_1d(np.asarray(s_times, dtype=float))
    lo, hi = t[0], t[-1]
    if np.any(s_times < lo - 1e-9 * h) or np.any(s_times > hi + 1e-9 * h):
        raise TimeDomainError(f"requested times outside the sampled range [{lo}, {hi}]")
    out = np.empty((s_times.size, y.shape[1]))
    for j, s in enumerate(s_times):
        pos = (s - lo) / h
        i = int(np.clip(np.floor(pos), 0, m - 1))
        u = pos - i
        p1 = y[i]
        p2 = y[i + 1]
        # quadratic-extrapolated ghost points keep the boundary cells at the
        # same accuracy order as the interior
        p0 = y[i - 1] if i >= 1 else 3.0 * y[0] - 3.0 * y[1] + y[2]
        p3 = y[i + 2] if i + 2 <= m else 3.0 * y[m] - 3.0 * y[m - 1] + y[m - 2]
        out[j] = 0.5 * ((2.0 * p1)
                        + (p2 - p0) * u
                        + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u**2
                        + (3.0 * p1 - p0 - 3.0 * p2 + p3) * u**3)
    return out


def reparametrize(traj: Trajectory, tau: MonotoneMap, out_times,
                  problem: Objective | None = None) -> Trajectory:
    """Build Q(t) = Z(tau^{-1}(t)) from a trajectory of Z samples.

    ``out_times`` must map back into the trajectory's sampled range. When a
    problem is supplied the output carries f-values at the Q points.
    """
    out_times = np.asarray(out_times, dtype=float)
    mapped = tau.inverse(out_times)
    points = cubic_interpolate(traj, mapped)
    if problem is not None:
        f_values = np.array([problem.value(p) for p in points])
    else:
        f_values = np.zeros(out_times.size)
    return Trajectory(times=out_times, points=points, f_values=f_values)


def z_trajectory(traj: Trajectory, model) -> Trajectory:
    """Extract the Z series of an integrated flow as its own trajectory."""
    if traj.states is None:
        raise ValueError("trajectory carries no states")
    pts = np.array([model.z_of(t, s) for t, s in zip(traj.times, traj.states)])
    f = np.array([model.problem.value(p) for p in pts])
    return Trajectory(times=traj.times.copy(), points=pts, f_values=f)


def qr_discretize(problem: Objective, mu: float, x0, k_max: int):
    """Paired sequences of the discretized reparametrized system:

    q_{k+1} = q_k - grad f(q_k);  r_{k+1} = (mu q_{k+1} + r_k) / (1 + mu),

    with q_0 = r_0 = x_0. The q-sequence is plain gradient descent; r lags it
    through the momentum relation q = r + (r - r_prev)/mu.
    """
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    x0 = np.asarray(x0, dtype=float)
    q = np.empty((k_max + 1, x0.size))
    r = np.empty((k_max + 1, x0.size))
    q[0] = x0
    r[0] = x0
    for k in range(k_max):
        q[k + 1] = q[k] - problem.gradient(q[k])
        r[k + 1] = (mu * q[k + 1] + r[k]) / (1.0 + mu)
    return q, r


@dataclass
class TimeComparisonReport:
    """Decay curves of the (X, Z) time-comparison pair plus the q/r gap."""

    times: np.ndarray
    f_time_xz: np.ndarray
    f_ode_sc: np.ndarray
    qr_ks: np.ndarray
    qr_gaps: np.ndarray
    f_monotone: bool
    max_f_increase: float
    traj_time_xz: Trajectory | None = None
    traj_ode_sc: Trajectory | None = None


def verify_time_xz(problem: Objective, mu: float, t_end: float, x0, h: float = 0.05,
                   substeps: int = 20, k_max_qr: int = 300) -> TimeComparisonReport:
    """Integrate the a = 1 model and the exponential-growth model, then check
    the discretization of the reparametrized system.

    The gap column reports ||X(tau^{-1}(k)) - r_k|| with tau(t) = t/sqrt(mu),
    for every k whose mapped time sqrt(mu) k lies within the horizon.
    """
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    spec = IntegrationSpec(t_end=t_end, h=h, substeps=substeps)
    traj_xz = integrate(time_xz_flow(problem, mu), spec, x0)
    traj_sc = integrate(ode_sc_time_flow(problem, mu), spec, x0)

    increases = np.diff(traj_xz.f_values)
    max_inc = float(increases.max(initial=0.0))
    f_monotone = bool(np.all(increases <= 1e-12 * (1.0 + np.abs(traj_xz.f_values[:-1]))))

    rm = math.sqrt(mu)
    ks = np.arange(0, k_max_qr + 1)
    ks = ks[rm * ks <= t_end + 1e-12]
    _, r = qr_discretize(problem, mu, x0, int(ks[-1]))
    x_at = cubic_interpolate(traj_xz, rm * ks)
    gaps = np.linalg.norm(x_at - r[ks], axis=1)
    return TimeComparisonReport(times=traj_xz.times, f_time_xz=traj_xz.f_values,
                                f_ode_sc=traj_sc.f_values, qr_ks=ks, qr_gaps=gaps,
                                f_monotone=f_monotone, max_f_increase=max_inc,
                                traj_time_xz=traj_xz, traj_ode_sc=traj_sc)
