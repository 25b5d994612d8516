"""Coefficient schedules for the discrete methods and scaling functions for the flows.

A discrete schedule is generated from a positive, strictly increasing auxiliary
sequence A_k. With theta_k = (A_{k+1} - A_k) / A_{k+1} the per-step lookahead
weight a_k, step size s_k and momentum coefficient b_k follow from A_k alone,
branching on whether the run targets a merely convex (mu = 0) or a strongly
convex (mu > 0) objective:

    a_k = (A_{k+1} - A_k) / A_{k+1}            (mu = 0)
    a_k = (A_{k+1} - A_k) / (2 A_{k+1} - A_k)  (mu > 0)
    s_k = (A_{k+1} - A_k)^2 / A_{k+1}          (mu = 0)
    s_k = (A_{k+1} - A_k)^2 / (mu A_{k+1}^2)   (mu > 0)
    b_k = a_k (1 - theta_{k-1}) / theta_{k-1},  b_0 = 0.

The continuous counterparts are a scaling (alpha, beta, a) obeying the ideal
scaling condition e^alpha >= beta_dot > 0, optionally backed by a growth
function A(t) with A(h k) = A_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ScheduleError


@dataclass(frozen=True)
class Schedule:
    """Per-step coefficients derived from an auxiliary sequence A_0..A_{k_max}."""

    A: np.ndarray          # length k_max + 1
    mu: float
    k_max: int
    theta: np.ndarray = field(init=False)  # length k_max
    a: np.ndarray = field(init=False)
    s: np.ndarray = field(init=False)
    b: np.ndarray = field(init=False)

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if self.mu < 0:
            raise ValueError(f"mu must be non-negative, got {self.mu}")
        if A.size != self.k_max + 1:
            raise ScheduleError(f"need k_max + 1 = {self.k_max + 1} values of A, got {A.size}")
        if np.any(A <= 0):
            raise ScheduleError("A must be strictly positive")
        dA = np.diff(A)
        if np.any(dA <= 0):
            raise ScheduleError("A must be strictly increasing")
        theta = dA / A[1:]
        if self.mu == 0:
            a = theta.copy()
            s = dA**2 / A[1:]
        else:
            a = dA / (2.0 * A[1:] - A[:-1])
            s = dA**2 / (self.mu * A[1:] ** 2)
        b = np.zeros_like(theta)
        if self.k_max >= 1:
            b[1:] = a[1:] * (1.0 - theta[:-1]) / theta[:-1]
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "b", b)


def schedule_from_A(A, mu: float, k_max: int | None = None) -> Schedule:
    """Build a Schedule from the sequence A (positive, strictly increasing)."""
    A = np.asarray(A, dtype=float)
    if k_max is None:
        k_max = A.size - 1
    return Schedule(A=A[: k_max + 1], mu=float(mu), k_max=int(k_max))


@dataclass(frozen=True)
class ContinuousScaling:
    """Scaling functions (alpha, beta, a) of the generalized flows.

    ``exp_alpha`` is stored explicitly so factories can supply the exact
    closed form; ``alpha`` is its logarithm. ``A``/``A_dot`` are present only
    when the scaling comes from an auxiliary growth function.
    """

    exp_alpha: Callable[[float], float]
    beta: Callable[[float], float]
    beta_dot: Callable[[float], float]
    a: Callable[[float], float]
    A: Optional[Callable[[float], float]] = None
    A_dot: Optional[Callable[[float], float]] = None

    def alpha(self, t: float) -> float:
        return math.log(self.exp_alpha(t))


@dataclass(frozen=True)
class ScalingReport:
    """Outcome of checking the ideal scaling condition on a grid."""

    passed: bool
    first_violation: Optional[tuple[float, str]] = None  # (t, which condition)


def validate_ideal_scaling(scaling: ContinuousScaling, grid, rel_tol: float = 1e-9) -> ScalingReport:
    """Check e^alpha >= beta_dot > 0 and 0 <= a <= 1 at every grid point.

    Equality of e^alpha and beta_dot is allowed within a relative tolerance,
    since the two are often the same quantity computed through different
    formulas. When A is present, A > 0 and A_dot > 0 are checked as well.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("grid must be non-empty")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    for t in grid:
        ea = scaling.exp_alpha(t)
        bd = scaling.beta_dot(t)
        at = scaling.a(t)
        if not bd > 0:
            return ScalingReport(False, (float(t), "beta_dot <= 0"))
        if ea < bd * (1.0 - rel_tol):
            return ScalingReport(False, (float(t), "exp(alpha) < beta_dot"))
        if at < -rel_tol or at > 1.0 + rel_tol:
            return ScalingReport(False, (float(t), "a outside [0, 1]"))
        if scaling.A is not None:
            if not scaling.A(t) > 0:
                return ScalingReport(False, (float(t), "A <= 0"))
            if scaling.A_dot is not None and not scaling.A_dot(t) > 0:
                return ScalingReport(False, (float(t), "A_dot <= 0"))
    return ScalingReport(True, None)


@dataclass(frozen=True)
class GrowthFamily:
    """A continuous scaling together with its discrete schedule generator."""

    scaling: ContinuousScaling
    mu: float
    h: float

    def schedule(self, k_max: int) -> Schedule:
        A = np.array([self.scaling.A(self.h * k) for k in range(k_max + 1)])
        return schedule_from_A(A, self.mu, k_max)


def su_growth(eps: float, L: float, h: float) -> GrowthFamily:
    """Quadratic growth A(t) = (t + eps)^2 / (4 L) and its h-step schedule.

    The lookahead weight a(t) = h (2 (t + eps) + h) / (t + eps + h)^2 matches
    the discrete a_k at t = h k, and the resulting s_k never exceeds h^2 / L.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if L <= 0 or h <= 0:
        raise ValueError("L and h must be positive")
    scaling = ContinuousScaling(
        exp_alpha=lambda t: 2.0 / (t + eps),
        beta=lambda t: 2.0 * math.log(t + eps) - math.log(4.0 * L),
        beta_dot=lambda t: 2.0 / (t + eps),
        a=lambda t: h * (2.0 * (t + eps) + h) / (t + eps + h) ** 2,
        A=lambda t: (t + eps) ** 2 / (4.0 * L),
        A_dot=lambda t: (t + eps) / (2.0 * L),
    )
    return GrowthFamily(scaling=scaling, mu=0.0, h=h)


def su_limit_scaling(L: float, h: float) -> ContinuousScaling:
    """The eps -> 0 limit of the quadratic growth scaling.

    A(0) = 0, so no valid discrete schedule exists; the matching discrete
    coefficients are available in closed form via ``su_limit_coefficients``.
    """
    if L <= 0 or h <= 0:
        raise ValueError("L and h must be positive")
    return ContinuousScaling(
        exp_alpha=lambda t: 2.0 / t if t > 0 else math.inf,
        beta=lambda t: 2.0 * math.log(t) - math.log(4.0 * L) if t > 0 else -math.inf,
        beta_dot=lambda t: 2.0 / t if t > 0 else math.inf,
        a=lambda t: h * (2.0 * t + h) / (t + h) ** 2,
        A=lambda t: t**2 / (4.0 * L),
        A_dot=lambda t: t / (2.0 * L),
    )


def su_limit_coefficients(L: float, h: float = 1.0):
    """Exact two-sequence coefficients in the eps -> 0 limit of the quadratic growth.

    s_k = h^2 (2k+1)^2 / (4 L (k+1)^2) and b_k = ((2k+1)/(2k-1)) ((k-1)/(k+1))^2
    for k >= 1, with b_0 = 0 (b is independent of h). At h = 1 their
    constant-step approximations are the familiar s = 1/L and b_k = k/(k+3).
    """
    if L <= 0 or h <= 0:
        raise ValueError("L and h must be positive")

    def s(k: int) -> float:
        return h * h * (2 * k + 1) ** 2 / (4.0 * L * (k + 1) ** 2)

    def b(k: int) -> float:
        if k < 1:
            return 0.0
        return (2 * k + 1) / (2 * k - 1) * ((k - 1) / (k + 1)) ** 2

    return s, b


def wilson_growth(mu: float, L: float, h: float) -> GrowthFamily:
    """Exponential growth A(t) = exp(sqrt(mu/L) t) and its h-step schedule.

    Both a(t) and s_k are constant in k:
    a = (e^x - 1) / (2 e^x - 1) and s = (1 - e^{-x})^2 / mu with x = sqrt(mu/L) h,
    and s <= h^2 / L because 1 - e^{-x} <= x.
    """
    if not 0 < mu <= L:
        raise ValueError(f"need 0 < mu <= L, got mu={mu}, L={L}")
    if h <= 0:
        raise ValueError("h must be positive")
    rho = math.sqrt(mu / L)
    a_const = (math.exp(rho * h) - 1.0) / (2.0 * math.exp(rho * h) - 1.0)
    scaling = ContinuousScaling(
        exp_alpha=lambda t: rho,
        beta=lambda t: rho * t,
        beta_dot=lambda t: rho,
        a=lambda t: a_const,
        A=lambda t: math.exp(rho * t),
        A_dot=lambda t: rho * math.exp(rho * t),
    )
    return GrowthFamily(scaling=scaling, mu=mu, h=h)


def muehlebach_convex_scaling(L: float) -> ContinuousScaling:
    """e^alpha = 2/(t+3), e^beta = (t+3)^2 / (4L), a = 2t/(t+3)^2."""
    if L <= 0:
        raise ValueError("L must be positive")
    return ContinuousScaling(
        exp_alpha=lambda t: 2.0 / (t + 3.0),
        beta=lambda t: 2.0 * math.log(t + 3.0) - math.log(4.0 * L),
        beta_dot=lambda t: 2.0 / (t + 3.0),
        a=lambda t: 2.0 * t / (t + 3.0) ** 2,
        A=lambda t: (t + 3.0) ** 2 / (4.0 * L),
        A_dot=lambda t: (t + 3.0) / (2.0 * L),
    )


def muehlebach_sc_scaling(mu: float, L: float) -> ContinuousScaling:
    """Constant coefficients in terms of kappa = L / mu.

    e^alpha = 1/sqrt(kappa), beta_dot = (sqrt(kappa)-1)/(kappa+1),
    a = (sqrt(kappa)-1)/(sqrt(kappa)(sqrt(kappa)+1)).
    """
    if not 0 < mu <= L:
        raise ValueError(f"need 0 < mu <= L, got mu={mu}, L={L}")
    kappa = L / mu
    rk = math.sqrt(kappa)
    bd = (rk - 1.0) / (kappa + 1.0)
    a_const = (rk - 1.0) / (rk * (rk + 1.0))
    return ContinuousScaling(
        exp_alpha=lambda t: 1.0 / rk,
        beta=lambda t: bd * t,
        beta_dot=lambda t: bd,
        a=lambda t: a_const,
    )


def chen_scaling(mu: float, s: float) -> ContinuousScaling:
    """e^alpha = sqrt(mu), beta = sqrt(mu) t, a = sqrt(mu s)/(1 + 2 sqrt(mu s))."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    if s < 0:
        raise ValueError("s must be non-negative")
    rm = math.sqrt(mu)
    a_const = math.sqrt(mu * s) / (1.0 + 2.0 * math.sqrt(mu * s))
    return ContinuousScaling(
        exp_alpha=lambda t: rm,
        beta=lambda t: rm * t,
        beta_dot=lambda t: rm,
        a=lambda t: a_const,
    )


def constant_momentum_sc(mu: float, L: float) -> float:
    """The constant-step momentum (sqrt(kappa) - 1) / (sqrt(kappa) + 1)."""
    if not 0 < mu < L:
        raise ValueError(f"need 0 < mu < L, got mu={mu}, L={L}")
    rk = math.sqrt(L / mu)
    return (rk - 1.0) / (rk + 1.0)


@dataclass(frozen=True)
class MonotoneMap:
    """Tabulated strictly increasing map tau with linear-interpolated inverse."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.size != values.size or grid.size < 2:
            raise ValueError("grid and values must have equal length >= 2")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(np.diff(values) <= 0):
            raise ValueError("tau must be strictly increasing on the grid")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < self.grid[0] - 1e-12) or np.any(t > self.grid[-1] + 1e-12):
            from .errors import TimeDomainError

            raise TimeDomainError(f"t outside table range [{self.grid[0]}, {self.grid[-1]}]")
        return np.interp(t, self.grid, self.values)

    def inverse(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u < self.values[0] - 1e-12) or np.any(u > self.values[-1] + 1e-12):
            from .errors import TimeDomainError

            raise TimeDomainError(f"u outside table range [{self.values[0]}, {self.values[-1]}]")
        return np.interp(u, self.values, self.grid)


def _simpson_increments(f, grid: np.ndarray, refine: int) -> np.ndarray:
    """Composite-Simpson integral of f over each grid cell, refined internally."""
    n_sub = 2 * refine  # even panel count per cell
    out = np.zeros(grid.size - 1)
    for i in range(grid.size - 1):
        lo, hi = grid[i], grid[i + 1]
        xs = np.linspace(lo, hi, n_sub + 1)
        ys = np.array([f(x) for x in xs])
        w = np.ones(n_sub + 1)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        out[i] = (hi - lo) / (3.0 * n_sub) * float(np.dot(w, ys))
    return out


def tau_from_scaling(scaling: ContinuousScaling, mu: float, t_grid, refine: int = 4) -> MonotoneMap:
    """Cumulative quadrature table of the time-reparametrization integrand.

    Convex mode integrates e^{alpha + beta}; the strongly convex mode
    integrates e^{alpha} / mu. Composite Simpson on the caller's grid,
    refined by ``refine`` internally; tau(0) = 0.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid[0] != 0.0:
        raise ValueError("t_grid must start at 0")
    report = validate_ideal_scaling(scaling, t_grid[t_grid > 0] if t_grid[0] == 0 else t_grid)
    if not report.passed:
        raise ValueError(f"scaling violates the ideal scaling condition at {report.first_violation}")
    if mu == 0:
        integrand = lambda t: scaling.exp_alpha(t) * math.exp(scaling.beta(t))
    else:
        integrand = lambda t: scaling.exp_alpha(t) / mu
    inc = _simpson_increments(integrand, t_grid, refine)
    values = np.concatenate([[0.0], np.cumsum(inc)])
    return MonotoneMap(grid=t_grid, values=values)


def scaling_from_tau(tau: Callable[[float], float], tau_dot: Callable[[float], float],
                     mu: float, C: float = 1.0) -> ContinuousScaling:
    """Scaling whose reparametrization integral reproduces the given tau.

    Convex mode: alpha = ln(tau_dot / (tau + C)), beta = ln(tau + C) with C > 0.
    Strongly convex mode: alpha = ln(mu tau_dot), beta = mu tau. Both satisfy
    the ideal scaling condition with equality.
    """
    if mu == 0:
        if C <= 0:
            raise ValueError("C must be positive in the convex mode")

        def exp_alpha(t):
            td = tau_dot(t)
            if td <= 0:
                raise ValueError(f"tau_dot must be positive, got {td} at t={t}")
            return td / (tau(t) + C)

        return ContinuousScaling(
            exp_alpha=exp_alpha,
            beta=lambda t: math.log(tau(t) + C),
            beta_dot=exp_alpha,
            a=lambda t: 1.0,
        )

    def exp_alpha_sc(t):
        td = tau_dot(t)
        if td <= 0:
            raise ValueError(f"tau_dot must be positive, got {td} at t={t}")
        return mu * td

    return ContinuousScaling(
        exp_alpha=exp_alpha_sc,
        beta=lambda t: mu * tau(t),
        beta_dot=exp_alpha_sc,
        a=lambda t: 1.0,
    )


def fit_polynomial_growth(schedule: Schedule, k_lo: int = 5) -> float:
    """Fitted exponent p of A_k ~ C k^p by log-log least squares over k >= k_lo."""
    k = np.arange(k_lo, schedule.k_max + 1)
    if k.size < 2:
        raise ValueError("not enough points to fit")
    slope = np.polyfit(np.log(k), np.log(schedule.A[k_lo:]), 1)[0]
    return float(slope)


def fit_geometric_ratio(schedule: Schedule) -> float:
    """Fitted constant ratio A_{k+1} / A_k (geometric mean of the ratios)."""
    ratios = schedule.A[1:] / schedule.A[:-1]
    return float(np.exp(np.mean(np.log(ratios))))
