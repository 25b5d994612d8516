"""Catalog of continuous-time models as first-order systems.

Each model is packaged as a ``FlowModel``: a right-hand side over a flat state
vector plus enough structure (representation, scaling, mirror map) to recover
the lookahead point Y, the secondary variable Z, and diagnostics.

State layouts by representation:

* ``"xz"``     -- state = [X, W] with W = grad g(Z); Z is recovered through the
                  inverse gradient of g (for the Euclidean g, W is Z itself).
* ``"xv"``     -- state = [X, V] with V = dX/dt (second-order models).
* ``"single"`` -- state = W = grad g(Q) for the quasi-gradient flow, or Q
                  itself for the plain gradient flow.

The xz-representation models compute the gradient at the lookahead point
Y = X + a(t) (Z - X); the models that predate the gradient correction
(the Bregman-Lagrangian pair, and the limit models) use grad f(X) instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .coefficients import (ContinuousScaling, chen_scaling, muehlebach_convex_scaling,
                           muehlebach_sc_scaling, su_growth, su_limit_scaling, wilson_growth)
from .errors import CapabilityError
from .problems import MirrorMap, Objective, euclidean_map, finite_diff_hess_vec

CATALOG = (
    "G-ODE-C", "G-ODE-UC", "ODE-C", "ODE-SC", "SU", "WILSON",
    "MUEHLEBACH-C", "MUEHLEBACH-SC", "SHI-C", "SHI-SC", "CHEN-SC",
    "BLF-C", "BLF-SC", "QGF", "GF", "ODE-SC-TIME", "TIME-XZ",
)


@dataclass(frozen=True)
class FlowModel:
    """A named right-hand side with its state representation and parameters."""

    name: str
    representation: str            # "xz", "xv" or "single"
    dim: int
    problem: Objective
    rhs_fn: Callable[[float, np.ndarray], np.ndarray]
    lookahead_fn: Optional[Callable[[float, np.ndarray], np.ndarray]] = None
    scaling: Optional[ContinuousScaling] = None
    mirror: Optional[MirrorMap] = None
    mu: float = 0.0
    params: dict = field(default_factory=dict)

    def initial_state(self, x0) -> np.ndarray:
        x0 = np.asarray(x0, dtype=float)
        if x0.size != self.dim:
            raise ValueError(f"x0 has dimension {x0.size}, model expects {self.dim}")
        if self.representation == "xv":
            return np.concatenate([x0, np.zeros(self.dim)])
        if self.representation == "xz":
            g = self.mirror if self.mirror is not None else euclidean_map()
            return np.concatenate([x0, np.asarray(g.grad_g(x0), dtype=float)])
        if self.name == "GF" or self.mirror is None or self.mirror.is_euclidean:
            return x0.copy()
        return np.asarray(self.mirror.grad_g(x0), dtype=float)

    def split(self, state: np.ndarray):
        if self.representation == "single":
            return state, None
        return state[: self.dim], state[self.dim:]

    def primary(self, state: np.ndarray) -> np.ndarray:
        """The X series (or Q for the single-variable flows)."""
        if self.representation == "single":
            if self.name != "GF" and self.mirror is not None and not self.mirror.is_euclidean:
                return np.asarray(self.mirror.grad_g_inverse(state), dtype=float)
            return state
        return state[: self.dim]

    def z_of(self, t: float, state: np.ndarray) -> np.ndarray:
        """Recover Z from the state (via grad g inverse, or V and the scaling)."""
        if self.representation == "single":
            return self.primary(state)
        x, second = self.split(state)
        if self.representation == "xz":
            g = self.mirror if self.mirror is not None else euclidean_map()
            return np.asarray(g.grad_g_inverse(second), dtype=float)
        if self.scaling is None:
            raise CapabilityError(f"model {self.name} carries no scaling to convert V to Z")
        return x + second / self.scaling.exp_alpha(t)


def rhs(model: FlowModel, t: float, state) -> np.ndarray:
    """Evaluate the model's right-hand side."""
    return model.rhs_fn(t, np.asarray(state, dtype=float))


def lookahead_Y(model: FlowModel, t: float, state) -> np.ndarray:
    """The point the model evaluates (or approximates) the gradient at."""
    if model.lookahead_fn is None:
        raise CapabilityError(f"model {model.name} has no lookahead point")
    return model.lookahead_fn(t, np.asarray(state, dtype=float))


def xv_to_xz(scaling: ContinuousScaling, t: float, x, v) -> np.ndarray:
    """Z = X + e^{-alpha(t)} V."""
    return np.asarray(x, dtype=float) + np.asarray(v, dtype=float) / scaling.exp_alpha(t)


def xz_to_xv(scaling: ContinuousScaling, t: float, x, z) -> np.ndarray:
    """V = e^{alpha(t)} (Z - X)."""
    return scaling.exp_alpha(t) * (np.asarray(z, dtype=float) - np.asarray(x, dtype=float))


def _hess_vec_oracle(problem: Objective, fd_fallback: bool):
    if problem.hessian_vec is not None:
        return problem.hessian_vec
    if not fd_fallback:
        raise CapabilityError("problem has no hessian_vec and the finite-difference "
                              "fallback is disabled")

    def hv(x, v):
        delta = 1e-6 * (1.0 + float(np.linalg.norm(x)))
        return finite_diff_hess_vec(problem, x, v, delta)

    return hv


# ---------------------------------------------------------------------------
# auxiliary-sequence models (X, Z)
# ---------------------------------------------------------------------------

def ode_c_flow(problem: Objective, scaling: ContinuousScaling, name: str = "ODE-C") -> FlowModel:
    """Convex model driven by a growth function A(t):

    Y = X + a(Z - X);  dZ = -A'(t) grad f(Y);  dX = (A'/A)(Z - X).

    At a start with A(0) = 0 the ratio A'/A is singular but (Z - X) vanishes
    quadratically; the limit of dX there is 0.
    """
    if scaling.A is None or scaling.A_dot is None:
        raise ValueError("ODE-C needs a scaling with A and A_dot")
    n = problem.dim
    grad = problem.gradient

    def f(t, state):
        x, z = state[:n], state[n:]
        y = x + scaling.a(t) * (z - x)
        A = scaling.A(t)
        Adot = scaling.A_dot(t)
        dx = (Adot / A) * (z - x) if A > 0 else np.zeros(n)
        dz = -Adot * grad(y)
        return np.concatenate([dx, dz])

    def look(t, state):
        x, z = state[:n], state[n:]
        return x + scaling.a(t) * (z - x)

    return FlowModel(name=name, representation="xz", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look, scaling=scaling, mu=0.0)


def ode_sc_flow(problem: Objective, scaling: ContinuousScaling, mu: float,
                name: str = "ODE-SC") -> FlowModel:
    """Strongly convex model driven by a growth function A(t):

    Y = X + a(Z - X);  dZ = -(A'/A)(Z - Y + grad f(Y)/mu);  dX = (A'/A)(Z - X).
    """
    if mu <= 0:
        raise ValueError("ODE-SC requires mu > 0")
    if scaling.A is None or scaling.A_dot is None:
        raise ValueError("ODE-SC needs a scaling with A and A_dot")
    n = problem.dim
    grad = problem.gradient

    def f(t, state):
        x, z = state[:n], state[n:]
        y = x + scaling.a(t) * (z - x)
        ratio = scaling.A_dot(t) / scaling.A(t)
        dx = ratio * (z - x)
        dz = -ratio * (z - y + grad(y) / mu)
        return np.concatenate([dx, dz])

    def look(t, state):
        x, z = state[:n], state[n:]
        return x + scaling.a(t) * (z - x)

    return FlowModel(name=name, representation="xz", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look, scaling=scaling, mu=mu)


# ---------------------------------------------------------------------------
# generalized models (X, W = grad g(Z))
# ---------------------------------------------------------------------------

def g_ode_c_flow(problem: Objective, scaling: ContinuousScaling,
                 mirror: MirrorMap | None = None, a_fn: Callable[[float], float] | None = None,
                 name: str = "G-ODE-C") -> FlowModel:
    """Generalized convex model:

    Y = X + a(Z - X);  Z = X + e^{-alpha} dX/dt;  d/dt grad g(Z) = -e^{alpha+beta} grad f(Y).
    """
    g = mirror if mirror is not None else euclidean_map()
    n = problem.dim
    grad = problem.gradient
    a_fn = a_fn if a_fn is not None else scaling.a

    # e^{alpha+beta} equals A'(t) exactly for growth-derived scalings; falling
    # back to it also keeps the singular start (A(0) = 0, e^alpha infinite)
    # finite, where Z - X vanishes and dX has limit 0
    def f(t, state):
        x, w = state[:n], state[n:]
        z = np.asarray(g.grad_g_inverse(w), dtype=float)
        y = x + a_fn(t) * (z - x)
        ea = scaling.exp_alpha(t)
        dx = ea * (z - x) if math.isfinite(ea) else np.zeros(n)
        if scaling.A_dot is not None:
            eab = scaling.A_dot(t)
        else:
            eab = ea * math.exp(scaling.beta(t))
        dw = -eab * grad(y)
        return np.concatenate([dx, dw])

    def look(t, state):
        x, w = state[:n], state[n:]
        z = np.asarray(g.grad_g_inverse(w), dtype=float)
        return x + a_fn(t) * (z - x)

    return FlowModel(name=name, representation="xz", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look, scaling=scaling, mirror=g, mu=0.0)


def g_ode_uc_flow(problem: Objective, scaling: ContinuousScaling, mu: float,
                  mirror: MirrorMap | None = None, a_fn: Callable[[float], float] | None = None,
                  name: str = "G-ODE-UC") -> FlowModel:
    """Generalized uniformly convex model:

    d/dt grad g(Z) = -beta_dot (grad g(Z) - grad g(Y)) - (e^{alpha}/mu) grad f(Y).
    """
    if mu <= 0:
        raise ValueError("G-ODE-UC requires mu > 0")
    g = mirror if mirror is not None else euclidean_map()
    n = problem.dim
    grad = problem.gradient
    a_fn = a_fn if a_fn is not None else scaling.a

    def f(t, state):
        x, w = state[:n], state[n:]
        z = np.asarray(g.grad_g_inverse(w), dtype=float)
        y = x + a_fn(t) * (z - x)
        ea = scaling.exp_alpha(t)
        dx = ea * (z - x)
        dw = -scaling.beta_dot(t) * (w - np.asarray(g.grad_g(y), dtype=float)) \
            - (ea / mu) * grad(y)
        return np.concatenate([dx, dw])

    def look(t, state):
        x, w = state[:n], state[n:]
        z = np.asarray(g.grad_g_inverse(w), dtype=float)
        return x + a_fn(t) * (z - x)

    return FlowModel(name=name, representation="xz", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look, scaling=scaling, mirror=g, mu=mu)


def blf_c_flow(problem: Objective, scaling: ContinuousScaling,
               mirror: MirrorMap | None = None) -> FlowModel:
    """The convex Bregman-Lagrangian flow: the generalized model with a = 0,
    so the gradient is taken at X rather than at a lookahead point."""
    model = g_ode_c_flow(problem, scaling, mirror, a_fn=lambda t: 0.0, name="BLF-C")
    return model


def blf_sc_flow(problem: Objective, scaling: ContinuousScaling, mu: float,
                mirror: MirrorMap | None = None) -> FlowModel:
    """The strongly convex Bregman-Lagrangian flow (a = 0)."""
    model = g_ode_uc_flow(problem, scaling, mu, mirror, a_fn=lambda t: 0.0, name="BLF-SC")
    return model


# ---------------------------------------------------------------------------
# second-order limit and high-resolution models (X, V)
# ---------------------------------------------------------------------------

def su_flow(problem: Objective, L: float | None = None) -> FlowModel:
    """ddX + (3/t) dX + grad f(X)/L = 0.

    The damping is singular at t = 0; with the standard start V(0) = 0 the
    acceleration has the removable limit -grad f(X)/(4L), which is used for
    evaluations at exactly t = 0.
    """
    L = problem.L if L is None else L
    n = problem.dim
    grad = problem.gradient

    def f(t, state):
        x, v = state[:n], state[n:]
        if t <= 0.0:
            dv = -grad(x) / (4.0 * L)
        else:
            dv = -3.0 / t * v - grad(x) / L
        return np.concatenate([v, dv])

    return FlowModel(name="SU", representation="xv", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=lambda t, s: s[:n].copy(),
                     scaling=su_limit_scaling(L, 1.0), mu=0.0, params={"L": L})


def wilson_flow(problem: Objective, mu: float, L: float | None = None) -> FlowModel:
    """ddX + 2 sqrt(mu/L) dX + grad f(X)/L = 0."""
    if mu <= 0:
        raise ValueError("WILSON requires mu > 0")
    L = problem.L if L is None else L
    n = problem.dim
    grad = problem.gradient
    c = 2.0 * math.sqrt(mu / L)

    def f(t, state):
        x, v = state[:n], state[n:]
        return np.concatenate([v, -c * v - grad(x) / L])

    rho = math.sqrt(mu / L)
    scaling = ContinuousScaling(exp_alpha=lambda t: rho, beta=lambda t: rho * t,
                                beta_dot=lambda t: rho, a=lambda t: 0.0)
    return FlowModel(name="WILSON", representation="xv", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=lambda t, s: s[:n].copy(),
                     scaling=scaling, mu=mu, params={"L": L})


def muehlebach_c_flow(problem: Objective, L: float | None = None) -> FlowModel:
    """ddX + (3/(t+3)) dX + grad f(X + (t/(t+3)) dX)/L = 0."""
    L = problem.L if L is None else L
    n = problem.dim
    grad = problem.gradient

    def look(t, state):
        x, v = state[:n], state[n:]
        return x + t / (t + 3.0) * v

    def f(t, state):
        v = state[n:]
        dv = -3.0 / (t + 3.0) * v - grad(look(t, state)) / L
        return np.concatenate([v, dv])

    return FlowModel(name="MUEHLEBACH-C", representation="xv", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look,
                     scaling=muehlebach_convex_scaling(L), mu=0.0, params={"L": L})


def muehlebach_sc_flow(problem: Objective, mu: float, L: float | None = None) -> FlowModel:
    """ddX + (2/(sqrt(kappa)+1)) dX + grad f(X + ((sqrt(kappa)-1)/(sqrt(kappa)+1)) dX)/L = 0."""
    if mu <= 0:
        raise ValueError("MUEHLEBACH-SC requires mu > 0")
    L = problem.L if L is None else L
    n = problem.dim
    grad = problem.gradient
    rk = math.sqrt(L / mu)
    damp = 2.0 / (rk + 1.0)
    blook = (rk - 1.0) / (rk + 1.0)

    def look(t, state):
        x, v = state[:n], state[n:]
        return x + blook * v

    def f(t, state):
        v = state[n:]
        dv = -damp * v - grad(look(t, state)) / L
        return np.concatenate([v, dv])

    return FlowModel(name="MUEHLEBACH-SC", representation="xv", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look,
                     scaling=muehlebach_sc_scaling(mu, L), mu=mu, params={"L": L})


def shi_c_flow(problem: Objective, s: float, fd_fallback: bool = True,
               t_floor: float = 1e-2) -> FlowModel:
    """High-resolution convex model:

    ddX + (3/t) dX + sqrt(s) hess f(X) dX + (1 + 3 sqrt(s)/(2t)) grad f(X) = 0.

    With the start V(0) = 0 there is no finite limit at t = 0 (the gradient
    term keeps a 1/t factor), so times below ``t_floor`` are clamped to it.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    n = problem.dim
    grad = problem.gradient
    hv = _hess_vec_oracle(problem, fd_fallback)
    rs = math.sqrt(s)

    def f(t, state):
        x, v = state[:n], state[n:]
        te = max(t, t_floor)
        dv = -3.0 / te * v - rs * hv(x, v) - (1.0 + 1.5 * rs / te) * grad(x)
        return np.concatenate([v, dv])

    def look(t, state):
        x, v = state[:n], state[n:]
        return x + rs * v

    return FlowModel(name="SHI-C", representation="xv", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look, mu=0.0, params={"s": s})


def shi_sc_flow(problem: Objective, mu: float, s: float, fd_fallback: bool = True) -> FlowModel:
    """High-resolution strongly convex model:

    ddX + 2 sqrt(mu) dX + sqrt(s) hess f(X) dX + (1 + sqrt(mu s)) grad f(X) = 0.
    """
    if mu <= 0:
        raise ValueError("SHI-SC requires mu > 0")
    if s < 0:
        raise ValueError("s must be non-negative")
    n = problem.dim
    grad = problem.gradient
    hv = _hess_vec_oracle(problem, fd_fallback)
    rs = math.sqrt(s)
    damp = 2.0 * math.sqrt(mu)
    gcoef = 1.0 + math.sqrt(mu * s)

    def f(t, state):
        x, v = state[:n], state[n:]
        dv = -damp * v - rs * hv(x, v) - gcoef * grad(x)
        return np.concatenate([v, dv])

    def look(t, state):
        x, v = state[:n], state[n:]
        return x + rs * v

    return FlowModel(name="SHI-SC", representation="xv", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look, mu=mu, params={"s": s})


def chen_flow(problem: Objective, mu: float, s: float) -> FlowModel:
    """Varying-step high-resolution model:

    ddX + 2 sqrt(mu) dX + grad f(X + (sqrt(s)/(1 + 2 sqrt(mu s))) dX) = 0.
    """
    if mu <= 0:
        raise ValueError("CHEN-SC requires mu > 0")
    if s < 0:
        raise ValueError("s must be non-negative")
    n = problem.dim
    grad = problem.gradient
    damp = 2.0 * math.sqrt(mu)
    blook = math.sqrt(s) / (1.0 + 2.0 * math.sqrt(mu * s))

    def look(t, state):
        x, v = state[:n], state[n:]
        return x + blook * v

    def f(t, state):
        v = state[n:]
        dv = -damp * v - grad(look(t, state))
        return np.concatenate([v, dv])

    return FlowModel(name="CHEN-SC", representation="xv", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look,
                     scaling=chen_scaling(mu, s), mu=mu, params={"s": s})


# ---------------------------------------------------------------------------
# single-variable flows and the time-comparison pair
# ---------------------------------------------------------------------------

def gf_flow(problem: Objective) -> FlowModel:
    """Plain gradient flow dQ/dt = -grad f(Q)."""
    grad = problem.gradient

    def f(t, state):
        return -grad(state)

    return FlowModel(name="GF", representation="single", dim=problem.dim,
                     problem=problem, rhs_fn=f)


def qgf_flow(problem: Objective, mirror: MirrorMap | None = None) -> FlowModel:
    """Quasi-gradient flow d/dt grad g(Q) = -grad f(Q).

    For the Euclidean g this evaluates exactly as the plain gradient flow.
    """
    g = mirror if mirror is not None else euclidean_map()
    grad = problem.gradient
    if g.is_euclidean:
        def f(t, state):
            return -grad(state)
    else:
        def f(t, state):
            return -grad(np.asarray(g.grad_g_inverse(state), dtype=float))

    return FlowModel(name="QGF", representation="single", dim=problem.dim,
                     problem=problem, rhs_fn=f, mirror=g)


def qgf_time_scaled_flow(problem: Objective, tau_dot: Callable[[float], float],
                         mirror: MirrorMap | None = None) -> FlowModel:
    """d/dt grad g(Z) = -tau_dot(t) grad f(Z): the single-variable flow before
    the time substitution. Reparametrizing its solution by tau gives the
    quasi-gradient flow."""
    g = mirror if mirror is not None else euclidean_map()
    grad = problem.gradient

    def f(t, state):
        z = np.asarray(g.grad_g_inverse(state), dtype=float)
        return -tau_dot(t) * grad(z)

    return FlowModel(name="QGF-SCALED", representation="single", dim=problem.dim,
                     problem=problem, rhs_fn=f, mirror=g)


def ode_sc_time_flow(problem: Objective, mu: float, L: float | None = None,
                     h: float = 1.0) -> FlowModel:
    """The strongly convex auxiliary-sequence model in (X, Z) coordinates:

    Z = X + sqrt(L/mu) dX;  Y = X + a sqrt(L/mu) dX;
    dZ = -(1 - a) dX - grad f(Y) / sqrt(mu L),

    with the constant lookahead weight a of the exponential-growth schedule.
    """
    if mu <= 0:
        raise ValueError("ODE-SC-TIME requires mu > 0")
    L = problem.L if L is None else L
    n = problem.dim
    grad = problem.gradient
    rho = math.sqrt(mu / L)
    a_const = (math.exp(rho * h) - 1.0) / (2.0 * math.exp(rho * h) - 1.0)

    def look(t, state):
        x, z = state[:n], state[n:]
        return x + a_const * (z - x)

    def f(t, state):
        x, z = state[:n], state[n:]
        dx = rho * (z - x)
        dz = -(1.0 - a_const) * dx - grad(look(t, state)) / math.sqrt(mu * L)
        return np.concatenate([dx, dz])

    scaling = wilson_growth(mu, L, h).scaling
    return FlowModel(name="ODE-SC-TIME", representation="xz", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=look, scaling=scaling, mu=mu,
                     params={"L": L, "h": h})


def time_xz_flow(problem: Objective, mu: float) -> FlowModel:
    """The a = 1 generalized model written in (X, Z) coordinates:

    dZ = -grad f(Z)/sqrt(mu);  Z = X + dX/sqrt(mu).
    """
    if mu <= 0:
        raise ValueError("TIME-XZ requires mu > 0")
    n = problem.dim
    grad = problem.gradient
    rm = math.sqrt(mu)

    def f(t, state):
        x, z = state[:n], state[n:]
        dx = rm * (z - x)
        dz = -grad(z) / rm
        return np.concatenate([dx, dz])

    scaling = ContinuousScaling(exp_alpha=lambda t: rm, beta=lambda t: rm * t,
                                beta_dot=lambda t: rm, a=lambda t: 1.0)
    return FlowModel(name="TIME-XZ", representation="xz", dim=n, problem=problem,
                     rhs_fn=f, lookahead_fn=lambda t, s: s[n:].copy(),
                     scaling=scaling, mu=mu)


# ---------------------------------------------------------------------------
# name-based construction for the harness
# ---------------------------------------------------------------------------

def make_model(name: str, problem: Objective, *, mu: float = 0.0, L: float | None = None,
               eps: float = 1.0, h: float = 1.0, s: float | None = None,
               mirror: MirrorMap | None = None, t_floor: float = 1e-2) -> FlowModel:
    """Build a catalog model by name with its default parameterization.

    The convex auxiliary-sequence models default to the quadratic growth
    A(t) = (t + eps)^2/(4L) (the eps = 0 limit form is selected by eps = 0);
    the strongly convex ones default to the exponential growth.
    """
    L = problem.L if L is None else L
    if s is None:
        s = 1.0 / L
    if name not in CATALOG:
        raise ValueError(f"unknown model {name!r}; expected one of {CATALOG}")
    sc_names = {"ODE-SC", "WILSON", "MUEHLEBACH-SC", "SHI-SC", "CHEN-SC", "BLF-SC",
                "G-ODE-UC", "ODE-SC-TIME", "TIME-XZ"}
    if name in sc_names and mu <= 0:
        raise ValueError(f"model {name} requires mu > 0")

    if name == "ODE-C":
        scaling = su_limit_scaling(L, h) if eps == 0 else su_growth(eps, L, h).scaling
        return ode_c_flow(problem, scaling)
    if name == "ODE-SC":
        return ode_sc_flow(problem, wilson_growth(mu, L, h).scaling, mu)
    if name == "G-ODE-C":
        scaling = su_limit_scaling(L, h) if eps == 0 else su_growth(eps, L, h).scaling
        return g_ode_c_flow(problem, scaling, mirror)
    if name == "G-ODE-UC":
        return g_ode_uc_flow(problem, wilson_growth(mu, L, h).scaling, mu, mirror)
    if name == "BLF-C":
        scaling = su_limit_scaling(L, h) if eps == 0 else su_growth(eps, L, h).scaling
        return blf_c_flow(problem, scaling, mirror)
    if name == "BLF-SC":
        return blf_sc_flow(problem, wilson_growth(mu, L, h).scaling, mu, mirror)
    if name == "SU":
        return su_flow(problem, L)
    if name == "WILSON":
        return wilson_flow(problem, mu, L)
    if name == "MUEHLEBACH-C":
        return muehlebach_c_flow(problem, L)
    if name == "MUEHLEBACH-SC":
        return muehlebach_sc_flow(problem, mu, L)
    if name == "SHI-C":
        return shi_c_flow(problem, s, t_floor=t_floor)
    if name == "SHI-SC":
        return shi_sc_flow(problem, mu, s)
    if name == "CHEN-SC":
        return chen_flow(problem, mu, s)
    if name == "QGF":
        return qgf_flow(problem, mirror)
    if name == "GF":
        return gf_flow(problem)
    if name == "ODE-SC-TIME":
        return ode_sc_time_flow(problem, mu, L, h)
    if name == "TIME-XZ":
        return time_xz_flow(problem, mu)
    raise AssertionError("unreachable")
