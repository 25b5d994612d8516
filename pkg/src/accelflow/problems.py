"""Objective-function and Bregman-generator oracles.

All objectives here are smooth convex functions with their minimum shifted to
the origin and optimal value 0. Two smoothness constants are tracked per
instance: ``L`` is the value an algorithm is configured with (it feeds step
sizes and schedules), while ``L_true`` is the instance's actual Lipschitz
constant of the gradient. They are deliberately allowed to differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class Objective:
    """Smooth convex objective with gradient and optional Hessian-vector oracle.

    ``L`` and ``mu`` are the configured smoothness/convexity parameters used by
    algorithms; ``L_true``/``mu_true`` are the instance's actual constants.
    """

    dim: int
    value: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    L: float
    mu: float = 0.0
    hessian_vec: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    L_true: Optional[float] = None
    mu_true: Optional[float] = None
    f_star: float = 0.0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L}")
        if not 0 <= self.mu <= self.L:
            raise ValueError(f"need 0 <= mu <= L, got mu={self.mu}, L={self.L}")

    def with_params(self, L: float | None = None, mu: float | None = None) -> "Objective":
        """Same instance with different configured algorithm parameters."""
        return Objective(
            dim=self.dim,
            value=self.value,
            gradient=self.gradient,
            L=self.L if L is None else L,
            mu=self.mu if mu is None else mu,
            hessian_vec=self.hessian_vec,
            L_true=self.L_true,
            mu_true=self.mu_true,
            f_star=self.f_star,
        )


@dataclass(frozen=True)
class MirrorMap:
    """Strictly convex Bregman generator g with gradient and inverse gradient."""

    value_g: Callable[[np.ndarray], float]
    grad_g: Callable[[np.ndarray], np.ndarray]
    grad_g_inverse: Callable[[np.ndarray], np.ndarray]
    is_euclidean: bool = False


def bregman_divergence(g: MirrorMap, y: np.ndarray, x: np.ndarray) -> float:
    """D_g(y, x) = g(y) - g(x) - <grad g(x), y - x>; non-negative for convex g."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.shape != x.shape:
        raise ValueError(f"dimension mismatch: {y.shape} vs {x.shape}")
    return float(g.value_g(y) - g.value_g(x) - np.dot(g.grad_g(x), y - x))


def euclidean_map() -> MirrorMap:
    """g(x) = ||x||^2 / 2, so that D_g(y, x) = ||y - x||^2 / 2."""
    return MirrorMap(
        value_g=lambda x: 0.5 * float(np.dot(x, x)),
        grad_g=lambda x: np.asarray(x, dtype=float),
        grad_g_inverse=lambda w: np.asarray(w, dtype=float),
        is_euclidean=True,
    )


def diag_quadratic_map(coeffs) -> MirrorMap:
    """g(x) = sum_i c_i x_i^2 with c_i > 0; grad g and its inverse are diagonal."""
    c = np.asarray(coeffs, dtype=float)
    if np.any(c <= 0):
        raise ValueError("mirror map coefficients must be strictly positive")
    return MirrorMap(
        value_g=lambda x: float(np.dot(c, np.asarray(x) ** 2)),
        grad_g=lambda x: 2.0 * c * np.asarray(x, dtype=float),
        grad_g_inverse=lambda w: np.asarray(w, dtype=float) / (2.0 * c),
        is_euclidean=False,
    )


def make_diag_quadratic(coeffs, L: float | None = None, mu: float = 0.0) -> Objective:
    """f(x) = sum_i c_i x_i^2 with strictly positive c_i.

    The true smoothness is 2 max(c); the configured ``L`` defaults to it but is
    normally supplied by the caller (algorithms are often run with a larger L).
    """
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or c.size < 1:
        raise ValueError("coeffs must be a non-empty 1-D sequence")
    if np.any(c <= 0):
        raise ValueError("coefficients must be strictly positive")
    L_true = 2.0 * float(np.max(c))
    mu_true = 2.0 * float(np.min(c))

    def value(x):
        return float(np.dot(c, np.asarray(x) ** 2))

    def gradient(x):
        return 2.0 * c * np.asarray(x, dtype=float)

    def hessian_vec(x, v):
        return 2.0 * c * np.asarray(v, dtype=float)

    return Objective(
        dim=c.size,
        value=value,
        gradient=gradient,
        L=L_true if L is None else float(L),
        mu=float(mu),
        hessian_vec=hessian_vec,
        L_true=L_true,
        mu_true=mu_true,
    )


def make_random_spd_quadratic(n: int, mu: float, L: float, seed: int) -> Objective:
    """f(x) = x^T M x / 2 with n eigenvalues drawn uniformly from [mu, L].

    The orthogonal basis comes from QR-factorizing a seeded standard-normal
    matrix, so the same seed always yields the same M.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= mu < L:
        raise ValueError(f"need 0 <= mu < L, got mu={mu}, L={L}")
    rng = np.random.default_rng(seed)
    eigs = rng.uniform(mu, L, size=n)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    # fix the sign convention so the factorization is unique and reproducible
    q = q * np.sign(np.diag(r))
    M = q @ np.diag(eigs) @ q.T
    M = 0.5 * (M + M.T)

    def value(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * float(x @ M @ x)

    def gradient(x):
        return M @ np.asarray(x, dtype=float)

    def hessian_vec(x, v):
        return M @ np.asarray(v, dtype=float)

    obj = Objective(
        dim=n,
        value=value,
        gradient=gradient,
        L=float(L),
        mu=float(mu),
        hessian_vec=hessian_vec,
        L_true=float(np.max(eigs)),
        mu_true=float(np.min(eigs)),
    )
    object.__setattr__(obj, "matrix", M)
    object.__setattr__(obj, "eigenvalues", np.sort(eigs))
    return obj


def finite_diff_hess_vec(f: Objective, x: np.ndarray, v: np.ndarray, delta: float = 1e-6) -> np.ndarray:
    """Central-difference Hessian-vector product (grad f(x+dv) - grad f(x-dv)) / 2d.

    Exact up to roundoff for quadratics.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if x.shape != v.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {v.shape}")
    return (f.gradient(x + delta * v) - f.gradient(x - delta * v)) / (2.0 * delta)
