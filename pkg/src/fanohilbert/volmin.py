"""Minimization of the normalized volume C_{-m-1}(b) over the Reeb slice.

The optimizer runs in floating point; each query is rationalized and answered
by the exact expansion oracle, so objective and gradient carry no noise
beyond the rationalization of the query point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError
from .exactalg import qstr
from .expansion import coefficient_data
from .polytope import PolarPolytope, reeb_margin

__all__ = [
    "VolMinConfig",
    "VolMinResult",
    "PostReport",
    "rationalize",
    "objective_and_gradient",
    "minimize_volume",
    "post_minimization_report",
]


@dataclass
class VolMinConfig:
    tol: float = 1e-10
    max_iter: int = 200
    initial: Sequence[float] | None = None
    denom_bound: int = 10**6

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tolerance must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")


@dataclass
class VolMinResult:
    minimizer: np.ndarray
    objective: float
    grad_norm: float
    iterations: int
    margin: float
    converged: bool
    rational_point: tuple[Fraction, ...] = ()
    diagnostics: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "minimizer": [float(x) for x in self.minimizer],
            "objective": self.objective,
            "grad_norm": self.grad_norm,
            "iterations": self.iterations,
            "margin": self.margin,
            "converged": self.converged,
            "diagnostics": list(self.diagnostics),
        }


def rationalize(b, denom_bound: int = 10**6) -> tuple[Fraction, ...]:
    return tuple(Fraction(float(x)).limit_denominator(denom_bound) for x in b)


def _exact(polar: PolarPolytope, q, order: int):
    vals, grads = coefficient_data(polar, q, N=order, verify=False)
    return vals, grads


def objective_and_gradient(polar: PolarPolytope, b, denom_bound: int = 10**6) -> tuple[float, np.ndarray]:
    """Float value and gradient of C_{-m-1} at the rationalization of ``b``."""
    m = polar.m
    q = rationalize(b, denom_bound)
    if reeb_margin(polar, q) <= 0:
        raise DomainError(f"point {[float(x) for x in q]} is outside the Reeb slice")
    vals, grads = _exact(polar, q, -(m + 1))
    return float(vals[-(m + 1)]), np.array([float(x) for x in grads[-(m + 1)]])


def minimize_volume(polar: PolarPolytope, cfg: VolMinConfig | None = None) -> VolMinResult:
    """BFGS with a halving line search that rejects exterior and non-decreasing trials."""
    cfg = cfg or VolMinConfig()
    m = polar.m
    x = np.zeros(m) if cfg.initial is None else np.asarray(cfg.initial, dtype=float)
    if float(reeb_margin(polar, [float(v) for v in x])) <= 0:
        raise DomainError("initial point is not interior to the Reeb slice")
    f, g = objective_and_gradient(polar, x, cfg.denom_bound)
    H = np.eye(m)
    diagnostics: list[str] = []
    margins: list[float] = []
    it = 0
    converged = np.linalg.norm(g) <= cfg.tol
    while not converged and it < cfg.max_iter:
        it += 1
        p = -H @ g
        if p @ g >= 0:
            H = np.eye(m)
            p = -g
        step = 1.0
        accepted = False
        for _ in range(60):
            trial = x + step * p
            if float(reeb_margin(polar, [float(v) for v in rationalize(trial, cfg.denom_bound)])) > 0:
                f_new, g_new = objective_and_gradient(polar, trial, cfg.denom_bound)
                if f_new <= f + 1e-4 * step * (p @ g) or (f_new <= f and np.linalg.norm(g_new) < np.linalg.norm(g)):
                    accepted = True
                    break
            step /= 2
        if not accepted:
            diagnostics.append(f"line search failed at iteration {it}")
            break
        s = trial - x
        y = g_new - g
        sy = s @ y
        if sy > 1e-300:
            rho = 1.0 / sy
            V = np.eye(m) - rho * np.outer(s, y)
            H = V @ H @ V.T + rho * np.outer(s, s)
        x, f, g = trial, f_new, g_new
        margins.append(float(reeb_margin(polar, [float(v) for v in x])))
        if np.linalg.norm(g) <= cfg.tol:
            converged = True
        elif np.linalg.norm(s) < 1.0 / cfg.denom_bound and np.linalg.norm(g) < 1e3 * cfg.tol:
            # rationalization floor reached
            converged = True
    if not converged:
        diagnostics.append(f"no convergence after {it} iterations (|grad| = {np.linalg.norm(g):.3e})")
        if len(margins) >= 3 and margins[-1] < margins[-2] < margins[-3] and margins[-1] < 1e-3:
            diagnostics.append(f"iterates approach the slice boundary (margin {margins[-1]:.3e})")
    q = rationalize(x, cfg.denom_bound)
    return VolMinResult(
        minimizer=np.array([float(v) for v in q]),
        objective=f,
        grad_norm=float(np.linalg.norm(g)),
        iterations=it,
        margin=float(reeb_margin(polar, q)),
        converged=bool(converged),
        rational_point=q,
        diagnostics=diagnostics,
    )


@dataclass
class PostReport:
    point: tuple[Fraction, ...]
    values: dict[int, float]
    gradients: dict[int, tuple[float, ...]]
    nonzero: list[int]

    def to_json(self) -> dict:
        return {
            "point": [qstr(x) for x in self.point],
            "values": {str(i): v for i, v in self.values.items()},
            "gradients": {str(i): list(v) for i, v in self.gradients.items()},
            "nonzero_gradients": self.nonzero,
        }


def post_minimization_report(
    polar: PolarPolytope, b, order: int = -1, denom_bound: int = 10**6, zero_tol: float = 1e-7
) -> PostReport:
    """All C_i and grad C_i at the rationalized minimizer, flagging the nonzero gradients."""
    q = rationalize(b, denom_bound) if not all(isinstance(x, Fraction) for x in b) else tuple(b)
    vals, grads = _exact(polar, q, order)
    fv = {i: float(v) for i, v in vals.values.items()}
    fg = {i: tuple(float(x) for x in g) for i, g in grads.gradients.items()}
    nonzero = [i for i, g in fg.items() if max(abs(x) for x in g) > zero_tol]
    return PostReport(q, fv, fg, nonzero)
