"""ADMM baseline with indicator splitting and a Newton/Gauss-Seidel y-step.

The sphere constraint is split off through an indicator:

    min I_S(x) + f(y)   s.t.  x = y,

iterated as (a) x-step, projection of y - mu/rho onto the sphere (plain
normalization by default; an optional clamp-then-normalize projection onto
the nonnegative sector is available for investigation), (b) y-step, damped
Newton on the strongly convex subproblem with search directions from a few
Gauss-Seidel sweeps on the Newton system and the decrement rule
newDec^2 / 2 <= eps_k, eps_k = newton_eps0 * newton_decay^k, and (c) the
dual ascent mu += rho (x - y).  The outer loop stops when the Riemannian
gradient norm of f at x drops below outer_tol.

The shift alpha plays no role here: ADMM works on the original objective.
"""

import time
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .pam_solver import SolveReport, _check_unit
from .quartic_problem import QuarticProblem

__all__ = [
    "AdmmConfig",
    "AdmmState",
    "admm_solve",
    "y_subproblem_gradient_hessian",
    "riemannian_grad_norm",
]

DIVERGENCE_LIMIT = 1e6


@dataclass
class AdmmConfig:
    rho: float = 80.0
    outer_tol: float = 1e-6
    max_outer: int = 2000
    newton_eps0: float = 1e-2
    newton_decay: float = 0.5
    newton_max: int = 50
    gs_sweeps: int = 3
    max_backtracks: int = 50
    seed: int | None = None
    projection: str = "normalize"  # or "nonneg" (investigative clamp)

    def validate(self):
        if self.rho <= 0:
            raise ValueError("penalty rho must be positive")
        if self.outer_tol <= 0 or self.newton_eps0 <= 0:
            raise ValueError("tolerances must be positive")
        if not 0 < self.newton_decay < 1:
            raise ValueError("newton_decay must lie in (0, 1)")
        if self.gs_sweeps < 1 or self.newton_max < 1 or self.max_outer < 1:
            raise ValueError("iteration counts must be at least 1")
        if self.projection not in ("normalize", "nonneg"):
            raise ValueError("projection must be 'normalize' or 'nonneg'")


@dataclass
class AdmmState:
    x: np.ndarray
    y: np.ndarray
    mu: np.ndarray

    def copy(self):
        return AdmmState(self.x.copy(), self.y.copy(), self.mu.copy())


def riemannian_grad_norm(problem: QuarticProblem, x) -> float:
    """Norm of grad f projected onto the tangent space of the sphere at x."""
    x = np.asarray(x, dtype=float)
    g = problem.grad_f(x)
    return float(np.linalg.norm(g - (x @ g) * x))


def y_subproblem_gradient_hessian(problem, y, x, mu, rho):
    """Gradient and Hessian of f(y) + mu'(x - y) + rho/2 ||x - y||^2 in y.

    gradient = 2 theta y^3 + 2 B y - mu - rho (x - y)
    Hessian  = diag(6 theta y^2) + 2 B + rho I   (dense, symmetric positive
    definite whenever B is positive semidefinite), with the diagonal
    explicit for Gauss-Seidel splitting.
    """
    y = np.asarray(y, dtype=float)
    grad = problem.grad_f(y) - mu - rho * (x - y)
    H = 2.0 * problem.B_dense() + np.diag(6.0 * problem.theta * y**2 + rho)
    return grad, H


def _gs_direction(H, g, sweeps):
    """Approximate solve of H d = -g by forward Gauss-Seidel sweeps from 0."""
    L = np.tril(H)
    U = np.triu(H, k=1)
    d = np.zeros_like(g)
    for _ in range(sweeps):
        d = solve_triangular(L, -g - U @ d, lower=True)
    return d


def admm_solve(problem: QuarticProblem, config: AdmmConfig, init, record_states=False) -> SolveReport:
    """Run ADMM from a unit initial point (x = y = init, mu = 0).

    The report counts cumulative Newton iterations in `iters` and outer
    splitting cycles in `outer_iters`; `inner_trace` holds one row
    (total_newton_index, f(y), outer_index, outer_boundary) per Newton step
    for total-iteration convergence plots.
    """
    config.validate()
    n = problem.n
    y = _check_unit(init, n).copy()
    mu = np.zeros(n)
    x = y.copy()

    report = SolveReport()
    report.inner_trace = []
    report.outer_iters = 0
    states = [] if record_states else None
    termination = "max-iter"
    rho = config.rho
    t0 = time.perf_counter()

    def subproblem_value(yv):
        return problem.f_value(yv) - mu @ yv + 0.5 * rho * float(np.sum((x - yv) ** 2))

    newton_total = 0
    for k in range(config.max_outer):
        t = y - mu / rho
        if config.projection == "nonneg":
            t = np.maximum(t, 0.0)
        nt = np.linalg.norm(t)
        if nt > 0.0:
            x = t / nt
        # degenerate projection argument: keep the previous x

        eps_k = config.newton_eps0 * config.newton_decay**k
        for _ in range(config.newton_max):
            g, H = y_subproblem_gradient_hessian(problem, y, x, mu, rho)
            d = _gs_direction(H, g, config.gs_sweeps)
            dec_sq = max(-float(g @ d), 0.0)
            obj0 = subproblem_value(y)
            step = 1.0
            for _ in range(config.max_backtracks):
                if subproblem_value(y + step * d) <= obj0:
                    break
                step *= 0.5
            y = y + step * d
            newton_total += 1
            report.inner_trace.append(
                (newton_total, problem.f_value(y), k + 1, len(report.inner_trace) == 0 or report.inner_trace[-1][2] != k + 1)
            )
            if dec_sq / 2.0 <= eps_k:
                break

        mu = mu + rho * (x - y)
        report.outer_iters = k + 1
        report.f_alpha_trace.append(problem.f_value(x))
        report.state_gap_trace.append(float(np.linalg.norm(x - y)))
        if record_states:
            states.append(AdmmState(x.copy(), y.copy(), mu.copy()))

        if np.linalg.norm(y) > DIVERGENCE_LIMIT:
            termination = "diverged"
            break
        if riemannian_grad_norm(problem, x) <= config.outer_tol:
            termination = "tolerance"
            break

    report.iters = newton_total
    report.wall_time = time.perf_counter() - t0
    report.termination = termination
    report.best_point = x
    report.best_value = problem.f_value(x)
    if record_states:
        report.states = states
    return report
