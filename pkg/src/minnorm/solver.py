"""Damped Newton with continuation in the conjugate exponent.

The coefficient vector is found by minimizing the convex dual objective, whose
gradient is the residual of the characterization system.  At q = 2 the system
is linear and solved directly; for other targets q steps geometrically from 2
to p/(p-1) and each stage runs damped Newton warm-started from the previous
one.  Convergence is always declared on the residual, never on step size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .basis import BasisSet
from .calculus import dual_objective, hessian_matrix, q_energy, residual_entries
from .errors import NoConvergenceError, NumericallySingularGramError


def conjugate_exponent(p: float) -> float:
    return p / (p - 1.0)


@dataclass
class SolverConfig:
    p: float
    residual_tol: float = 1e-10
    max_newton_iters: int = 100
    continuation_ratio: float = 1.25
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5
    max_backtracks: int = 60

    def __post_init__(self):
        if not (self.p > 1.0 and math.isfinite(self.p)):
            raise ValueError(f"p must lie in (1, inf), got {self.p}")
        if self.residual_tol <= 0 or self.continuation_ratio <= 1.0:
            raise ValueError("tolerances must be positive and ratio > 1")
        if not (0.0 < self.backtrack_factor < 1.0 and 0.0 < self.armijo_c < 1.0):
            raise ValueError("line-search parameters out of range")

    @property
    def q(self) -> float:
        return conjugate_exponent(self.p)


@dataclass
class SolveReport:
    p: float
    q: float
    q_path: list[float]
    stage_iterations: list[int]
    final_residual: float
    final_objective: float
    norm: float
    converged: bool
    objective_trace: list[list[float]] = field(default_factory=list)


def assemble_gram(basis: BasisSet) -> np.ndarray:
    """Pairwise inner products of the basic networks (q = 2 hessian)."""
    return hessian_matrix(np.zeros(len(basis)), basis, 2.0)


def solve_p2(basis: BasisSet, d) -> np.ndarray:
    """Direct solve of the linear q = 2 system via the Gram matrix."""
    d = np.asarray(d, dtype=float)
    gram = assemble_gram(basis)
    try:
        alpha = cho_solve(cho_factor(gram), d)
    except LinAlgError as exc:
        raise NumericallySingularGramError(
            "Gram matrix failed to factor; basis construction is defective") from exc
    resid = float(np.max(np.abs(gram @ alpha - d)))
    if resid > 1e-12 * max(float(np.max(np.abs(d))), 1e-300):
        raise NumericallySingularGramError(
            f"Gram solve residual {resid:.3e} too large")
    return alpha


def residual_vector(alpha, basis: BasisSet, d, q: float) -> np.ndarray:
    """Gradient of the dual objective: characterization defect per network."""
    return residual_entries(alpha, basis, q) - np.asarray(d, dtype=float)


def continuation_path(q_target: float, ratio: float) -> list[float]:
    """Geometric schedule from 2 to the target, last step exact."""
    if q_target == 2.0:
        return [2.0]
    span = abs(math.log(q_target / 2.0))
    n = max(1, math.ceil(span / math.log(ratio) - 1e-12))
    path = [2.0 * (q_target / 2.0) ** (i / n) for i in range(1, n + 1)]
    path[-1] = q_target
    return path


def _newton_stage(alpha, basis, d, q, config, tol):
    """Damped Newton at fixed q; returns (alpha, iters, trace, residual, ok)."""
    trace = [dual_objective(alpha, basis, q, d)]
    iters = 0
    while True:
        grad = residual_entries(alpha, basis, q) - d
        res = float(np.max(np.abs(grad)))
        if res <= tol:
            return alpha, iters, trace, res, True
        if iters >= config.max_newton_iters:
            return alpha, iters, trace, res, False
        hess = hessian_matrix(alpha, basis, q)
        try:
            step = -cho_solve(cho_factor(hess), grad)
        except LinAlgError:
            step = -grad  # singular curvature: fall back to steepest descent
        slope = float(grad @ step)
        if slope >= 0.0:
            step = -grad
            slope = -float(grad @ grad)
        # Below this, objective differences drown in round-off and the Armijo
        # test stops being informative.
        noise = 1e-13 * (1.0 + abs(trace[-1]))
        scale = 1.0
        accepted = False
        for _ in range(config.max_backtracks + 1):
            required = config.armijo_c * scale * slope
            if -required <= noise:
                break
            candidate = alpha + scale * step
            value = dual_objective(candidate, basis, q, d)
            if value <= trace[-1] + required:
                accepted = True
                break
            scale *= config.backtrack_factor
        if not accepted:
            # Certify progress on the residual instead: it is measured on a
            # noise-free scale, and the Newton direction solves the linearized
            # system, so small enough steps along it must reduce it.
            scale = 1.0
            for _ in range(config.max_backtracks + 1):
                candidate = alpha + scale * step
                if not np.array_equal(candidate, alpha):
                    new_grad = residual_entries(candidate, basis, q) - d
                    if float(np.max(np.abs(new_grad))) < res:
                        value = dual_objective(candidate, basis, q, d)
                        accepted = True
                        break
                scale *= config.backtrack_factor
        if not accepted:
            return alpha, iters, trace, res, False
        alpha = candidate
        trace.append(value)
        iters += 1


def solve(basis: BasisSet, d, config: SolverConfig, *,
          alpha0=None, use_continuation: bool = True) -> tuple[np.ndarray, SolveReport]:
    """Solve the characterization system for the configured p.

    Starts from the q = 2 linear solution unless ``alpha0`` is given;
    ``use_continuation=False`` runs a single Newton stage directly at the
    target exponent.  Raises :class:`NoConvergenceError` (carrying the last
    iterate and report) when the budgets run out.
    """
    d = np.asarray(d, dtype=float)
    q_target = conjugate_exponent(config.p)
    d_scale = float(np.max(np.abs(d))) if len(d) else 0.0
    tol = config.residual_tol * max(1.0, d_scale)

    if d_scale <= tol:
        # The zero network already satisfies the residual criterion exactly.
        alpha = np.zeros(len(basis))
        report = SolveReport(
            p=config.p, q=q_target, q_path=[q_target], stage_iterations=[0],
            final_residual=d_scale, final_objective=0.0, norm=0.0,
            converged=True, objective_trace=[[0.0]])
        return alpha, report

    alpha = solve_p2(basis, d) if alpha0 is None else np.asarray(alpha0, dtype=float).copy()
    path = continuation_path(q_target, config.continuation_ratio) if use_continuation \
        else [q_target]

    stage_iterations: list[int] = []
    traces: list[list[float]] = []
    res = math.inf
    for q in path:
        alpha, iters, trace, res, ok = _newton_stage(alpha, basis, d, q, config, tol)
        stage_iterations.append(iters)
        traces.append(trace)
        if not ok:
            report = SolveReport(
                p=config.p, q=q_target, q_path=path, stage_iterations=stage_iterations,
                final_residual=res, final_objective=trace[-1],
                norm=q_energy(alpha, basis, q_target) ** (1.0 / config.p),
                converged=False, objective_trace=traces)
            raise NoConvergenceError(
                f"no convergence at q={q}: residual {res:.3e} > tol {tol:.3e}",
                alpha=alpha, report=report)

    report = SolveReport(
        p=config.p, q=q_target, q_path=path, stage_iterations=stage_iterations,
        final_residual=res, final_objective=traces[-1][-1],
        norm=q_energy(alpha, basis, q_target) ** (1.0 / config.p),
        converged=True, objective_trace=traces)
    return alpha, report
