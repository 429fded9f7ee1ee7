"""Bounded 1-D maximization over the absorber strength lambda."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cascade import DEFAULT_N, GateConfig
from .errors import NonFiniteObjectiveError
from .metrics import GateReport, lossy_gate_report

__all__ = [
    "OptimizationResult",
    "maximize_scalar",
    "FREE_STANDING_BRACKET",
    "optimize_free_standing",
]

INV_PHI = (math.sqrt(5) - 1) / 2

GRID_POINTS = 64

# the free-standing optimum passes lambda = 1e3 once kappa exceeds ~2e5
FREE_STANDING_BRACKET = (1e-3, 1e6)


@dataclass(frozen=True)
class OptimizationResult:
    arg_max: float
    max_value: float
    evaluations: int
    converged: bool


def maximize_scalar(
    objective: Callable[[float], float],
    bracket_lo: float,
    bracket_hi: float,
    tol: float = 1e-8,
    grid_points: int = GRID_POINTS,
) -> OptimizationResult:
    """Coarse grid scan followed by golden-section refinement.

    The grid is log-spaced when ``bracket_lo > 0`` and linear otherwise.  The
    best grid point and its two neighbours bound the refinement, which stops
    once the bracket is narrower than ``tol``.  The result is the best point
    ever evaluated, so it can never be worse than any grid point.

    Raises
    ------
    NonFiniteObjectiveError
        If the objective returns NaN or infinity anywhere it is evaluated.
    """
    if not bracket_lo < bracket_hi:
        raise ValueError("bracket_lo must be < bracket_hi")
    if not tol > 0:
        raise ValueError("tol must be > 0")

    evaluations = 0
    best_x, best_f = math.nan, -math.inf

    def f(x: float) -> float:
        nonlocal evaluations, best_x, best_f
        value = float(objective(x))
        evaluations += 1
        if not math.isfinite(value):
            raise NonFiniteObjectiveError(f"objective({x!r}) = {value!r}")
        if value > best_f:
            best_x, best_f = x, value
        return value

    if bracket_lo > 0:
        grid = np.logspace(math.log10(bracket_lo), math.log10(bracket_hi), grid_points)
    else:
        grid = np.linspace(bracket_lo, bracket_hi, grid_points)
    grid[0], grid[-1] = bracket_lo, bracket_hi
    values = [f(float(x)) for x in grid]
    i = int(np.argmax(values))
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, grid_points - 1)])

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        if c >= d:
            # interval collapsed to floating-point resolution
            break

    return OptimizationResult(
        arg_max=best_x,
        max_value=best_f,
        evaluations=evaluations,
        converged=(b - a) <= tol,
    )


def free_standing_objective(kappa: float, n: int = DEFAULT_N) -> Callable[[float], float]:
    def objective(lam: float) -> float:
        return lossy_gate_report(GateConfig(n=n, lam=lam, kappa=kappa)).f_unheralded

    return objective


def optimize_free_standing(
    kappa: float,
    n: int = DEFAULT_N,
    tol: float = 1e-6,
    bracket: tuple[float, float] = FREE_STANDING_BRACKET,
) -> tuple[OptimizationResult, GateReport]:
    """Maximize the unheralded fidelity over lambda at fixed kappa."""
    result = maximize_scalar(free_standing_objective(kappa, n), *bracket, tol=tol)
    report = lossy_gate_report(GateConfig(n=n, lam=result.arg_max, kappa=kappa))
    return result, report
