"""Zeno fusion gate with partially offline distillation, compared against linear optics."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cascade import DEFAULT_N, tau_closed_form
from .distillation import distilled_cz_success
from .errors import BracketError, DomainError
from .fock import TwoModeState
from .optimize import OptimizationResult, maximize_scalar

__all__ = [
    "FUSION_BRACKET",
    "BREAK_EVEN_SUCCESS",
    "FusionPoint",
    "HeraldedOutcome",
    "fusion_success",
    "optimal_fusion_point",
    "linear_optics_loss",
    "zeno_loss",
    "break_even_point",
    "break_even_kappa",
    "classify_heralded_outcome",
]

# optimum reaches ~1.4e3 at kappa = 1e5, the top of the figure range
FUSION_BRACKET = (1e-3, 1e4)
KAPPA_BRACKET = (1e2, 1e5)

# P_z = P_l  <=>  (1 - P_s)^(N/2) = 2^-N  <=>  P_s = 3/4
BREAK_EVEN_SUCCESS = 0.75


@dataclass(frozen=True)
class FusionPoint:
    kappa: float
    lambda_opt: float
    p_success: float


@dataclass(frozen=True)
class HeraldedOutcome:
    success: float
    heralded_loss: float
    heralded_bunching: float


def fusion_success(kappa: float, lam: float, n: int = DEFAULT_N) -> float:
    """Fusion success with the resource qubit distilled offline.

    ``2 a^2 / (1 + a)`` with ``a = exp(-lam/kappa) tau^(1 + 1/kappa)``; the
    numerator is twice the fully distilled CZ success.
    """
    tau = tau_closed_form(n, math.exp(-lam / n))
    if tau <= 0:
        raise DomainError(f"tau = {tau:.6g} <= 0 at lambda={lam}; distillation is undefined")
    numerator = 2 * distilled_cz_success(lam, kappa, n)
    a = math.exp(-lam / kappa) * tau ** (1 + 1 / kappa)
    return numerator / (1 + a)


def _fusion_objective(kappa: float, n: int):
    def objective(lam: float) -> float:
        try:
            return fusion_success(kappa, lam, n)
        except DomainError:
            # tau <= 0: no distilled success is possible
            return 0.0

    return objective


def optimize_fusion(
    kappa: float,
    n: int = DEFAULT_N,
    tol: float = 1e-6,
    bracket: tuple[float, float] = FUSION_BRACKET,
) -> OptimizationResult:
    return maximize_scalar(_fusion_objective(kappa, n), *bracket, tol=tol)


def optimal_fusion_point(kappa: float, n: int = DEFAULT_N, tol: float = 1e-6) -> FusionPoint:
    result = optimize_fusion(kappa, n, tol)
    return FusionPoint(kappa=kappa, lambda_opt=result.arg_max, p_success=result.max_value)


def linear_optics_loss(N: int) -> float:
    """Probability that linear-optics fusion destroys ``N`` qubits before succeeding."""
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    return 2.0 ** -int(N)


def zeno_loss(p_success: float, N: int) -> float:
    """``(1 - p_success)^(N/2)``: each Zeno failure costs two qubits."""
    if int(N) != N or N < 1 or N % 2:
        raise ValueError(f"N must be a positive even integer, got {N}")
    if not 0.0 <= p_success <= 1.0:
        raise ValueError(f"p_success must lie in [0, 1], got {p_success}")
    return (1.0 - p_success) ** (int(N) // 2)


def break_even_point(
    n: int = DEFAULT_N,
    tol: float = 1e-6,
    bracket: tuple[float, float] = KAPPA_BRACKET,
    max_iter: int = 200,
) -> FusionPoint:
    """Bisect (in log kappa) for the kappa where the optimized fusion success is 3/4."""
    if not tol > 0:
        raise ValueError("tol must be > 0")
    lo, hi = bracket
    p_lo = optimal_fusion_point(lo, n).p_success
    p_hi = optimal_fusion_point(hi, n).p_success
    if not p_lo < BREAK_EVEN_SUCCESS < p_hi:
        raise BracketError(
            f"optimized success {p_lo:.6g}..{p_hi:.6g} over kappa in [{lo}, {hi}] "
            f"does not enclose {BREAK_EVEN_SUCCESS}"
        )
    point = None
    for _ in range(max_iter):
        mid = math.sqrt(lo * hi)
        point = optimal_fusion_point(mid, n)
        if abs(point.p_success - BREAK_EVEN_SUCCESS) < tol or hi / lo - 1 < 1e-15:
            return point
        if point.p_success < BREAK_EVEN_SUCCESS:
            lo = mid
        else:
            hi = mid
    return point


def break_even_kappa(n: int = DEFAULT_N, tol: float = 1e-6) -> float:
    return break_even_point(n, tol).kappa


def classify_heralded_outcome(final: TwoModeState) -> HeraldedOutcome:
    """Split probability into success, heralded loss and heralded bunching."""
    return HeraldedOutcome(
        success=final.computational_norm2(),
        heralded_loss=final.lost,
        heralded_bunching=final.bunched_norm2(),
    )
