"""Distillers that turn the skewed Zeno CZ output into an exact CZ at reduced success.

Qubits are dual-rail; only the logical-1 rails go through the Zeno medium, so
the computational amplitudes live on a :class:`~zeno_cz.fock.TwoModeState`
whose modes are those two rails (photon number = logical value).  A distiller
on a logical-1 rail is :func:`~zeno_cz.fock.apply_rail_attenuator`; one on a
logical-0 rail scales the components where that qubit reads 0.

Two-photon distillation, per logical ``(c, t)`` with ``s = sqrt(gamma1')``::

    flip control, tau-gate   s^((1-c) + t) * tau^((1-c) t)
    control distiller        s^c                 (original logical 1)
    target distiller         (s tau)^(1 - t)     (logical 0)
    -----------------------------------------------------------
    product                  s^2 * tau^(1 - c t) = gamma1' * tau^(1 - c t)

which is ``(gamma1' tau, gamma1' tau, gamma1' tau, gamma1')``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

from .cascade import DEFAULT_N, GateConfig, run_cascade, tau_closed_form
from .errors import DomainError
from .fock import (
    AbsorberParams,
    BeamSplitterParams,
    Mode,
    Sign,
    TwoModeState,
    apply_absorber_pair,
    apply_beamsplitter,
    apply_rail_attenuator,
)
from .metrics import (
    EQUAL_SUPERPOSITION,
    ComputationalAmplitudes,
    lossy_cz_output,
)
from .optimize import OptimizationResult, maximize_scalar

__all__ = [
    "DistillationSpec",
    "single_photon_distill",
    "tau_gate",
    "two_photon_distill",
    "two_photon_distill_circuit",
    "distilled_cz_success",
    "distilled_cz_circuit",
    "optimize_distilled_cz",
]


@dataclass(frozen=True)
class DistillationSpec:
    gamma1_prime: float
    gamma2_prime: float
    control_distiller_t: float
    target_distiller_t: float

    def __post_init__(self):
        for name in ("gamma1_prime", "gamma2_prime", "control_distiller_t", "target_distiller_t"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise DomainError(f"{name} must lie in (0, 1], got {value}")

    @classmethod
    def from_tau(cls, tau: float, kappa: float) -> "DistillationSpec":
        """Tau-gate tuned so that ``gamma1'^kappa = gamma2' = tau``."""
        if not 0.0 < tau <= 1.0:
            raise DomainError(f"distillation needs 0 < tau <= 1, got tau={tau}")
        if not kappa > 0:
            raise ValueError(f"kappa must be > 0, got {kappa}")
        g1p = tau ** (1.0 / kappa)
        s = math.sqrt(g1p)
        return cls(gamma1_prime=g1p, gamma2_prime=tau, control_distiller_t=s, target_distiller_t=s * tau)

    @property
    def tau(self) -> float:
        return self.gamma2_prime


def _attenuate_logical(state: TwoModeState, mode: Mode, level: int, t: float) -> TwoModeState:
    """Vacuum-heralded distiller of amplitude transmission ``t`` on one rail of a dual-rail qubit."""
    if level == 1:
        return apply_rail_attenuator(state, mode, t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    # the logical-0 rail holds a photon exactly when the logical-1 rail is empty
    if mode is Mode.FIRST:
        a00, a01 = state.amp00 * t, state.amp01 * t
        removed = (abs(state.amp00) ** 2 + abs(state.amp01) ** 2) * (1 - t * t)
        return replace(state, amp00=a00, amp01=a01, lost=state.lost + removed)
    a00, a10 = state.amp00 * t, state.amp10 * t
    removed = (abs(state.amp00) ** 2 + abs(state.amp10) ** 2) * (1 - t * t)
    return replace(state, amp00=a00, amp10=a10, lost=state.lost + removed)


def _flip_control(state: TwoModeState) -> TwoModeState:
    """Lossless rail swap on the control (first) qubit.

    Bunched components have no dual-rail reading; they are heralded failures
    and are moved to ``lost`` here.
    """
    return TwoModeState(
        amp00=state.amp10,
        amp01=state.amp11,
        amp10=state.amp00,
        amp11=state.amp01,
        lost=state.lost + state.bunched_norm2(),
    )


def single_photon_distill(output_of_cz: ComputationalAmplitudes, config: GateConfig) -> ComputationalAmplitudes:
    """Attenuate each qubit's logical-0 rail by ``gamma1^(n/2)`` so every branch lost the same."""
    return ComputationalAmplitudes.from_state(_single_photon_distill_state(output_of_cz.to_state(), config))


def _single_photon_distill_state(state: TwoModeState, config: GateConfig) -> TwoModeState:
    t = math.sqrt(config.gamma1_pow_n)
    state = _attenuate_logical(state, Mode.FIRST, 0, t)
    return _attenuate_logical(state, Mode.SECOND, 0, t)


_HALF = BeamSplitterParams(theta=math.pi / 4, delta=0.0, sign=Sign.PLUS)
# for delta = 0 the opposite sign convention is the inverse (adjoint) splitter
_HALF_INVERSE = BeamSplitterParams(theta=math.pi / 4, delta=0.0, sign=Sign.MINUS)


def _tau_gate_raw(state: TwoModeState, gamma1: float, two_photon_amp: float) -> TwoModeState:
    state = apply_beamsplitter(state, _HALF)
    # gamma2' is the two-photon *amplitude* factor of the tau-gate, so the
    # absorber's two-photon intensity transmission is gamma2'^2
    state = apply_absorber_pair(state, AbsorberParams(gamma1, two_photon_amp**2))
    return apply_beamsplitter(state, _HALF_INVERSE)


@lru_cache(maxsize=1)
def _tau_gate_phases() -> tuple[complex, complex]:
    """Phase-shifter settings for the one- and two-photon sectors of the lossless circuit."""
    one = _tau_gate_raw(TwoModeState.basis("01"), 1.0, 1.0).amp01
    two = _tau_gate_raw(TwoModeState.basis("11"), 1.0, 1.0).amp11
    return (abs(one) / one, abs(two) / two)


def tau_gate(state: TwoModeState, spec: DistillationSpec) -> TwoModeState:
    """Two 50-50 splitters around an absorber pair, then phase correction.

    On computational states this is ``diag(1, sqrt(g1'), sqrt(g1'), g1' g2')``.
    """
    out = _tau_gate_raw(state, spec.gamma1_prime, spec.gamma2_prime)
    p1, p2 = _tau_gate_phases()
    return replace(
        out,
        amp01=out.amp01 * p1,
        amp10=out.amp10 * p1,
        amp11=out.amp11 * p2,
        amp02=out.amp02 * p2,
        amp20=out.amp20 * p2,
    )


def two_photon_distill_circuit(state: TwoModeState, spec: DistillationSpec) -> TwoModeState:
    """Bit flip, tau-gate, control and target distillers, bit flip (loss tracked)."""
    state = _flip_control(state)
    state = tau_gate(state, spec)
    # flipped frame: the original logical-1 control photon now sits on the logical-0 rail
    state = _attenuate_logical(state, Mode.FIRST, 0, spec.control_distiller_t)
    state = _attenuate_logical(state, Mode.SECOND, 0, spec.target_distiller_t)
    return _flip_control(state)


def two_photon_distill(state: ComputationalAmplitudes, spec: DistillationSpec) -> ComputationalAmplitudes:
    """Net map ``(g1' tau, g1' tau, g1' tau, g1')`` on ``(c00, c01, c10, c11)``."""
    g, t = spec.gamma1_prime, spec.tau
    return state.scaled((g * t, g * t, g * t, g))


def distilled_cz_success(lam: float, kappa: float, n: int = DEFAULT_N) -> float:
    """``exp(-2 lam / kappa) * tau^(2 + 2/kappa)`` for the fully distilled CZ."""
    tau = tau_closed_form(n, math.exp(-lam / n))
    if tau <= 0:
        raise DomainError(f"tau = {tau:.6g} <= 0 at lambda={lam}; distillation is undefined")
    return math.exp(-2 * lam / kappa) * tau ** (2 + 2 / kappa)


def distilled_cz_circuit(
    config: GateConfig,
    state: ComputationalAmplitudes = EQUAL_SUPERPOSITION,
    simulate: bool = True,
) -> tuple[TwoModeState, DistillationSpec]:
    """Gate, single-photon distillers and two-photon distillation, stage by stage.

    With ``simulate=True`` the gate is the full cascade and the tau-gate is
    tuned from the simulated tau, so nothing depends on the closed form.
    """
    if simulate:
        out = run_cascade(config, state.to_state())
        gated = out.final
        tau = out.tau_numeric
        # bunched weight is a heralded failure; fold it into the loss sink
        gated = TwoModeState(
            gated.amp00, gated.amp01, gated.amp10, gated.amp11,
            lost=gated.lost + gated.bunched_norm2(),
        )
    else:
        tau = tau_closed_form(config.n, config.gamma2)
        computational = lossy_cz_output(config, state, tau)
        gated = computational.to_state()
        gated = replace(gated, lost=1.0 - gated.norm2())
    spec = DistillationSpec.from_tau(tau, config.kappa)
    gated = _single_photon_distill_state(gated, config)
    return two_photon_distill_circuit(gated, spec), spec


DISTILLED_BRACKET = (1e-3, 1e4)


def optimize_distilled_cz(kappa: float, n: int = DEFAULT_N, tol: float = 1e-6) -> OptimizationResult:
    """Lambda maximizing the distilled CZ success; tau <= 0 scores zero."""

    def objective(lam: float) -> float:
        try:
            return distilled_cz_success(lam, kappa, n)
        except DomainError:
            return 0.0

    return maximize_scalar(objective, *DISTILLED_BRACKET, tol=tol)
