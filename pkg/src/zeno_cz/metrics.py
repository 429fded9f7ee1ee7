"""Heralded fidelity, unheralded fidelity and success probability of the Zeno CZ gate."""

from __future__ import annotations

from dataclasses import dataclass

from .cascade import GateConfig, run_cascade, tau_closed_form
from .fock import TwoModeState

__all__ = [
    "ComputationalAmplitudes",
    "GateReport",
    "EQUAL_SUPERPOSITION",
    "cz_target",
    "heralded_fidelity",
    "ideal_gate_report",
    "report_from_output",
    "lossy_gate_report",
    "lossy_cz_output",
    "brute_force_report",
]


@dataclass(frozen=True)
class ComputationalAmplitudes:
    """Amplitudes on ``|00>, |01>, |10>, |11>``; need not be normalized when used as output."""

    c00: complex = 0j
    c01: complex = 0j
    c10: complex = 0j
    c11: complex = 0j

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.c00, self.c01, self.c10, self.c11)

    def norm2(self) -> float:
        return sum(abs(c) ** 2 for c in self.as_tuple())

    def scaled(self, factors) -> "ComputationalAmplitudes":
        return ComputationalAmplitudes(*(c * f for c, f in zip(self.as_tuple(), factors)))

    def inner(self, other: "ComputationalAmplitudes") -> complex:
        """``<self|other>``."""
        return sum(a.conjugate() * b for a, b in zip(self.as_tuple(), other.as_tuple()))

    def to_state(self) -> TwoModeState:
        """Single-rail embedding: logical value of each qubit = photon number in its mode."""
        c00, c01, c10, c11 = (complex(c) for c in self.as_tuple())
        return TwoModeState(amp00=c00, amp01=c01, amp10=c10, amp11=c11)

    @classmethod
    def from_state(cls, state: TwoModeState) -> "ComputationalAmplitudes":
        """Project onto the computational subspace, dropping bunched and lost weight."""
        return cls(state.amp00, state.amp01, state.amp10, state.amp11)


EQUAL_SUPERPOSITION = ComputationalAmplitudes(0.5, 0.5, 0.5, 0.5)


def cz_target(state: ComputationalAmplitudes = EQUAL_SUPERPOSITION) -> ComputationalAmplitudes:
    return state.scaled((1, 1, 1, -1))


@dataclass(frozen=True)
class GateReport:
    tau: float
    f_heralded: float
    f_unheralded: float
    p_success: float


def heralded_fidelity(output: ComputationalAmplitudes, target: ComputationalAmplitudes) -> float:
    """``|<target|output>|^2 / <output|output>``."""
    norm2 = output.norm2()
    if norm2 == 0.0:
        raise ZeroDivisionError("output state has zero norm")
    return abs(target.inner(output)) ** 2 / norm2


def ideal_gate_report(tau: float) -> GateReport:
    """Figures of merit for the equal superposition with perfect absorbers."""
    if not -1.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [-1, 1], got {tau}")
    p = (3 + tau * tau) / 4
    f = (3 + tau) ** 2 / (4 * (3 + tau * tau))
    return GateReport(tau=tau, f_heralded=f, f_unheralded=f * p, p_success=p)


def report_from_output(
    tau: float,
    output: ComputationalAmplitudes,
    target: ComputationalAmplitudes,
) -> GateReport:
    # only computational weight counts as success; bunching is a heralded failure
    p = output.norm2()
    f = heralded_fidelity(output, target)
    return GateReport(tau=tau, f_heralded=f, f_unheralded=f * p, p_success=p)


def lossy_cz_output(
    config: GateConfig,
    state: ComputationalAmplitudes = EQUAL_SUPERPOSITION,
    tau: float | None = None,
) -> ComputationalAmplitudes:
    """Computational part of the gate output: ``(c00, g c01, g c10, -gamma1^n tau c11)``."""
    if tau is None:
        tau = tau_closed_form(config.n, config.gamma2)
    g1n = config.gamma1_pow_n
    half = g1n ** 0.5
    return state.scaled((1.0, half, half, -g1n * tau))


def lossy_gate_report(
    config: GateConfig,
    state: ComputationalAmplitudes = EQUAL_SUPERPOSITION,
) -> GateReport:
    """Closed-form report; the signed tau is used as is."""
    tau = tau_closed_form(config.n, config.gamma2)
    output = lossy_cz_output(config, state, tau)
    return report_from_output(tau, output, cz_target(state))


def brute_force_report(
    config: GateConfig,
    state: ComputationalAmplitudes = EQUAL_SUPERPOSITION,
) -> GateReport:
    """Same contract as :func:`lossy_gate_report`, computed by running the full cascade."""
    out = run_cascade(config, state.to_state())
    output = ComputationalAmplitudes.from_state(out.final)
    return report_from_output(out.tau_numeric, output, cz_target(state))
