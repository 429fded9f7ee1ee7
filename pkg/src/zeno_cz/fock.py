"""Two-mode Fock states truncated at two photons and the channels acting on them.

The basis is ``|00>, |01>, |10>, |11>, |02>, |20>`` where ``|ij>`` has ``i``
photons in the first mode and ``j`` in the second.  Probability that leaves
the basis through absorption or a vacuum-conditioned distiller is collected
in a single scalar, ``lost``; nothing ever flows back out of it.

Beam splitter
-------------
The mode matrix is ``exp(i*delta) * [[cos t, x], [x, cos t]]`` with
``x = +/- i sin t``.  Transforming creation operators gives, per basis ket::

    |01> -> e (c|01> + x|10>)
    |10> -> e (x|01> + c|10>)
    |11> -> e^2 ((c^2 + x^2)|11> + sqrt(2) c x (|02> + |20>))
    |02> -> e^2 (sqrt(2) c x |11> + c^2 |02> + x^2 |20>)
    |20> -> e^2 (sqrt(2) c x |11> + x^2 |02> + c^2 |20>)

so ``c^2 + x^2 = cos 2t`` and ``sqrt(2) c x = +/- i sin(2t) / sqrt(2)``.

Absorber pair
-------------
Each mode passes an absorber with single-photon intensity transmission
``gamma1`` and two-photon intensity transmission ``gamma2``.  Per-mode
amplitude factors are ``t(0) = 1``, ``t(1) = sqrt(gamma1)`` and
``t(2) = gamma1 * sqrt(gamma2)``.  Then ``|11>`` picks up
``t(1)^2 = gamma1`` and ``|02>`` picks up ``t(0) t(2) = gamma1 sqrt(gamma2)``,
which are exactly the coefficients of one lossy beam splitter + absorber
unit.  No other monomial assignment reproduces both rows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

__all__ = [
    "BASIS",
    "Sign",
    "Mode",
    "TwoModeState",
    "BeamSplitterParams",
    "AbsorberParams",
    "apply_beamsplitter",
    "apply_absorber_pair",
    "apply_rail_attenuator",
    "swap_modes",
    "apply_photon_number_phase",
]

SQRT2 = math.sqrt(2.0)

# (first-mode photons, second-mode photons) for each amplitude field
BASIS = {
    "amp00": (0, 0),
    "amp01": (0, 1),
    "amp10": (1, 0),
    "amp11": (1, 1),
    "amp02": (0, 2),
    "amp20": (2, 0),
}


class Sign(enum.Enum):
    """Choice of ``+i`` or ``-i`` on the off-diagonal of the beam splitter."""

    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, value: "Sign | str") -> "Sign":
        if isinstance(value, Sign):
            return value
        try:
            return cls[str(value).upper()]
        except KeyError:
            raise ValueError(f"sign must be 'plus' or 'minus', got {value!r}") from None


class Mode(enum.Enum):
    FIRST = 0
    SECOND = 1


@dataclass(frozen=True, slots=True)
class TwoModeState:
    """Pure amplitudes over the truncated basis plus an absorbed-probability sink."""

    amp00: complex = 0j
    amp01: complex = 0j
    amp10: complex = 0j
    amp11: complex = 0j
    amp02: complex = 0j
    amp20: complex = 0j
    lost: float = 0.0

    @classmethod
    def basis(cls, label: str) -> "TwoModeState":
        """Basis ket from a label such as ``"11"`` or ``"02"``."""
        field = "amp" + label
        if field not in BASIS:
            raise ValueError(f"unknown basis label {label!r}")
        return cls(**{field: 1.0 + 0j})

    @classmethod
    def from_amplitudes(cls, amps, lost: float = 0.0) -> "TwoModeState":
        """Build from six amplitudes in ``BASIS`` order."""
        amps = [complex(a) for a in amps]
        if len(amps) != 6:
            raise ValueError("expected 6 amplitudes")
        return cls(*amps, lost=float(lost))

    def amplitudes(self) -> tuple[complex, ...]:
        return (self.amp00, self.amp01, self.amp10, self.amp11, self.amp02, self.amp20)

    def norm2(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes())

    def computational_norm2(self) -> float:
        return (
            abs(self.amp00) ** 2
            + abs(self.amp01) ** 2
            + abs(self.amp10) ** 2
            + abs(self.amp11) ** 2
        )

    def bunched_norm2(self) -> float:
        return abs(self.amp02) ** 2 + abs(self.amp20) ** 2

    def total_probability(self) -> float:
        """``norm2 + lost``; equals one for any state evolved from a normalized input."""
        return self.norm2() + self.lost


@dataclass(frozen=True, slots=True)
class BeamSplitterParams:
    theta: float
    delta: float = 0.0
    sign: Sign = Sign.PLUS

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        object.__setattr__(self, "sign", Sign.parse(self.sign))


@dataclass(frozen=True, slots=True)
class AbsorberParams:
    """Intensity transmissions of one absorber; ``gamma2 > gamma1`` is allowed."""

    gamma1: float
    gamma2: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def apply_beamsplitter(state: TwoModeState, bs: BeamSplitterParams) -> TwoModeState:
    """Number-conserving unitary induced by the symmetric 2x2 mode matrix.

    Coefficients are applied as identity plus a small deviation: for the tiny
    angles of a long cascade ``cos t`` rounds with a fixed bias, which would
    otherwise leak ~eps of norm per unit, coherently over thousands of units.
    """
    sin_half = math.sin(bs.theta / 2)
    v = 2 * sin_half * sin_half  # 1 - cos t
    s = math.sin(bs.theta)
    x = bs.sign.value * 1j * s
    sin_half_d = math.sin(bs.delta / 2)
    u = complex(-2 * sin_half_d * sin_half_d, math.sin(bs.delta))  # e - 1
    u2 = u * (2 + u)  # e^2 - 1
    dcc = -v * (2 - v)  # c^2 - 1
    d11 = dcc - s * s  # c^2 + x^2 - 1
    xx = x * x
    cx = SQRT2 * (1 - v) * x

    a01, a10 = state.amp01, state.amp10
    a11, a02, a20 = state.amp11, state.amp02, state.amp20
    b01 = a01 - v * a01 + x * a10
    b10 = a10 - v * a10 + x * a01
    b11 = a11 + d11 * a11 + cx * (a02 + a20)
    b02 = a02 + dcc * a02 + cx * a11 + xx * a20
    b20 = a20 + dcc * a20 + cx * a11 + xx * a02
    return TwoModeState(
        amp00=state.amp00,
        amp01=b01 + u * b01,
        amp10=b10 + u * b10,
        amp11=b11 + u2 * b11,
        amp02=b02 + u2 * b02,
        amp20=b20 + u2 * b20,
        lost=state.lost,
    )


def _scale(state: TwoModeState, factors: tuple[float, ...]) -> TwoModeState:
    amps = state.amplitudes()
    new = tuple(a * f for a, f in zip(amps, factors))
    removed = sum(abs(a) ** 2 * (1.0 - f * f) for a, f in zip(amps, factors))
    return TwoModeState(*new, lost=state.lost + removed)


def apply_absorber_pair(state: TwoModeState, a: AbsorberParams) -> TwoModeState:
    """Identical absorber on each mode; the removed weight goes to ``lost``."""
    t1 = math.sqrt(a.gamma1)
    t2 = a.gamma1 * math.sqrt(a.gamma2)
    t11 = t1 * t1
    return _scale(state, (1.0, t1, t1, t11, t2, t2))


def apply_rail_attenuator(state: TwoModeState, mode: Mode, t: float) -> TwoModeState:
    """Beam splitter of amplitude transmission ``t`` on one mode, heralded on a vacuum click.

    Each amplitude is multiplied by ``t`` per photon in ``mode``.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    mode = Mode(mode) if not isinstance(mode, Mode) else mode
    idx = mode.value
    factors = tuple(t ** BASIS[name][idx] for name in BASIS)
    return _scale(state, factors)


def swap_modes(state: TwoModeState) -> TwoModeState:
    """Exchange the two modes (crossing the fibres)."""
    return TwoModeState(
        amp00=state.amp00,
        amp01=state.amp10,
        amp10=state.amp01,
        amp11=state.amp11,
        amp02=state.amp20,
        amp20=state.amp02,
        lost=state.lost,
    )


def apply_photon_number_phase(state: TwoModeState, phase: complex) -> TwoModeState:
    """Multiply every amplitude by ``phase ** (total photon number)``.

    This is an equal phase shifter on both modes; ``phase`` must have unit modulus.
    """
    p2 = phase * phase
    return replace(
        state,
        amp01=state.amp01 * phase,
        amp10=state.amp10 * phase,
        amp11=state.amp11 * p2,
        amp02=state.amp02 * p2,
        amp20=state.amp20 * p2,
    )
