"""The Zeno interaction region: ``n`` weak beam splitters, each followed by an absorber pair.

The ``|11>`` amplitude is tracked three ways:

* :func:`run_cascade` evolves the full six-amplitude state unit by unit;
* :func:`tau_matrix_oracle` raises the 2x2 transfer matrix on
  ``span{|11>, (|02>+|20>)/sqrt2}`` to the ``n``-th power;
* :func:`tau_closed_form` uses the eigen-decomposition of that matrix in
  closed form.

All three must agree; the closed form is the fast path used by sweeps.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateClosedFormError
from .fock import (
    AbsorberParams,
    BeamSplitterParams,
    Sign,
    TwoModeState,
    apply_absorber_pair,
    apply_beamsplitter,
    apply_photon_number_phase,
    swap_modes,
)

__all__ = [
    "DEFAULT_N",
    "GateConfig",
    "CascadeOutput",
    "run_cascade",
    "tau_ideal",
    "tau_closed_form",
    "tau_matrix_oracle",
    "tau",
    "converged_n",
]

log = logging.getLogger(__name__)

DEFAULT_N = 10_000

_IMAG_TOL = 1e-10
_DEGENERATE_D = 1e-14


def _check_n(n: int) -> None:
    if int(n) != n or n < 3:
        raise ValueError(f"n must be an integer >= 3 (cos 2theta > 0), got {n}")


@dataclass(frozen=True)
class GateConfig:
    """Cascade parameters.

    ``lam = inf`` is the ideal two-photon absorber (``gamma2 = 0``) and
    ``kappa = inf`` removes single-photon loss (``gamma1 = 1``); use
    :meth:`ideal` for the combination of both.
    """

    n: int = DEFAULT_N
    lam: float = 0.0
    kappa: float = math.inf
    k: int = 0
    sign: Sign = Sign.PLUS

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, "n", int(self.n))
        if not self.lam >= 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if int(self.k) != self.k:
            raise ValueError(f"k must be an integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "sign", Sign.parse(self.sign))

    @classmethod
    def ideal(cls, n: int, k: int = 0, sign: Sign = Sign.PLUS) -> "GateConfig":
        """Perfect two-photon absorbers with no single-photon loss."""
        return cls(n=n, lam=math.inf, kappa=math.inf, k=k, sign=sign)

    @property
    def theta(self) -> float:
        return math.pi / (2 * self.n)

    @property
    def delta(self) -> float:
        return math.pi / (2 * self.n) + self.k * math.pi / self.n

    @property
    def gamma1(self) -> float:
        if math.isinf(self.kappa):
            return 1.0
        return math.exp(-self.lam / (self.n * self.kappa))

    @property
    def gamma2(self) -> float:
        if math.isinf(self.lam):
            return 0.0
        return math.exp(-self.lam / self.n)

    @property
    def gamma1_pow_n(self) -> float:
        """Single-photon survival probability over the whole region, ``exp(-lam/kappa)``."""
        if math.isinf(self.kappa):
            return 1.0
        return math.exp(-self.lam / self.kappa)

    def beamsplitter(self) -> BeamSplitterParams:
        return BeamSplitterParams(self.theta, self.delta, self.sign)

    def absorber(self) -> AbsorberParams:
        return AbsorberParams(self.gamma1, self.gamma2)


@dataclass(frozen=True)
class CascadeOutput:
    final: TwoModeState
    tau_numeric: float
    gamma1_pow_half_n: float


def _output_phase(config: GateConfig) -> complex:
    """Per-photon phase that makes ``|01> -> |01>`` real positive after the re-swap.

    The single-photon block after ``n`` units is ``e^{i n delta} (+/- i) X``; with
    ``n delta = pi/2 + k pi`` this equals ``-sign * (-1)^k``, so the correction
    is a real sign.  Two-photon amplitudes see its square and are unaffected.
    """
    n = config.n
    raw = cmath.exp(1j * n * config.delta) * (config.sign.value * 1j)
    return raw.conjugate() / abs(raw)


def run_cascade(config: GateConfig, state: TwoModeState) -> CascadeOutput:
    """Evolve ``state`` through all ``n`` units, re-swap the fibres and fix the output phase."""
    if abs(state.total_probability() - 1.0) > 1e-9:
        raise ValueError("input state must be normalized (norm2 + lost = 1)")
    c11 = state.amp11
    bs = config.beamsplitter()
    ab = config.absorber()
    for _ in range(config.n):
        state = apply_absorber_pair(apply_beamsplitter(state, bs), ab)
    state = swap_modes(state)
    state = apply_photon_number_phase(state, _output_phase(config))

    g1n = config.gamma1_pow_n
    # |11> only mixes with |02>, |20>; tau is read relative to the input |11> weight
    if g1n > 0 and c11 != 0:
        tau_numeric = (-state.amp11 / (g1n * c11)).real
    else:
        tau_numeric = math.nan
    return CascadeOutput(
        final=state,
        tau_numeric=tau_numeric,
        gamma1_pow_half_n=math.sqrt(g1n),
    )


def _pow_near_one(m: complex, n: int) -> complex:
    """``(1 + m) ** n`` without the ``n * eps`` blow-up of rounding ``1 + m`` first."""
    z = 1 + m
    if abs(z) < 0.5:
        return z**n
    # complex log1p: log|1+m| = 0.5 * log1p(2 Re m + |m|^2)
    log_mod = 0.5 * math.log1p(2 * m.real + m.real * m.real + m.imag * m.imag)
    arg = math.atan2(m.imag, 1 + m.real)
    return cmath.exp(n * complex(log_mod, arg))


def tau_ideal(n: int) -> float:
    """``cos(pi/n) ** n``: the |11> skew for perfect two-photon absorbers."""
    _check_n(n)
    half = math.sin(math.pi / (2 * n))
    return math.exp(n * math.log1p(-2 * half * half))


def tau_closed_form(n: int, gamma2: float) -> float:
    """Closed-form |11> coefficient after ``n`` lossy units (``gamma1**n`` divided out).

    With ``c = cos(pi/n)`` and ``r = sqrt(gamma2)``::

        d = sqrt((1 + cos(2pi/n))(1 + gamma2) + 2 r (cos(2pi/n) - 3))
        g = c (r + 1),  h = 2 c (r - 1)
        tau = 2^(-3/2 - n) / d * ((g + d/sqrt2)^n (sqrt2 d - h) + (g - d/sqrt2)^n (sqrt2 d + h))

    ``d`` turns imaginary as ``gamma2 -> 1`` so everything runs in complex
    arithmetic.  The bases ``mu = (g +/- d/sqrt2) / 2`` sit next to 1 for large
    ``n``, so they are carried as ``mu - 1`` in cancellation-free form and
    raised via ``exp(n log1p(mu - 1))``; writing ``D = d/sqrt2``::

        D^2      = (1 - r - s(1 + r)) (1 - r + s(1 + r)),    s = sin(pi/n)
        mu+ - 1  = -2 (1 + r)(1 - c) / (D + 2 - g)
        mu- - 1  = -(D + 2 - g) / 2

    Raises
    ------
    DegenerateClosedFormError
        If ``|d| < 1e-14`` (confluent eigenvalues).
    ArithmeticError
        If the result keeps an imaginary part above ``1e-10``.
    """
    _check_n(n)
    if not 0.0 <= gamma2 <= 1.0:
        raise ValueError(f"gamma2 must lie in [0, 1], got {gamma2}")
    s = math.sin(math.pi / n)
    half = math.sin(math.pi / (2 * n))
    one_minus_c = 2 * half * half
    c = 1 - one_minus_c
    r = math.sqrt(gamma2)
    one_minus_r = (1 - gamma2) / (1 + r)

    D = cmath.sqrt((one_minus_r - s * (1 + r)) * (one_minus_r + s * (1 + r)))
    d = math.sqrt(2.0) * D
    if abs(d) < _DEGENERATE_D:
        raise DegenerateClosedFormError(f"|d| = {abs(d):.3g} at n={n}, gamma2={gamma2}")
    two_minus_g = one_minus_r + one_minus_c * (1 + r)
    h = -2 * c * one_minus_r

    S = D + two_minus_g
    hi = _pow_near_one(-2 * (1 + r) * one_minus_c / S, n)
    lo = _pow_near_one(-S / 2, n)
    value = ((2 * D - h) * hi + (2 * D + h) * lo) / (4 * D)
    if abs(value.imag) >= _IMAG_TOL:
        raise ArithmeticError(f"closed-form tau has imaginary part {value.imag:.3g}")
    return value.real


def transfer_matrix(n: int, gamma2: float, sign: Sign = Sign.PLUS) -> np.ndarray:
    """One unit on ``(|11>, (|02>+|20>)/sqrt2)``, global phase and ``gamma1`` dropped."""
    t = math.pi / n
    x = Sign.parse(sign).value * 1j * math.sin(t)
    r = math.sqrt(gamma2)
    return np.array([[math.cos(t), x], [r * x, r * math.cos(t)]], dtype=complex)


def tau_matrix_oracle(n: int, gamma2: float, sign: Sign = Sign.PLUS) -> float:
    """``(M^n)[0, 0]`` for the per-unit transfer matrix ``M``; independent check of the closed form."""
    _check_n(n)
    m = np.linalg.matrix_power(transfer_matrix(n, gamma2, sign), n)
    return float(m[0, 0].real)


def tau(n: int, gamma2: float) -> float:
    """Closed-form tau, falling back to the matrix power at a degenerate point."""
    try:
        return tau_closed_form(n, gamma2)
    except DegenerateClosedFormError:
        log.debug("closed form degenerate at n=%d gamma2=%r; using matrix power", n, gamma2)
        return tau_matrix_oracle(n, gamma2)


def converged_n(lam: float, n: int = DEFAULT_N, tol: float = 1e-9, max_n: int = 2**24) -> int:
    """Double ``n`` until ``|tau(2n) - tau(n)| < tol`` at fixed total absorption ``lam``.

    Returns the first ``n`` that passes.  Raises ``RuntimeError`` past ``max_n``.
    """
    _check_n(n)
    current = tau(n, math.exp(-lam / n))
    while n <= max_n:
        doubled = tau(2 * n, math.exp(-lam / (2 * n)))
        if abs(doubled - current) < tol:
            return n
        n, current = 2 * n, doubled
    raise RuntimeError(f"tau not converged to {tol} below n={max_n} at lambda={lam}")
