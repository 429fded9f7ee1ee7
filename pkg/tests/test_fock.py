import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeno_cz.fock import (
    AbsorberParams,
    BeamSplitterParams,
    Mode,
    Sign,
    TwoModeState,
    apply_absorber_pair,
    apply_beamsplitter,
    apply_photon_number_phase,
    apply_rail_attenuator,
    swap_modes,
)

TOL = 1e-12


def amps(state):
    return np.array(state.amplitudes())


def random_state(rng, lost=0.0):
    v = rng.normal(size=6) + 1j * rng.normal(size=6)
    v *= math.sqrt(1 - lost) / np.linalg.norm(v)
    return TwoModeState.from_amplitudes(v, lost=lost)


def creation_operator_bs(theta, delta, sign):
    """Beam splitter in the truncated basis built from the 2x2 mode matrix.

    Each basis ket is a polynomial in a+ (first mode) and b+ (second mode);
    substituting the mode transformation and re-normalizing gives the image.
    Independent of the closed expressions in fock.py.
    """
    e = np.exp(1j * delta)
    x = sign * 1j * math.sin(theta)
    c = math.cos(theta)
    # a+ -> e (c a+ + x b+),  b+ -> e (x a+ + c b+)
    A = e * np.array([c, x])  # coefficients on (a+, b+)
    B = e * np.array([x, c])
    # polynomial coefficient dicts over monomials (p, q) = a+^p b+^q
    def mul(p1, p2):
        out = {}
        for (i1, j1), v1 in p1.items():
            for (i2, j2), v2 in p2.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + v1 * v2
        return out

    lin_a = {(1, 0): A[0], (0, 1): A[1]}
    lin_b = {(1, 0): B[0], (0, 1): B[1]}
    labels = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)]
    index = {lab: i for i, lab in enumerate(labels)}
    U = np.zeros((6, 6), dtype=complex)
    for col, (p, q) in enumerate(labels):
        poly = {(0, 0): 1.0}
        for _ in range(p):
            poly = mul(poly, lin_a)
        for _ in range(q):
            poly = mul(poly, lin_b)
        norm_in = math.sqrt(math.factorial(p) * math.factorial(q))
        for (i, j), v in poly.items():
            U[index[(i, j)], col] += v * math.sqrt(math.factorial(i) * math.factorial(j)) / norm_in
    return U


class TestBeamSplitter:
    def test_full_swap(self):
        out = apply_beamsplitter(TwoModeState.basis("01"), BeamSplitterParams(math.pi / 2, 0.0, Sign.PLUS))
        np.testing.assert_allclose(amps(out), [0, 0, 1j, 0, 0, 0], atol=TOL)

    def test_hong_ou_mandel(self):
        out = apply_beamsplitter(TwoModeState.basis("11"), BeamSplitterParams(math.pi / 4, 0.0, Sign.PLUS))
        h = 1j / math.sqrt(2)
        np.testing.assert_allclose(amps(out), [0, 0, 0, 0, h, h], atol=TOL)

    @pytest.mark.parametrize("theta,delta,sign", [(0.3, 1.1, Sign.PLUS), (1.2, -0.4, Sign.MINUS), (0.0, 2.0, Sign.PLUS)])
    def test_vacuum_invariant(self, theta, delta, sign):
        out = apply_beamsplitter(TwoModeState.basis("00"), BeamSplitterParams(theta, delta, sign))
        np.testing.assert_allclose(amps(out), [1, 0, 0, 0, 0, 0], atol=TOL)

    @pytest.mark.parametrize("theta,delta,sign", [(0.3, 1.1, 1), (1.2, -0.4, -1), (math.pi / 7, 0.0, 1)])
    def test_matches_creation_operator_oracle(self, theta, delta, sign):
        U = creation_operator_bs(theta, delta, sign)
        bs = BeamSplitterParams(theta, delta, Sign(sign))
        for col, label in enumerate(["00", "01", "10", "11", "02", "20"]):
            out = apply_beamsplitter(TwoModeState.basis(label), bs)
            np.testing.assert_allclose(amps(out), U[:, col], atol=TOL)

    def test_rejects_theta_out_of_range(self):
        with pytest.raises(ValueError):
            BeamSplitterParams(theta=2.0)

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(0, math.pi / 2),
        st.floats(-math.pi, math.pi),
        st.sampled_from(list(Sign)),
        st.integers(0, 2**32 - 1),
    )
    def test_unitary(self, theta, delta, sign, seed):
        state = random_state(np.random.default_rng(seed), lost=0.25)
        out = apply_beamsplitter(state, BeamSplitterParams(theta, delta, sign))
        assert out.lost == state.lost
        assert abs(out.norm2() - state.norm2()) < TOL

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0, math.pi / 4), st.floats(0, math.pi / 4), st.sampled_from(list(Sign)), st.integers(0, 2**32 - 1))
    def test_composition_on_single_photons(self, t1, t2, sign, seed):
        rng = np.random.default_rng(seed)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        state = TwoModeState(amp01=v[0], amp10=v[1])
        two = apply_beamsplitter(apply_beamsplitter(state, BeamSplitterParams(t1, 0, sign)), BeamSplitterParams(t2, 0, sign))
        one = apply_beamsplitter(state, BeamSplitterParams(t1 + t2, 0, sign))
        np.testing.assert_allclose(amps(two), amps(one), atol=TOL)


class TestAbsorberPair:
    def test_single_photon_factor(self):
        out = apply_absorber_pair(TwoModeState.basis("01"), AbsorberParams(0.9, 0.5))
        assert out.amp01 == pytest.approx(math.sqrt(0.9), abs=TOL)
        assert out.lost == pytest.approx(0.1, abs=TOL)

    def test_identity(self):
        state = random_state(np.random.default_rng(1))
        out = apply_absorber_pair(state, AbsorberParams(1.0, 1.0))
        np.testing.assert_allclose(amps(out), amps(state), atol=TOL)
        assert out.lost == pytest.approx(0.0, abs=TOL)

    def test_ideal_two_photon_absorber(self):
        state = random_state(np.random.default_rng(2))
        out = apply_absorber_pair(state, AbsorberParams(1.0, 0.0))
        assert out.amp02 == 0 and out.amp20 == 0
        assert out.lost == pytest.approx(abs(state.amp02) ** 2 + abs(state.amp20) ** 2, abs=TOL)

    def test_reproduces_lossy_unit_rows(self):
        """BS then absorbers reproduces each row of the lossy unit map."""
        theta, delta, g1, g2 = 0.2, 0.37, 0.8, 0.3
        bs = BeamSplitterParams(theta, delta, Sign.PLUS)
        ab = AbsorberParams(g1, g2)
        e1, e2 = np.exp(1j * delta), np.exp(2j * delta)
        c, s = math.cos(theta), math.sin(theta)
        s2, c2 = math.sin(2 * theta), math.cos(2 * theta)
        r2 = math.sqrt(2)
        expected = {
            "01": [0, e1 * math.sqrt(g1) * c, e1 * math.sqrt(g1) * 1j * s, 0, 0, 0],
            "10": [0, e1 * math.sqrt(g1) * 1j * s, e1 * math.sqrt(g1) * c, 0, 0, 0],
            "11": [0, 0, 0, e2 * g1 * c2, e2 * g1 * 1j * math.sqrt(g2) * s2 / r2, e2 * g1 * 1j * math.sqrt(g2) * s2 / r2],
            "02": [0, 0, 0, e2 * g1 * 1j * s2 / r2, e2 * g1 * math.sqrt(g2) * c * c, -e2 * g1 * math.sqrt(g2) * s * s],
            "20": [0, 0, 0, e2 * g1 * 1j * s2 / r2, -e2 * g1 * math.sqrt(g2) * s * s, e2 * g1 * math.sqrt(g2) * c * c],
        }
        for label, row in expected.items():
            out = apply_absorber_pair(apply_beamsplitter(TwoModeState.basis(label), bs), ab)
            np.testing.assert_allclose(amps(out), row, atol=TOL)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0, 1), st.floats(0, 1), st.integers(0, 2**32 - 1))
    def test_single_photon_factorization(self, g1, g2, seed):
        rng = np.random.default_rng(seed)
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        v /= np.linalg.norm(v)
        state = TwoModeState(amp00=v[0], amp01=v[1], amp10=v[2])
        once = apply_absorber_pair(state, AbsorberParams(g1, g2))
        half = AbsorberParams(math.sqrt(g1), g2)
        twice = apply_absorber_pair(apply_absorber_pair(state, half), half)
        np.testing.assert_allclose(amps(once), amps(twice), atol=TOL)
        assert once.lost == pytest.approx(twice.lost, abs=TOL)

    def test_gamma2_above_gamma1_allowed(self):
        AbsorberParams(0.2, 0.9)

    @pytest.mark.parametrize("g1,g2", [(-0.1, 0.5), (0.5, 1.5)])
    def test_rejects_out_of_range(self, g1, g2):
        with pytest.raises(ValueError):
            AbsorberParams(g1, g2)


class TestRailAttenuator:
    def test_one_photon(self):
        out = apply_rail_attenuator(TwoModeState.basis("11"), Mode.FIRST, 0.5)
        assert out.amp11 == pytest.approx(0.5)
        assert out.lost == pytest.approx(0.75)

    def test_two_photons(self):
        out = apply_rail_attenuator(TwoModeState.basis("02"), Mode.SECOND, 0.5)
        assert out.amp02 == pytest.approx(0.25)

    def test_vacuum(self):
        out = apply_rail_attenuator(TwoModeState.basis("00"), Mode.SECOND, 0.1)
        assert out.amp00 == 1 and out.lost == 0

    def test_other_mode_untouched(self):
        out = apply_rail_attenuator(TwoModeState.basis("20"), Mode.SECOND, 0.3)
        assert out.amp20 == 1

    def test_rejects_bad_t(self):
        with pytest.raises(ValueError):
            apply_rail_attenuator(TwoModeState.basis("00"), Mode.FIRST, 1.5)


class TestHelpers:
    def test_swap(self):
        state = random_state(np.random.default_rng(5))
        out = swap_modes(state)
        assert (out.amp01, out.amp10, out.amp02, out.amp20) == (state.amp10, state.amp01, state.amp20, state.amp02)

    def test_photon_number_phase(self):
        state = random_state(np.random.default_rng(6))
        out = apply_photon_number_phase(state, 1j)
        np.testing.assert_allclose(amps(out), amps(state) * np.array([1, 1j, 1j, -1, -1, -1]), atol=TOL)

    def test_unknown_basis_label(self):
        with pytest.raises(ValueError):
            TwoModeState.basis("12")

    def test_sign_parse(self):
        assert Sign.parse("minus") is Sign.MINUS
        with pytest.raises(ValueError):
            Sign.parse("sideways")


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_norm_conservation_under_random_sequences(seed, length):
    rng = np.random.default_rng(seed)
    state = random_state(rng)
    for _ in range(length):
        op = rng.integers(3)
        if op == 0:
            state = apply_beamsplitter(
                state, BeamSplitterParams(rng.uniform(0, math.pi / 2), rng.uniform(-4, 4), Sign(rng.choice([1, -1])))
            )
        elif op == 1:
            state = apply_absorber_pair(state, AbsorberParams(rng.uniform(), rng.uniform()))
        else:
            state = apply_rail_attenuator(state, Mode(int(rng.integers(2))), rng.uniform())
        assert state.lost >= 0
    assert abs(state.total_probability() - 1) < TOL
