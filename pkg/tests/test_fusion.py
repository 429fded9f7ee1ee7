import math

import pytest

from zeno_cz.cascade import GateConfig, run_cascade, tau_closed_form, tau_ideal
from zeno_cz.distillation import distilled_cz_success
from zeno_cz.errors import BracketError, DomainError
from zeno_cz.fock import TwoModeState
from zeno_cz.fusion import (
    BREAK_EVEN_SUCCESS,
    break_even_point,
    classify_heralded_outcome,
    fusion_success,
    linear_optics_loss,
    optimal_fusion_point,
    zeno_loss,
)


@pytest.fixture(scope="module")
def break_even():
    return break_even_point()


class TestLossFormulas:
    @pytest.mark.parametrize("N,expected", [(1, 0.5), (2, 0.25), (10, 2.0**-10)])
    def test_linear_optics(self, N, expected):
        assert linear_optics_loss(N) == expected

    def test_zeno_examples(self):
        assert zeno_loss(0.75, 2) == 0.25 == linear_optics_loss(2)
        assert zeno_loss(1.0, 6) == 0.0
        assert zeno_loss(0.0, 4) == 1.0

    @pytest.mark.parametrize("N", range(2, 21, 2))
    def test_break_even_identity(self, N):
        assert zeno_loss(BREAK_EVEN_SUCCESS, N) == linear_optics_loss(N)

    @pytest.mark.parametrize("N", [3, 0, 2.5])
    def test_zeno_rejects(self, N):
        with pytest.raises(ValueError):
            zeno_loss(0.5, N)

    def test_linear_rejects(self):
        with pytest.raises(ValueError):
            linear_optics_loss(0)


class TestFusionSuccess:
    @pytest.mark.parametrize("kappa,lam", [(1e3, 20.0), (1e4, 100.0), (3e4, 50.0)])
    def test_numerator_is_twice_distilled_success(self, kappa, lam):
        n = 10_000
        tau = tau_closed_form(n, math.exp(-lam / n))
        a = math.exp(-lam / kappa) * tau ** (1 + 1 / kappa)
        p = fusion_success(kappa, lam, n)
        assert p == pytest.approx(2 * a * a / (1 + a), rel=1e-12)
        assert p * (1 + a) == pytest.approx(2 * distilled_cz_success(lam, kappa, n), rel=1e-12)

    def test_ideal_limit(self):
        assert fusion_success(1e16, 1e7, 10**6) == pytest.approx(1.0, abs=1e-4)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            fusion_success(1e3, 1.0)

    def test_value_at_1e4(self):
        point = optimal_fusion_point(1e4)
        assert 0.86 <= point.p_success <= 0.88
        assert point.p_success == pytest.approx(fusion_success(1e4, point.lambda_opt), abs=1e-12)

    def test_optimum_is_interior(self):
        for kappa in (316.0, 1e4, 1e5):
            point = optimal_fusion_point(kappa)
            assert 1e-3 < point.lambda_opt < 1e4

    def test_max_nondecreasing_in_kappa(self):
        values = [optimal_fusion_point(10 ** (2.5 + 0.25 * i)).p_success for i in range(11)]
        assert all(b >= a for a, b in zip(values, values[1:]))


class TestBreakEven:
    def test_value(self, break_even):
        assert 1980 <= break_even.kappa <= 2420

    def test_defining_property(self, break_even):
        assert fusion_success(break_even.kappa, break_even.lambda_opt) == pytest.approx(0.75, abs=1e-6)

    def test_monotone_around(self, break_even):
        at_star = optimal_fusion_point(break_even.kappa).p_success
        assert optimal_fusion_point(1e4).p_success > at_star > optimal_fusion_point(1e3).p_success

    def test_n_converged(self, break_even):
        doubled = break_even_point(n=20_000)
        assert abs(doubled.kappa / break_even.kappa - 1) < 0.01

    def test_bracket_failure(self):
        with pytest.raises(BracketError):
            break_even_point(bracket=(1e4, 1e5))


class TestHeraldedOutcome:
    def test_conservation(self):
        out = run_cascade(GateConfig(n=1000, lam=10.0, kappa=1e3), TwoModeState.basis("11"))
        w = classify_heralded_outcome(out.final)
        assert w.success + w.heralded_loss + w.heralded_bunching == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n", [4, 10, 100])
    def test_ideal_absorbers(self, n):
        out = run_cascade(GateConfig.ideal(n), TwoModeState.basis("11"))
        w = classify_heralded_outcome(out.final)
        assert w.heralded_bunching == pytest.approx(0.0, abs=1e-24)
        assert w.heralded_loss == pytest.approx(1 - tau_ideal(n) ** 2, abs=1e-12)

    def test_no_absorption(self):
        out = run_cascade(GateConfig(n=50, lam=0.0, kappa=10.0), TwoModeState.basis("11"))
        w = classify_heralded_outcome(out.final)
        assert w.heralded_loss == pytest.approx(0.0, abs=1e-12)
        assert w.heralded_bunching == pytest.approx(0.0, abs=1e-12)
        assert w.success == pytest.approx(1.0, abs=1e-12)
