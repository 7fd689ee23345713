"""Unit tests for the rescaling calculus and predicted remainders."""

import math
from fractions import Fraction

import pytest

from paulilab.exceptions import DomainViolationError
from paulilab.models.domain.scaling import ScaleState
from paulilab.models.enums import RegimeTag
from paulilab.services.scalelab import (
    alpha_recurrence,
    gamma_choice,
    gamma_large_kappa,
    general_step,
    kappa_star,
    predicted_gradient_bound,
    predicted_remainder,
    regime,
    rescale,
    rescaled_remainder,
)


class TestAlphaRecurrence:
    """Tests for the exact exponent recurrence."""

    def test_three_steps_from_three_halves(self):
        """Test 3/2 -> 7/10 -> 3/50 -> -113/250, negative at step 3."""
        recurrence = alpha_recurrence(Fraction(3, 2), steps=3)

        assert recurrence.alphas == [Fraction(7, 10), Fraction(3, 50), Fraction(-113, 250)]
        assert recurrence.first_negative == 3
        assert all(a + b == Fraction(3, 2) for a, b in zip(recurrence.alphas, recurrence.betas, strict=True))

    def test_float_input_reads_as_decimal(self):
        """Test 0.7 starts from 7/10 exactly."""
        recurrence = alpha_recurrence(0.7, steps=1)

        assert recurrence.alpha0 == Fraction(7, 10)
        assert recurrence.alphas == [Fraction(3, 50)]
        assert recurrence.first_negative is None

    def test_fixed_point(self):
        """Test -5/2 is fixed."""
        assert alpha_recurrence(Fraction(-5, 2), steps=4).alphas == [Fraction(-5, 2)] * 4

    def test_summary_is_json_friendly(self):
        """Test the summary holds strings and floats."""
        summary = alpha_recurrence(1.5, steps=2).summary()

        assert summary["alphas"] == ["7/10", "3/50"]
        assert summary["alphas_float"] == [0.7, 0.06]

    def test_general_step(self):
        """Test the general map agrees with the recurrence on its line."""
        assert general_step(Fraction(3, 2), 0) == (Fraction(7, 10), Fraction(4, 5))

    def test_steps_must_be_positive(self):
        """Test zero steps are refused."""
        with pytest.raises(DomainViolationError):
            alpha_recurrence(1.5, steps=0)


class TestRescaling:
    """Tests for rescale and gamma choices."""

    def test_rescale(self):
        """Test (0.1, 2) at gamma 0.5 becomes (0.2, 1.0) with kappa h unchanged."""
        h, kappa = rescale(0.1, 2.0, 0.5)

        assert (h, kappa) == pytest.approx((0.2, 1.0))
        assert h * kappa == pytest.approx(0.1 * 2.0)

    @pytest.mark.parametrize("gamma", [0.0, 1.5])
    def test_gamma_out_of_range(self, gamma):
        """Test gamma outside (0, 1] is refused."""
        with pytest.raises(DomainViolationError):
            rescale(0.1, 2.0, gamma)

    def test_rescaled_h_must_stay_below_one(self):
        """Test h / gamma >= 1 is refused."""
        with pytest.raises(DomainViolationError):
            rescale(0.5, 2.0, 0.5)

    def test_gamma_choice_normalizes_precondition(self):
        """Test the rescaled kappa^(beta+1) h^-alpha equals 1."""
        kappa, h, alpha, beta = 4.0, 0.01, 1.5, 0.0
        gamma = gamma_choice(kappa, h, alpha, beta)
        state = ScaleState(h=h, kappa=kappa, gamma=gamma, alpha=alpha, beta=beta)

        assert gamma == pytest.approx(4.0**-0.4 * 0.01**0.6)
        assert state.precondition_value(rescaled=True) == pytest.approx(1.0)

    def test_gamma_choice_refuses_negative_sum(self):
        """Test alpha + beta + 1 <= 0 is refused."""
        with pytest.raises(DomainViolationError):
            gamma_choice(2.0, 0.1, -3.0, 0.0)

    def test_gamma_large_kappa(self):
        """Test the closed form and the kappa h < 1 requirement."""
        assert gamma_large_kappa(2.0, 0.1) == pytest.approx(2.0 ** (-4 / 3) * 0.1 ** (-1 / 3) / abs(math.log(0.2)))
        with pytest.raises(DomainViolationError):
            gamma_large_kappa(10.0, 0.1)

    def test_rescaled_remainder(self):
        """Test C h^-1 gamma^-2."""
        assert rescaled_remainder(0.1, 0.5, C=2.0) == pytest.approx(80.0)


class TestPredictions:
    """Tests for kappa*, regimes and remainder forms."""

    def test_kappa_star(self):
        """Test kappa*(0.01) is about 1.006."""
        assert kappa_star(0.01) == pytest.approx(1.0059, abs=1e-3)

    @pytest.mark.parametrize("h", [0.0, 1.0])
    def test_kappa_star_domain(self, h):
        """Test h outside (0, 1) is refused."""
        with pytest.raises(DomainViolationError):
            kappa_star(h)

    @pytest.mark.parametrize(
        "kappa,h,expected",
        [
            (0.5, 0.1, RegimeTag.SUBCRITICAL),
            (1.0, 0.1, RegimeTag.SUBCRITICAL),
            (2.0, 0.1, RegimeTag.LARGE),
            (8.0, 0.1, RegimeTag.NEAR_CRITICAL),
            (1.2, 1e-6, RegimeTag.MODERATE),
        ],
    )
    def test_regime(self, kappa, h, expected):
        """Test the regime boundaries."""
        assert regime(kappa, h) == expected

    def test_unit_form(self):
        """Test kappa <= 1 predicts C h^-1."""
        prediction = predicted_remainder(0.5, 0.1, C=3.0)

        assert prediction.form == "unit"
        assert prediction.value == pytest.approx(30.0)

    def test_log_corrected_form_wins(self):
        """Test the log-corrected form beats C kappa^2 h^-1 at kappa h = 0.2."""
        prediction = predicted_remainder(2.0, 0.1)

        assert prediction.form == "log_corrected"
        assert prediction.value == pytest.approx(1000 * 0.2 ** (8 / 3) * math.log(0.2) ** 2)
        assert prediction.value < 40.0

    def test_kappa_squared_form(self):
        """Test kappa slightly above 1 keeps C kappa^2 h^-1."""
        prediction = predicted_remainder(1.1, 0.1)

        assert prediction.form == "kappa_squared"
        assert prediction.value == pytest.approx(1.21 / 0.1)

    def test_kappa_above_c_over_h(self):
        """Test kappa > c/h is refused."""
        with pytest.raises(DomainViolationError):
            predicted_remainder(11.0, 0.1)

    def test_gradient_bound(self):
        """Test the two regimes of the gradient prediction."""
        assert predicted_gradient_bound(0.5, 0.1) == pytest.approx(0.05)
        assert predicted_gradient_bound(2.0, 0.1) == pytest.approx(0.8)
        with pytest.raises(DomainViolationError):
            predicted_gradient_bound(11.0, 0.1)
