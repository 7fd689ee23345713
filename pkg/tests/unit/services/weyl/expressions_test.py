"""Unit tests for the Weyl expressions."""

import math

import numpy as np
import pytest

from paulilab.exceptions import DomainViolationError
from paulilab.models.constants import WEYL1_COEFFICIENT, WEYL_TAU_COEFFICIENT
from paulilab.models.enums import SolverKind
from paulilab.services.fields import Grid, ScalarField, VectorField, build_grid, sample_potential
from paulilab.services.pauli import assemble
from paulilab.services.scalelab import fit_power_law
from paulilab.services.spectra import negative_spectrum, trace_minus
from paulilab.services.weyl import (
    weyl1,
    weyl1_corrected_local,
    weyl1_local,
    weyl1_tau_integral,
    weyl_alpha_beta,
    weyl_corrected,
    weyl_report,
    weyl_tau,
)


@pytest.fixture
def unit_box() -> Grid:
    """4^3 grid on the unit box."""
    return build_grid((4, 4, 4), (1.0, 1.0, 1.0))


@pytest.fixture
def ripple() -> ScalarField:
    """V = 2 + 0.5 sin x on a (2 pi)^3 torus resolved along x."""
    grid = build_grid((32, 4, 4), (2 * math.pi, 2 * math.pi, 2 * math.pi))
    return ScalarField(grid, 2.0 + 0.5 * np.sin(grid.coordinates[0]))


class TestClosedForms:
    """Tests for Weyl(tau) and Weyl_1."""

    def test_unit_potential_on_unit_box(self, unit_box: Grid):
        """Test V = 1 gives the bare coefficients times h^-3."""
        V = ScalarField.constant(unit_box, 1.0)

        assert weyl_tau(V, 0.5, 0.0) == pytest.approx(WEYL_TAU_COEFFICIENT * 8.0)
        assert weyl1(V, 0.5) == pytest.approx(-WEYL1_COEFFICIENT * 8.0)

    def test_weyl1_is_negative(self, gaussian_well: ScalarField):
        """Test Weyl_1 < 0 for a potential with a positive part."""
        assert weyl1(gaussian_well, 1.0) < 0

    def test_nonpositive_potential_vanishes(self, unit_box: Grid):
        """Test V <= 0 gives zero for both expressions."""
        V = ScalarField.constant(unit_box, -1.0)

        assert weyl_tau(V, 1.0) == 0.0
        assert weyl1(V, 1.0) == 0.0
        assert weyl1_tau_integral(V, 1.0) == (0.0, 0.0)

    def test_h_homogeneity(self, gaussian_well: ScalarField):
        """Test halving h multiplies Weyl_1 by 8."""
        assert weyl1(gaussian_well, 0.5) == pytest.approx(8 * weyl1(gaussian_well, 1.0))

    def test_tau_shift(self, unit_box: Grid):
        """Test tau enters as V + tau."""
        V = ScalarField.constant(unit_box, 1.0)

        assert weyl_tau(V, 1.0, 3.0) == pytest.approx(WEYL_TAU_COEFFICIENT * 8.0)

    def test_local_integrates_to_global(self, gaussian_well: ScalarField):
        """Test the pointwise density integrates to Weyl_1."""
        assert weyl1_local(gaussian_well, 0.7).integrate() == pytest.approx(weyl1(gaussian_well, 0.7))

    def test_tau_quadrature_agrees(self, gaussian_well: ScalarField):
        """Test the tau integral reproduces the closed form."""
        value, error = weyl1_tau_integral(gaussian_well, 1.0)

        assert value == pytest.approx(weyl1(gaussian_well, 1.0), rel=1e-7)
        assert error < 1e-6

    def test_h_must_be_positive(self, gaussian_well: ScalarField):
        """Test h <= 0 is refused."""
        with pytest.raises(DomainViolationError):
            weyl1(gaussian_well, 0.0)


class TestCorrectedWeyl:
    """Tests for the h^-1 gradient correction."""

    def test_zero_constants_leave_weyl1(self, ripple: ScalarField):
        """Test kappa1 = kappa2 = 0 gives Weyl_1 in both forms."""
        corrected = weyl_corrected(ripple, 1.0, 0.0, 0.0)

        assert corrected.value == pytest.approx(weyl1(ripple, 1.0))
        assert corrected.integrated == pytest.approx(weyl1(ripple, 1.0))

    def test_both_forms_agree(self, ripple: ScalarField):
        """Test the two-constant and one-constant forms agree on a torus."""
        corrected = weyl_corrected(ripple, 0.5, 0.3, 0.6)

        assert corrected.kappa == pytest.approx(0.3 - 0.4)
        assert corrected.discrepancy < 1e-6 * abs(corrected.value)

    def test_gradient_term_sign(self, ripple: ScalarField):
        """Test a positive kappa2 raises the value."""
        assert weyl_corrected(ripple, 1.0, 0.0, 1.0).value > weyl1(ripple, 1.0)

    def test_local_form_integrates(self, ripple: ScalarField):
        """Test the corrected density integrates to the two-constant value."""
        local = weyl1_corrected_local(ripple, 0.8, 0.2, -0.1)

        assert local.integrate() == pytest.approx(weyl_corrected(ripple, 0.8, 0.2, -0.1).value)


class TestWeylAlphaBeta:
    """Tests for the phase-space spin integrals."""

    def test_order_zero_is_ball_volume(self, unit_box: Grid):
        """Test alpha = beta = 0 gives (2 pi h)^-3 times the ball volume."""
        V = ScalarField.constant(unit_box, 4.0)
        result = weyl_alpha_beta((0.0, 0.0, 0.0), VectorField.zeros(unit_box), V, 1.0, (0, 0, 0), (0, 0, 0))

        expected = (2 * math.pi) ** -3 * 4 * math.pi / 3 * 8.0
        assert result == pytest.approx(expected * np.eye(2))

    def test_odd_order_vanishes(self, unit_box: Grid):
        """Test odd total order integrates to zero."""
        V = ScalarField.constant(unit_box, 4.0)
        result = weyl_alpha_beta((0.0, 0.0, 0.0), VectorField.zeros(unit_box), V, 1.0, (1, 0, 0), (0, 0, 0))

        assert not np.any(result)

    def test_order_two_moment(self, unit_box: Grid):
        """Test order two gives the second radial moment."""
        V = ScalarField.constant(unit_box, 1.0)
        result = weyl_alpha_beta((0.1, 0.0, 0.0), VectorField.zeros(unit_box), V, 0.5, (1, 0, 0), (0, 1, 0))

        expected = math.pi**-3 * 4 * math.pi / 5
        assert result[0, 0] == pytest.approx(expected)
        assert result[0, 1] == 0

    def test_order_above_two_is_refused(self, unit_box: Grid):
        """Test |alpha| + |beta| > 2 raises."""
        V = ScalarField.constant(unit_box, 1.0)
        with pytest.raises(DomainViolationError):
            weyl_alpha_beta((0.0, 0.0, 0.0), VectorField.zeros(unit_box), V, 1.0, (2, 0, 0), (0, 1, 0))


class TestWeylReport:
    """Tests for weyl_report."""

    def test_summary_fields(self, gaussian_well: ScalarField):
        """Test the summary carries every quantity."""
        summary = weyl_report(gaussian_well, 1.0, 0.0, 0.3, 0.6).summary()

        assert summary.weyl1 == pytest.approx(weyl1(gaussian_well, 1.0))
        assert summary.kappa == pytest.approx(-0.1)
        assert summary.quadrature_error < 1e-6


@pytest.mark.slow
class TestSemiclassicalTrend:
    """Tr^- against Weyl_1 as h decreases on a 12^3 grid."""

    def test_error_grows_slower_than_weyl(self):
        """Test the fitted error exponent is at most 2.5 and the relative error shrinks with h."""
        grid = build_grid((12, 12, 12), (3.0, 3.0, 3.0))
        V = sample_potential("gaussian_well", {"amplitude": 12.0}, grid)
        h_values = [0.9, 0.75, 0.6, 0.5]
        errors, ratios = [], []
        for h in h_values:
            H = assemble(grid, VectorField.zeros(grid), V, h)
            error = abs(trace_minus(negative_spectrum(H, 0.0, SolverKind.DENSE)) - weyl1(V, h))
            errors.append(error)
            ratios.append(error / abs(weyl1(V, h)))

        assert fit_power_law(h_values, errors).exponent <= 2.5
        assert ratios[-1] < ratios[0]
        assert fit_power_law(h_values, ratios).exponent < 0
