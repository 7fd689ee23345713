"""Unit tests for the a-priori bounds and field diagnostics."""

import math

import numpy as np
import pytest

from paulilab.exceptions import DomainViolationError
from paulilab.models.enums import SolverKind
from paulilab.models.settings import SmoothingOptions, SolverOptions
from paulilab.services.fields import Grid, ScalarField, VectorField
from paulilab.services.localize import build_partition, localized_trace_minus, subadditivity_check
from paulilab.services.pauli import assemble
from paulilab.services.selfgen import (
    diagnostics,
    evaluate,
    holder_seminorm,
    inequality_suite,
    local_gradient_norm,
    lower_bound_family,
    predicted_sup_bound,
    sobolev_ratio,
)
from paulilab.services.spectra import density_e1, negative_spectrum


@pytest.fixture
def sine_field(torus_grid: Grid) -> VectorField:
    """A = (0, 0, sin x1), divergence-free with |dA| peaking at 1."""
    zeros = np.zeros(torus_grid.dims)
    return VectorField(torus_grid, np.stack([zeros, zeros, np.sin(torus_grid.coordinates[0])]))


class TestDiagnostics:
    """Tests for diagnostics and its parts."""

    def test_sine_field(self, sine_field: VectorField):
        """Test mu = 1 and ||dA|| = sqrt((2 pi)^3 / 2) for sin x1."""
        d = diagnostics(sine_field, h=0.5, kappa=2.0)

        assert d.mu == pytest.approx(1.0)
        assert d.mu_bar == pytest.approx(1.0)
        assert d.gradient_norm == pytest.approx(math.sqrt((2 * math.pi) ** 3 / 2))
        assert d.M == pytest.approx(2.0)
        assert d.varsigma == pytest.approx(2.0 * 2.0 * 0.5**1.5)
        assert d.predicted_sup == pytest.approx(predicted_sup_bound(0.5, 2.0))

    def test_zero_field(self, torus_grid: Grid):
        """Test every size measure of A = 0 vanishes and mu_bar is 1."""
        d = diagnostics(VectorField.zeros(torus_grid), h=0.5, kappa=1.0)

        assert d.mu == 0.0
        assert d.mu_bar == 1.0
        assert d.holder == 0.0
        assert d.local_gradient_norm == 0.0

    def test_holder_exponents(self, sine_field: VectorField):
        """Test both exponent ranges give finite positive values and 1 is refused."""
        assert holder_seminorm(sine_field, 0.5) > 0
        assert holder_seminorm(sine_field, 1.5) > 0
        with pytest.raises(DomainViolationError):
            holder_seminorm(sine_field, 1.0)

    def test_local_gradient_norm_bounded_by_global(self, sine_field: VectorField):
        """Test the ball norm never exceeds the global one."""
        local = local_gradient_norm(sine_field, radius=1.0)

        assert 0 < local <= math.sqrt((2 * math.pi) ** 3 / 2)

    def test_predicted_sup_bound(self):
        """Test the closed form."""
        h = 0.1
        assert predicted_sup_bound(h, 1.0) == pytest.approx(abs(math.log(h)) ** 0.6 * h**0.2)

    def test_sobolev_ratio_of_zero(self, torus_grid: Grid):
        """Test A = 0 gives ratio 0."""
        assert sobolev_ratio(VectorField.zeros(torus_grid)) == 0.0


class TestInequalitySuite:
    """Tests for inequality_suite and lower_bound_family."""

    def test_zero_field_holds(self, small_grid: Grid, deep_well: ScalarField):
        """Test every check holds at A = 0 and the field terms vanish."""
        A = VectorField.zeros(small_grid)
        S = negative_spectrum(assemble(small_grid, A, deep_well, 1.0), 0.0, SolverKind.DENSE)

        report = inequality_suite(S, A, deep_well, 1.0, 0.5)

        assert report.holds
        assert report.constant("field_energy") == 0.0
        assert report.constant("energy_lower") >= 0.0
        assert report.constant("diagonal_density") > 0.0

    def test_reference_scale_below_inverse_h(self, small_grid: Grid, deep_well: ScalarField):
        """Test M < 1/h is refused."""
        A = VectorField.zeros(small_grid)
        S = negative_spectrum(assemble(small_grid, A, deep_well, 1.0), 0.0, SolverKind.DENSE)

        with pytest.raises(DomainViolationError):
            inequality_suite(S, A, deep_well, 1.0, 0.5, M=0.5)

    def test_lower_bound_family(self, torus_grid: Grid):
        """Test the implied constant at A = 0 is -E h^3 / (1 + delta^3)."""
        rows = lower_bound_family(-4.0, VectorField.zeros(torus_grid), 0.5, 1.0, [1.0, 2.0])

        assert rows[0].implied_constant == pytest.approx(4.0 * 0.125 / 2.0)
        assert rows[1].implied_constant == pytest.approx(4.0 * 0.125 / 9.0)

    def test_lower_bound_family_refuses_nonpositive_delta(self, torus_grid: Grid):
        """Test delta <= 0 raises."""
        with pytest.raises(DomainViolationError):
            lower_bound_family(-1.0, VectorField.zeros(torus_grid), 0.5, 1.0, [0.0])


class TestRandomInstances:
    """The bounds on seeded random wells and fields."""

    @pytest.mark.parametrize("seed", range(20))
    def test_bounds_hold(self, small_grid: Grid, random_well, random_field, seed: int):
        """Test the a-priori report, localization, subadditivity, smoothing and the spectral floor."""
        rng = np.random.default_rng(200 + seed)
        V = random_well(small_grid, seed)
        A = random_field(small_grid, amplitude=rng.uniform(0.0, 0.3), seed=seed)
        h = rng.uniform(0.75, 1.0)
        H = assemble(small_grid, A, V, h)
        S = negative_spectrum(H, 0.0, SolverKind.DENSE)
        psi = ScalarField(small_grid, rng.uniform(0.0, 1.0, small_grid.dims))

        report = inequality_suite(S, A, V, h, 0.5)
        lieb_thirring = next(c for c in report.checks if c.name == "magnetic_lieb_thirring")
        assert report.holds
        assert lieb_thirring.holds
        assert 0.0 <= lieb_thirring.implied_constant < math.inf

        localized = localized_trace_minus(H, psi, SolverKind.DENSE)
        assert localized >= density_e1(S, ScalarField(small_grid, psi.values**2)) - 1e-10

        split = subadditivity_check(H, build_partition(small_grid, 2.0), SolverKind.DENSE)
        assert split.holds

        smoothing = SmoothingOptions(scale=0.2)
        regularized = evaluate(A, V, h, 0.5, SolverOptions(kind=SolverKind.DENSE), smoothing, regularize=True)
        assert regularized.smoothed_energy <= regularized.energy + 1e-10

        if S.count:
            assert S.eigenvalues.min() >= -V.values.max() - 1e-10
