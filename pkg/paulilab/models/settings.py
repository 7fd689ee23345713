"""Pydantic models for experiment configuration and application settings."""

from functools import lru_cache
from pathlib import Path
from typing import Annotated

from pydantic import BaseModel, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from paulilab.models.constants import MIN_GRID_POINTS, RESOLUTION_FACTOR
from paulilab.models.enums import FitTarget, Integrator, Preset, SolverKind

PositiveFloat = Annotated[float, Field(gt=0)]
Triple = tuple[float, float, float]


class GridOptions(BaseModel):
    """Periodic computational torus."""

    dims: tuple[int, int, int] = (16, 16, 16)
    box: Triple = (4.0, 4.0, 4.0)

    @model_validator(mode="after")
    def validate_extent(self) -> "GridOptions":
        """Reject grids too coarse for the derivative stencils."""
        if min(self.dims) < MIN_GRID_POINTS:
            raise ValueError(f"dims must be >= {MIN_GRID_POINTS} per axis, got {self.dims}")
        if min(self.box) <= 0:
            raise ValueError(f"box lengths must be positive, got {self.box}")
        return self

    @property
    def max_spacing(self) -> float:
        """Largest cell edge."""
        return max(length / n for length, n in zip(self.box, self.dims, strict=True))


class PotentialOptions(BaseModel):
    """Potential preset and its parameters."""

    preset: Preset = Preset.GAUSSIAN_WELL
    params: dict[str, float] = Field(
        default_factory=lambda: {"amplitude": 2.0, "width": 0.5, "floor": -0.2}
    )
    expression: str | None = Field(
        default=None, description="numpy expression in x, y, z, r for the custom preset"
    )

    @model_validator(mode="after")
    def validate_expression_required_for_custom(self) -> "PotentialOptions":
        """The custom preset needs an expression."""
        if self.preset == Preset.CUSTOM and not self.expression:
            raise ValueError(f"expression must be provided when preset is {Preset.CUSTOM.value}")
        return self


class SolverOptions(BaseModel):
    """Negative-spectrum solver settings."""

    kind: SolverKind = SolverKind.AUTO
    block_size: int = Field(default=8, ge=1)
    max_rounds: int = Field(default=200, ge=1)
    tolerance: float = Field(default=1e-12, gt=0, description="ARPACK relative tolerance")
    gap_tolerance: float = Field(default=1e-6, ge=0)
    dense_limit: int = Field(
        default=1024, ge=1, description="auto uses the dense solver up to this dimension"
    )
    attempts: int = Field(default=3, ge=1, description="tenacity attempts for iterative solves")
    certify: bool = Field(default=True, description="count-check iterative runs on small grids")


class SmoothingOptions(BaseModel):
    """Energy-scale regularization of the trace term."""

    scale: float | None = Field(default=None, gt=0, description="L; defaults to 10 h^2")
    rho: float = Field(default=0.0, ge=0, description="weight rho on the field term")
    k_inverse: float = Field(default=1.0, gt=0, description="weight K^-1 on the field term")


class MinimizerOptions(BaseModel):
    """Damped fixed-point iteration for the self-generated field."""

    mixing: float = Field(default=0.5, gt=0, le=1)
    min_mixing: float = Field(default=1e-3, gt=0, le=1)
    mixing_growth: float = Field(default=1.5, ge=1)
    max_iterations: int = Field(default=60, ge=1)
    tolerance: float = Field(default=1e-3, gt=0)
    residual_floor: float = Field(default=1e-8, gt=0)
    initial_amplitude: float = Field(default=1e-3, ge=0)
    zero_field_threshold: float = Field(
        default=1e-14, ge=0, description="field energies below this snap A to 0"
    )
    dealias: bool = True
    regularize: bool = False


class CutoffOptions(BaseModel):
    """Radial cutoff for localized energies."""

    enabled: bool = False
    center: Triple = (0.0, 0.0, 0.0)
    radius: float = Field(default=1.0, ge=0)
    taper: float = Field(default=0.3, gt=0, le=1)
    epsilon: float = Field(default=0.25, gt=0, le=0.5)


class PartitionOptions(BaseModel):
    """Quadratic partition of unity."""

    gamma: float | None = Field(default=None, gt=0, description="defaults to the box length")
    trials: int = Field(default=20, ge=1)


class DynamicsOptions(BaseModel):
    """Classical flow of |xi|^2 - V and its periodic-point measure."""

    preset: Preset = Preset.HARMONIC
    strength: float = Field(default=0.3, ge=0, description="anharmonic perturbation strength")
    params: dict[str, float] = Field(default_factory=dict)
    tau: float = 0.0
    step: float = Field(default=1e-3, gt=0)
    horizon: float = Field(default=4.0, gt=0)
    rho: float = Field(default=1e-2, gt=0)
    samples: int = Field(default=200, ge=100)
    seed: int = 0
    region: float = Field(default=1.5, gt=0, description="half-width of the sampling cube")
    integrator: Integrator = Integrator.YOSHIDA4

    @model_validator(mode="after")
    def validate_step(self) -> "DynamicsOptions":
        """Returns within rho are only detectable when step <= rho/10."""
        if self.step > self.rho / 10:
            raise ValueError(f"step {self.step:g} must be <= rho/10 = {self.rho / 10:g}")
        return self


class ScaleOptions(BaseModel):
    """Unquantified absolute constants and rescaling exponents."""

    alpha: float = 1.5
    beta: float = 0.0
    c: PositiveFloat = 1.0
    C: PositiveFloat = 1.0
    epsilon: PositiveFloat = 1.0
    kappa1: float = 0.0
    kappa2: float = 0.0
    steps: int = Field(default=3, ge=1)
    M_ref: float | None = Field(default=None, gt=0, description="defaults to 1/h")


class FitOptions(BaseModel):
    """Log-log exponent fitting."""

    target: FitTarget = FitTarget.TRACE
    residual_threshold: float = Field(default=0.1, gt=0)
    drop_largest: int = Field(default=2, ge=0)


class ExperimentConfig(BaseModel):
    """One experiment: potential, grid, parameter sweep and method options."""

    potential: PotentialOptions = PotentialOptions()
    grid: GridOptions = GridOptions()
    h_values: list[PositiveFloat] = Field(default_factory=lambda: [0.9, 0.75, 0.6])
    kappa_values: list[PositiveFloat] = Field(default_factory=lambda: [0.5])
    solver: SolverOptions = SolverOptions()
    minimizer: MinimizerOptions = MinimizerOptions()
    smoothing: SmoothingOptions = SmoothingOptions()
    cutoff: CutoffOptions = CutoffOptions()
    partition: PartitionOptions = PartitionOptions()
    dynamics: DynamicsOptions = DynamicsOptions()
    scale: ScaleOptions = ScaleOptions()
    fit: FitOptions = FitOptions()
    output_dir: Path = Path("runs")
    seed: int = 0

    @model_validator(mode="after")
    def validate_sweep(self) -> "ExperimentConfig":
        """Lists must be nonempty and every h resolved by the grid."""
        if not self.h_values:
            raise ValueError("h_values must not be empty")
        if not self.kappa_values:
            raise ValueError("kappa_values must not be empty")
        minimum = RESOLUTION_FACTOR * self.grid.max_spacing
        too_small = [h for h in self.h_values if h < minimum]
        if too_small:
            raise ValueError(
                f"h values {too_small} are below the grid resolution limit {minimum:.4g} "
                "(h >= 4 * max spacing / pi)"
            )
        return self

    def points(self) -> list[tuple[float, float]]:
        """The (h, kappa) sweep points in plan order."""
        return [(h, kappa) for h in self.h_values for kappa in self.kappa_values]


class Settings(BaseSettings):
    """Main application settings.

    Holds the experiment configuration together with execution options that
    can be overridden from the environment (``PAULILAB_WORKERS=4``). An
    experiment read from a configuration file takes precedence over
    ``PAULILAB_EXPERIMENT__*`` variables.
    """

    experiment: ExperimentConfig = ExperimentConfig()
    workers: int = Field(default=1, ge=1)
    config_path: Path | None = None
    model_config = SettingsConfigDict(
        env_prefix="PAULILAB_", env_file=".env", env_nested_delimiter="__", extra="ignore"
    )


@lru_cache(maxsize=1)
def get_settings(config_path: Path | None = None) -> Settings:
    """Get cached application settings.

    Loads the experiment from ``config_path`` when given, otherwise from a
    ``.paulilab.json`` found between the working directory and the project
    root, otherwise from the user config directory. Without any file the
    defaults are used. Clear with ``get_settings.cache_clear()`` in tests.

    Args:
        config_path: Explicit configuration file.

    Returns:
        Settings: The cached settings instance.

    Raises:
        ConfigNotFoundError: If ``config_path`` is given but does not exist.
        InvalidConfigError: If the configuration file fails validation.
    """
    from paulilab.core.config_io import load_experiment_config
    from paulilab.core.config_locator import locate_global_config, locate_local_config_file
    from paulilab.exceptions import ConfigNotFoundError
    from paulilab.models.constants import CONFIG_FILENAME

    if config_path is not None and not config_path.is_file():
        raise ConfigNotFoundError([str(config_path)])

    config_filepath = (
        config_path
        or locate_local_config_file(CONFIG_FILENAME)
        or locate_global_config(CONFIG_FILENAME)
    )
    if config_filepath is None:
        return Settings()
    return Settings(
        experiment=load_experiment_config(config_filepath), config_path=config_filepath
    )
