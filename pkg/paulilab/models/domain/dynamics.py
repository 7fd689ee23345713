"""Classical-flow records."""

from pydantic import BaseModel, Field


class PeriodicMeasure(BaseModel):
    """Weighted fraction of the energy shell returning within rho before the horizon."""

    estimate: float = Field(..., ge=0, le=1)
    lower: float = Field(..., ge=0, le=1, description="Wilson 95% bound")
    upper: float = Field(..., ge=0, le=1, description="Wilson 95% bound")
    samples: int
    effective_samples: float
    returned: int
    shell_volume: float = Field(
        ..., description="coarea-weighted measure of {H = tau} in the sampling cube"
    )
    tau: float
    horizon: float
    rho: float
    max_drift: float


class SampleOutcome(BaseModel):
    """One sampled initial condition and its first return time."""

    x: tuple[float, float, float]
    xi: tuple[float, float, float]
    weight: float
    return_time: float | None = None
