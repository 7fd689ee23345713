"""Rescaling calculus and exponent-fit records."""

from pydantic import BaseModel, Field, PositiveFloat, computed_field, model_validator

from paulilab.models.enums import FitTarget, RegimeTag


class ScaleState(BaseModel):
    """A point (h, kappa) with a rescaling factor gamma and exponents (alpha, beta).

    The rescaled pair and the scale M are derived, never stored.
    """

    h: PositiveFloat
    kappa: PositiveFloat
    gamma: float = Field(default=1.0, gt=0, le=1)
    alpha: float = 1.5
    beta: float = 0.0

    @computed_field
    @property
    def M(self) -> float:
        """kappa^beta h^(-3/2 - alpha)."""
        return self.kappa**self.beta * self.h ** (-1.5 - self.alpha)

    @computed_field
    @property
    def h_rescaled(self) -> float:
        """h / gamma."""
        return self.h / self.gamma

    @computed_field
    @property
    def kappa_rescaled(self) -> float:
        """kappa * gamma."""
        return self.kappa * self.gamma

    def precondition_value(self, rescaled: bool = False) -> float:
        """kappa^(beta+1) h^(-alpha), before or after rescaling."""
        h, kappa = (self.h_rescaled, self.kappa_rescaled) if rescaled else (self.h, self.kappa)
        return kappa ** (self.beta + 1) * h ** (-self.alpha)


class RemainderPrediction(BaseModel):
    """Predicted remainder at (h, kappa) with the constants it was evaluated with."""

    h: float
    kappa: float
    value: float
    form: str = Field(..., description="'unit', 'kappa_squared' or 'log_corrected'")
    regime: RegimeTag
    kappa_star: float
    C: float = 1.0
    c: float = 1.0
    epsilon: float = 1.0


class FitResult(BaseModel):
    """error ~ constant * h^-exponent fitted in log-log coordinates."""

    exponent: float
    constant: float
    residual: float = Field(..., description="RMS of the log residuals")
    points: int = Field(..., ge=3)
    h_values: list[float] = Field(default_factory=list)


class FitReport(BaseModel):
    """Fit over all points, and the refit without the largest h when the first is poor."""

    target: FitTarget
    kappa: float | None = None
    full: FitResult
    trimmed: FitResult | None = None
    dropped: list[float] = Field(default_factory=list, description="h values left out of the refit")

    @property
    def preferred(self) -> FitResult:
        """The trimmed fit when there is one, else the full fit."""
        return self.trimmed or self.full

    @model_validator(mode="after")
    def validate_dropped(self) -> "FitReport":
        """A trimmed fit always names what it dropped."""
        if self.trimmed is not None and not self.dropped:
            raise ValueError("trimmed fit without dropped points")
        return self
