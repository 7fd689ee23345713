"""Self-generated field records: diagnostics, inequality reports and checkpoints."""

from pydantic import BaseModel, Field, model_validator


class Diagnostics(BaseModel):
    """Size and regularity of a vector potential."""

    mu: float = Field(..., description="sup |dA|")
    mu_bar: float = Field(..., description="max(mu, 1)")
    varsigma: float = Field(..., description="kappa * M * h^(3/2)")
    M: float
    holder: float = Field(..., description="discrete Hoelder seminorm of dA at exponent theta")
    theta: float
    gradient_norm: float = Field(..., description="||dA||_2")
    local_gradient_norm: float = Field(..., description="sup_y ||dA||_{L2(B(y, 1))}")
    predicted_sup: float = Field(..., description="kappa^(4/5) |log h|^(3/5) h^(1/5)")

    @model_validator(mode="after")
    def validate_mu_bar(self) -> "Diagnostics":
        """mu_bar dominates both mu and 1."""
        if self.mu_bar < max(self.mu, 1.0):
            raise ValueError(f"mu_bar {self.mu_bar} must be >= max(mu, 1)")
        return self


class InequalityCheck(BaseModel):
    """One inequality evaluated on both sides, with the smallest constant making it hold."""

    name: str
    lhs: float
    rhs_scale: float = Field(..., description="right-hand side without its constant")
    implied_constant: float
    holds: bool = Field(default=True, description="False only for violated sign conditions")


class InequalityReport(BaseModel):
    """Numerical evaluation of the a-priori bounds at one (h, kappa)."""

    h: float
    kappa: float
    checks: list[InequalityCheck]
    sobolev_ratio: float = Field(..., description="||A||_6 / ||dA||")

    @property
    def holds(self) -> bool:
        """True when no sign condition is violated."""
        return all(check.holds for check in self.checks)

    def constant(self, name: str) -> float:
        """Implied constant of the named check."""
        for check in self.checks:
            if check.name == name:
                return check.implied_constant
        raise KeyError(name)


class LowerBoundRow(BaseModel):
    """``-C h^-3 - C delta^3 h^-3 + (1/kappa - 1/delta) h^-1 int |dA|^2`` at one delta."""

    delta: float
    field_term: float
    implied_constant: float = Field(..., description="smallest C for which the bound is below E(A)")


class HistoryEntry(BaseModel):
    """One minimizer iteration."""

    iteration: int
    energy: float
    residual: float
    mixing: float


class MinimizerCheckpoint(BaseModel):
    """Scalar part of a MinimizerState; the field itself is stored as a blob."""

    h: float
    kappa: float
    energy: float
    trace: float
    field_energy: float
    el_residual: float
    iteration: int
    mixing: float
    converged: bool
    restarted: bool = False
    smoothed_energy: float | None = None
    eigenvalue_count: int = 0
    history: list[HistoryEntry] = Field(default_factory=list)
