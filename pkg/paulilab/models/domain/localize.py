"""Localization check records."""

from pydantic import BaseModel, Field


class IsmReport(BaseModel):
    """Relative defect of H = sum_j (psi_j H psi_j + 1/2 [[H, psi_j], psi_j])."""

    defect: float
    trials: int
    completeness_defect: float = Field(..., description="max |sum_j psi_j^2 - 1|")


class SubadditivityReport(BaseModel):
    """Both sides of Tr^-(sum_j psi_j H psi_j) >= sum_j Tr^-(psi_j H psi_j)."""

    combined: float
    members: list[float]
    gap: float = Field(
        ..., description="combined - sum(members); nonnegative when the inequality holds"
    )
    holds: bool


class LocalizedEnergy(BaseModel):
    """Localized trace against its e_1 lower estimate and the local Weyl_1."""

    trace: float
    lower: float = Field(..., description="int e_1(x, x, 0) psi^2")
    weyl: float = Field(..., description="int Weyl_1 psi^2")
    error: float = Field(..., description="(int Weyl_1 psi^2 - trace)_+")
