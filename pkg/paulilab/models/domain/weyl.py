"""Weyl-expression records."""

from pydantic import BaseModel, Field


class CorrectedWeyl(BaseModel):
    """Weyl_1 with the h^-1 gradient correction, evaluated in two forms.

    The Laplacian form uses both constants; the integrated-by-parts form uses
    the single constant kappa = kappa1 - (2/3) kappa2. On a torus the two agree
    up to quadrature error.
    """

    value: float = Field(
        ..., description="Weyl_1 + h^-1 [k1 int V+^3/2 dV + k2 int V+^1/2 |grad V|^2]"
    )
    integrated: float = Field(..., description="Weyl_1 + kappa h^-1 int V+^3/2 Laplacian V")
    kappa: float
    discrepancy: float = Field(..., description="|value - integrated|")


class WeylSummary(BaseModel):
    """Serializable part of a WeylReport."""

    h: float
    tau: float
    weyl_tau: float
    weyl1: float
    corrected: float
    kappa1: float
    kappa2: float
    kappa: float
    quadrature_error: float = Field(..., description="|closed form - tau quadrature| for Weyl_1")
