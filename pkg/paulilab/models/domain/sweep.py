"""Sweep plans and the per-point records they produce."""

from datetime import datetime

from pydantic import BaseModel, Field

from paulilab.models.constants import INDEX_COLUMNS
from paulilab.models.domain.localize import LocalizedEnergy
from paulilab.models.domain.scaling import RemainderPrediction
from paulilab.models.domain.selfgen import Diagnostics, InequalityReport
from paulilab.models.settings import ExperimentConfig


class SweepPoint(BaseModel):
    """One (h, kappa) of a plan with its seed and content hash."""

    h: float
    kappa: float
    seed: int
    key: str = Field(..., description="hash of the experiment config and the point")


class SweepPlan(BaseModel):
    """A fully explicit experiment: every default spelled out, every point listed."""

    config: ExperimentConfig
    points: list[SweepPoint]
    created_at: datetime = Field(default_factory=datetime.now)


class SweepRecord(BaseModel):
    """Everything measured at one sweep point.

    ``trace_free`` is Tr^- H_{0,V}; ``trace_minus`` is Tr^- H_{A*,V}.
    """

    h: float
    kappa: float
    seed: int
    key: str
    trace_free: float
    trace_minus: float
    energy: float = Field(..., description="E(A*)")
    weyl1: float
    weyl1_corr: float
    kappa1: float = 0.0
    kappa2: float = 0.0
    field_energy: float = Field(..., description="int |dA*|^2")
    el_residual: float
    converged: bool
    restarted: bool = False
    iterations: int = 0
    diagnostics: Diagnostics
    inequalities: InequalityReport | None = None
    localized: LocalizedEnergy | None = None
    localized_weyl_corrected: float | None = Field(default=None, description="int Weyl_1* psi^2")
    prediction: RemainderPrediction | None = None
    started_at: datetime
    finished_at: datetime

    def index_row(self) -> dict[str, float | bool]:
        """The fixed index columns."""
        values: dict[str, float | bool] = {
            "h": self.h,
            "kappa": self.kappa,
            "trace_minus": self.trace_minus,
            "energy": self.energy,
            "weyl1": self.weyl1,
            "weyl1_corr": self.weyl1_corr,
            "field_energy": self.field_energy,
            "mu": self.diagnostics.mu,
            "el_residual": self.el_residual,
            "converged": self.converged,
        }
        return {column: values[column] for column in INDEX_COLUMNS}
