"""Localized traces and the identities relating them."""

import logging

import numpy as np

from paulilab.core.protocols import HermitianOperator
from paulilab.models.constants import ISM_TOLERANCE
from paulilab.models.domain.localize import IsmReport, LocalizedEnergy, SubadditivityReport
from paulilab.models.enums import SolverKind
from paulilab.models.settings import SolverOptions
from paulilab.services.fields.fields import ScalarField
from paulilab.services.localize.operators import LocalizedOperator, PartitionSumOperator
from paulilab.services.localize.partition import Partition
from paulilab.services.spectra import SpectralResult, density_e1, negative_spectrum, trace_minus

logger = logging.getLogger(__name__)


def localized_spectrum(
    H: HermitianOperator,
    psi: ScalarField,
    solver: SolverKind = SolverKind.AUTO,
    options: SolverOptions | None = None,
    seed: int = 0,
) -> SpectralResult:
    """Negative spectrum of psi H psi."""
    return negative_spectrum(LocalizedOperator(H, psi), 0.0, solver, options, seed)


def localized_trace_minus(
    H: HermitianOperator,
    psi: ScalarField,
    solver: SolverKind = SolverKind.AUTO,
    options: SolverOptions | None = None,
    seed: int = 0,
) -> float:
    """Tr^-(psi H psi).

    Raises:
        IncompleteSpectrumError: If the solve ends unusable.
    """
    if not np.any(psi.values):
        return 0.0
    return trace_minus(localized_spectrum(H, psi, solver, options, seed))


def localized_energy(
    H: HermitianOperator,
    S: SpectralResult,
    psi: ScalarField,
    weyl_local: ScalarField,
    solver: SolverKind = SolverKind.AUTO,
    options: SolverOptions | None = None,
    seed: int = 0,
) -> LocalizedEnergy:
    """Tr^-(psi H psi) next to int e_1 psi^2 (from S, the spectrum of H) and int Weyl_1 psi^2."""
    psi2 = ScalarField(psi.grid, psi.values**2)
    trace = localized_trace_minus(H, psi, solver, options, seed)
    weyl = psi.grid.integrate(weyl_local.values * psi2.values)
    return LocalizedEnergy(
        trace=trace,
        lower=density_e1(S, psi2),
        weyl=weyl,
        error=localization_error(trace, weyl),
    )


def localization_error(localized_trace: float, weyl_localized: float) -> float:
    """``(int Weyl_1 psi^2 - E_psi)_+``."""
    return max(weyl_localized - localized_trace, 0.0)


def _random_spinors(dimension: int, count: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dimension, count)) + 1j * rng.standard_normal((dimension, count))


def ism_check(
    H: HermitianOperator, partition: Partition, trials: int = 20, seed: int = 0
) -> IsmReport:
    """Largest relative defect of the ISM localization identity over random spinors.

    Each member contributes ``psi H psi u + 1/2 [[H, psi], psi] u`` with the
    double commutator expanded as ``H psi^2 u - 2 psi H psi u + psi^2 H u``.
    """
    rng = np.random.default_rng(seed)
    u = _random_spinors(H.dimension, trials, rng)
    hu = H.apply_flat(u)
    total = np.zeros_like(hu)
    for psi in partition.members:
        m = np.tile(psi.values.reshape(-1), 2)[:, None]
        psi_h_psi = m * H.apply_flat(m * u)
        double_commutator = H.apply_flat(m * m * u) - 2 * psi_h_psi + m * m * hu
        total += psi_h_psi + 0.5 * double_commutator
    defects = np.linalg.norm(hu - total, axis=0) / np.maximum(np.linalg.norm(hu, axis=0), 1e-300)
    report = IsmReport(
        defect=float(defects.max()),
        trials=trials,
        completeness_defect=partition.completeness_defect,
    )
    if report.defect > ISM_TOLERANCE and report.completeness_defect <= ISM_TOLERANCE:
        logger.warning("ISM defect %.2e on a complete partition", report.defect)
    return report


def subadditivity_check(
    H: HermitianOperator,
    partition: Partition,
    solver: SolverKind = SolverKind.AUTO,
    options: SolverOptions | None = None,
    seed: int = 0,
    tolerance: float = 1e-9,
) -> SubadditivityReport:
    """Compare Tr^- of the partition sum with the sum of the member traces."""
    summed = PartitionSumOperator(H, partition.members)
    combined = trace_minus(negative_spectrum(summed, 0.0, solver, options, seed))
    members = [localized_trace_minus(H, psi, solver, options, seed) for psi in partition.members]
    gap = combined - sum(members)
    holds = gap >= -tolerance * max(1.0, abs(combined))
    if not holds:
        logger.warning("Subadditivity violated by %.3e", -gap)
    return SubadditivityReport(combined=combined, members=members, gap=gap, holds=holds)
