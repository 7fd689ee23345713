from enum import Enum


class Preset(str, Enum):
    """Named potentials, shared by grid sampling and the classical flow."""

    CONSTANT = "constant"
    GAUSSIAN_WELL = "gaussian_well"
    ANHARMONIC = "anharmonic"
    HARMONIC = "harmonic"
    HARMONIC_CAPPED = "harmonic_capped"
    FREE = "free"
    CUSTOM = "custom"


class SolverKind(str, Enum):
    """Eigensolver selection."""

    DENSE = "dense"
    ITERATIVE = "iterative"
    AUTO = "auto"


class RegimeTag(str, Enum):
    """Coupling regime of a predicted remainder."""

    SUBCRITICAL = "subcritical"  # kappa <= 1
    MODERATE = "moderate"  # 1 < kappa <= kappa*
    LARGE = "large"  # kappa* < kappa, kappa h <= 1/2
    NEAR_CRITICAL = "near-critical"  # kappa h > 1/2


class FitTarget(str, Enum):
    """Error quantity fitted against h."""

    TRACE = "trace"  # |Tr- H_{0,V} - Weyl1|
    ENERGY = "energy"  # |E(A*) - Weyl1|
    ENERGY_CORRECTED = "energy_corrected"  # |E(A*) - Weyl1*|
    LOCALIZED = "localized"  # |E_psi - int Weyl1 psi^2|, O(1/h) form
    LOCALIZED_CORRECTED = "localized_corrected"  # |E_psi - int Weyl1* psi^2|, o(1/h) form


class Integrator(str, Enum):
    """Symplectic integrators for the classical flow."""

    LEAPFROG = "leapfrog"
    YOSHIDA4 = "yoshida4"
