"""Grids, fields, spectral differential operators, potentials and cutoffs."""

from paulilab.services.fields.cutoff import CutoffAudit, CutoffSpec, audit_profile, make_cutoff
from paulilab.services.fields.fields import ScalarField, SpinorField, VectorField
from paulilab.services.fields.grid import Grid, build_grid
from paulilab.services.fields.potentials import AnalyticPotential, make_potential, sample_potential
from paulilab.services.fields.spectral import (
    coulomb_project,
    curl,
    divergence,
    grad_energy,
    gradient,
    laplacian,
)

__all__ = [
    "AnalyticPotential",
    "CutoffAudit",
    "CutoffSpec",
    "Grid",
    "ScalarField",
    "SpinorField",
    "VectorField",
    "audit_profile",
    "build_grid",
    "coulomb_project",
    "curl",
    "divergence",
    "grad_energy",
    "gradient",
    "laplacian",
    "make_cutoff",
    "make_potential",
    "sample_potential",
]
