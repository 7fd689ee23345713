"""Localization identities and localized energies."""

from pathlib import Path

import typer

from paulilab.cli.common import (
    ConfigOption,
    HOption,
    KappaOption,
    OutOption,
    SeedOption,
    command_context,
    load_vector_field,
    resolve_experiment,
)
from paulilab.cli.ui import LocalizeFormatter, success, warning
from paulilab.models.constants import ISM_TOLERANCE
from paulilab.repositories import JsonStateRepository
from paulilab.services.fields import VectorField, make_cutoff
from paulilab.services.localize import (
    build_partition,
    ism_check,
    localized_energy,
    subadditivity_check,
)
from paulilab.services.pauli import assemble
from paulilab.services.selfgen import energy_localized
from paulilab.services.spectra import negative_spectrum
from paulilab.services.sweep import sample_experiment_potential
from paulilab.services.weyl import weyl1_local

app = typer.Typer(
    help="Check the ISM identity and compute psi-localized energies",
    epilog="""
Examples:
  # Partition of the configured scale, cutoff from the configuration
  $ paulilab localize --config experiment.json --h 0.6

  # Localize with a stored minimizer and a finer partition
  $ paulilab localize --config experiment.json --field runs/min/A.bin --gamma 1.0
    """,
)


@app.callback(invoke_without_command=True)
def localize(
    config: ConfigOption = None,
    h: HOption = None,
    kappa: KappaOption = None,
    gamma: float | None = typer.Option(None, "--gamma", help="Partition scale"),
    field: Path | None = typer.Option(None, "--field", help="Vector potential blob (.bin)"),
    subadditivity: bool = typer.Option(
        False, "--subadditivity", help="Also compare Tr^- of the partition sum with its members"
    ),
    seed: SeedOption = None,
    out: OutOption = None,
):
    """Partition identities always; localized energy when the cutoff is enabled."""
    with command_context():
        experiment = resolve_experiment(config, seed)
        h_value = h if h is not None else experiment.h_values[0]
        kappa_value = kappa if kappa is not None else experiment.kappa_values[0]
        V = sample_experiment_potential(experiment)
        grid = V.grid
        A = load_vector_field(field, grid) if field is not None else VectorField.zeros(grid)
        H = assemble(grid, A, V, h_value, seed=experiment.seed)
        solver = experiment.solver

        scale = gamma or experiment.partition.gamma or max(grid.box)
        partition = build_partition(grid, scale)
        ism = ism_check(H, partition, experiment.partition.trials, experiment.seed)
        if ism.defect > ISM_TOLERANCE:
            warning(f"ISM defect {ism.defect:.2e} exceeds {ISM_TOLERANCE:g}")
        sub = (
            subadditivity_check(H, partition, solver.kind, solver, experiment.seed)
            if subadditivity
            else None
        )

        energy = None
        total = None
        if experiment.cutoff.enabled:
            c = experiment.cutoff
            cutoff = make_cutoff(grid, c.center, c.radius, c.taper, c.epsilon)
            S = negative_spectrum(H, 0.0, solver.kind, solver, experiment.seed)
            energy = localized_energy(
                H, S, cutoff.psi, weyl1_local(V, h_value), solver.kind, solver, experiment.seed
            )
            total = energy_localized(
                A, V, h_value, kappa_value, cutoff.psi, solver, experiment.seed
            )

        LocalizeFormatter.display(ism, sub, energy)
        if out is not None:
            repo = JsonStateRepository(out / "localize.json")
            repo.save(
                {
                    "h": h_value,
                    "kappa": kappa_value,
                    "gamma": scale,
                    "members": len(partition),
                    "ism": ism.model_dump(mode="json"),
                    "subadditivity": None if sub is None else sub.model_dump(mode="json"),
                    "localized": None if energy is None else energy.model_dump(mode="json"),
                    "energy_localized": total,
                }
            )
            success(f"Saved {repo.path}")
