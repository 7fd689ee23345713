"""Negative spectrum of the Pauli operator."""

from pathlib import Path

import typer

from paulilab.cli.common import (
    ConfigOption,
    HOption,
    OutOption,
    SeedOption,
    command_context,
    load_vector_field,
    resolve_experiment,
)
from paulilab.cli.ui import SpectrumFormatter, success, warning
from paulilab.models.enums import SolverKind
from paulilab.repositories import JsonStateRepository
from paulilab.services.fields import VectorField
from paulilab.services.pauli import assemble
from paulilab.services.spectra import negative_spectrum, trace_minus_bounds
from paulilab.services.sweep import sample_experiment_potential

app = typer.Typer(
    help="Compute the spectrum of H_{A,V} below a threshold",
    epilog="""
Examples:
  # A = 0 at the first configured h
  $ paulilab spectrum --config experiment.json

  # A stored minimizer, dense solver
  $ paulilab spectrum -c experiment.json --h 0.6 --field runs/points/<key>/A.bin --solver dense
    """,
)


@app.callback(invoke_without_command=True)
def spectrum(
    config: ConfigOption = None,
    h: HOption = None,
    tau: float = typer.Option(0.0, "--tau", help="Threshold"),
    solver: SolverKind | None = typer.Option(None, "--solver", help="Override the solver kind"),
    field: Path | None = typer.Option(None, "--field", help="Vector potential blob (.bin)"),
    seed: SeedOption = None,
    out: OutOption = None,
):
    """Eigenvalues below tau and Tr^-."""
    with command_context():
        experiment = resolve_experiment(config, seed)
        V = sample_experiment_potential(experiment)
        grid = V.grid
        h_value = h if h is not None else experiment.h_values[0]
        A = VectorField.zeros(grid)
        if field is not None:
            A = load_vector_field(field, grid)
        options = experiment.solver
        kind = solver or options.kind
        H = assemble(grid, A, V, h_value, seed=experiment.seed)
        S = negative_spectrum(H, tau, kind, options, experiment.seed)
        if not S.usable:
            warning("Solver did not converge; the spectrum below is partial")
        trace = trace_minus_bounds(S) if tau == 0 and S.usable else None
        total = float(S.eigenvalues.sum())
        SpectrumFormatter.display_spectrum(S.eigenvalues, total, S.certified)
        if trace is not None and trace.ambiguous:
            warning(
                f"Eigenvalues within {S.gap_tolerance:g} of 0: Tr^- lies in "
                f"[{trace.inclusion:.12g}, {trace.exclusion:.12g}]"
            )
        if out is not None:
            repo = JsonStateRepository(out / "spectrum.json")
            repo.save(
                {
                    "h": h_value,
                    "tau": tau,
                    "solver": S.solver.value,
                    "eigenvalues": S.eigenvalues.tolist(),
                    "ambiguous": S.ambiguous_values.tolist(),
                    "residuals": S.residuals.tolist(),
                    "usable": S.usable,
                    "certified": S.certified,
                    "sum": total,
                }
            )
            success(f"Saved {repo.path}")
