"""Minimize the self-generated field energy at one (h, kappa)."""

import typer

from paulilab.cli.common import (
    ConfigOption,
    HOption,
    KappaOption,
    OutOption,
    SeedOption,
    command_context,
    resolve_experiment,
)
from paulilab.cli.ui import SelfgenFormatter, console, success, warning
from paulilab.models.constants import CHECKPOINT_FILENAME
from paulilab.repositories import FieldStore, JsonStateRepository
from paulilab.services.selfgen import diagnostics, inequality_suite, minimize
from paulilab.services.sweep import sample_experiment_potential

app = typer.Typer(
    help="Find the self-generated field minimizing E(A)",
    epilog="""
Examples:
  # First configured h and kappa
  $ paulilab minimize --config experiment.json

  # Save the minimizer as a binary blob and a CSV table
  $ paulilab minimize --config experiment.json --h 0.8 --kappa 0.5 --out runs/min --csv
    """,
)


@app.callback(invoke_without_command=True)
def minimize_command(
    config: ConfigOption = None,
    h: HOption = None,
    kappa: KappaOption = None,
    seed: SeedOption = None,
    out: OutOption = None,
    csv: bool = typer.Option(False, "--csv", help="Also write the field as CSV"),
):
    """Run the damped fixed-point minimization and check the a-priori bounds."""
    with command_context():
        experiment = resolve_experiment(config, seed)
        h_value = h if h is not None else experiment.h_values[0]
        kappa_value = kappa if kappa is not None else experiment.kappa_values[0]
        V = sample_experiment_potential(experiment)
        with console.status(f"Minimizing at h={h_value:g}, kappa={kappa_value:g}"):
            state = minimize(
                V,
                h_value,
                kappa_value,
                experiment.minimizer,
                experiment.solver,
                experiment.smoothing,
                seed=experiment.seed,
            )
        checkpoint = state.checkpoint()
        SelfgenFormatter.display_minimizer(checkpoint)
        if not state.converged:
            warning("Minimizer did not reach the residual tolerance")
        M = experiment.scale.M_ref
        if M is not None and M < 1.0 / h_value:
            warning(f"M_ref={M:g} is below 1/h; using 1/h")
            M = None
        diag = diagnostics(state.A, h_value, kappa_value, M)
        report = inequality_suite(state.spectrum, state.A, V, h_value, kappa_value, M)
        SelfgenFormatter.display_diagnostics(diag)
        SelfgenFormatter.display_inequalities(report)

        if out is not None:
            JsonStateRepository(out / CHECKPOINT_FILENAME).save_model(checkpoint)
            JsonStateRepository(out / "bounds.json").save(
                {
                    "diagnostics": diag.model_dump(mode="json"),
                    "inequalities": report.model_dump(mode="json"),
                }
            )
            store = FieldStore(out)
            store.save("A", state.A)
            if csv:
                store.export_csv("A", state.A)
            success(f"Saved minimizer to {out}")
