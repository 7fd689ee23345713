"""Evaluate the Weyl expressions of the configured potential."""

import typer

from paulilab.cli.common import (
    ConfigOption,
    HOption,
    OutOption,
    command_context,
    resolve_experiment,
)
from paulilab.cli.ui import SpectrumFormatter, constants_line, console, success
from paulilab.repositories import JsonStateRepository
from paulilab.services.sweep import sample_experiment_potential
from paulilab.services.weyl import weyl_report

app = typer.Typer(
    help="Evaluate Weyl(tau), Weyl_1 and the corrected Weyl_1*",
    epilog="""
Examples:
  # Every h of the configuration
  $ paulilab weyl --config experiment.json

  # One h, counting function at tau = -0.1, saved as JSON
  $ paulilab weyl --config experiment.json --h 0.5 --tau -0.1 --out runs/weyl
    """,
)


@app.callback(invoke_without_command=True)
def weyl(
    config: ConfigOption = None,
    h: HOption = None,
    tau: float = typer.Option(0.0, "--tau", help="Energy level of Weyl(tau)"),
    out: OutOption = None,
):
    """Evaluate the Weyl expressions for each h."""
    with command_context():
        experiment = resolve_experiment(config)
        V = sample_experiment_potential(experiment)
        scale = experiment.scale
        h_values = [h] if h is not None else experiment.h_values
        summaries = [
            weyl_report(V, value, tau, scale.kappa1, scale.kappa2).summary() for value in h_values
        ]
        SpectrumFormatter.display_weyl(summaries)
        console.print(constants_line(kappa1=scale.kappa1, kappa2=scale.kappa2))
        if out is not None:
            repo = JsonStateRepository(out / "weyl.json")
            repo.save({"weyl": [s.model_dump(mode="json") for s in summaries]})
            success(f"Saved {repo.path}")
