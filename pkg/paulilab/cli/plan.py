"""Write a self-describing sweep plan."""

import typer

from paulilab.cli.common import (
    ConfigOption,
    OutOption,
    SeedOption,
    command_context,
    resolve_experiment,
)
from paulilab.cli.ui import SweepFormatter, constants_line, console, success
from paulilab.core.config_io import write_experiment_config
from paulilab.repositories import JsonStateRepository, SweepRepository
from paulilab.services.scalelab import alpha_recurrence, kappa_star
from paulilab.services.sweep import build_plan, point_prediction

app = typer.Typer(
    help="Plan a sweep and write its configuration with every default explicit",
    epilog="""
Examples:
  # Show the plan of the default experiment
  $ paulilab plan

  # Archive a plan next to the results of the sweep that follows it
  $ paulilab plan --config experiment.json --out runs/gauss
  $ paulilab sweep --config runs/gauss/experiment.json --out runs/gauss
    """,
)

EXPERIMENT_FILENAME = "experiment.json"
SCALING_FILENAME = "scaling.json"


@app.callback(invoke_without_command=True)
def plan(config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None):
    """List the sweep points with their regime and predicted remainder."""
    with command_context():
        experiment = resolve_experiment(config, seed, out, required=False)
        sweep_plan = build_plan(experiment)
        scale = experiment.scale
        predictions = [point_prediction(experiment, p.h, p.kappa) for p in sweep_plan.points]
        SweepFormatter.display_plan(sweep_plan.points, predictions)

        recurrence = alpha_recurrence(scale.alpha, scale.steps)
        console.print(
            f"alpha iterates from {recurrence.alpha0}: "
            + ", ".join(str(a) for a in recurrence.alphas)
            + f" (first negative at step {recurrence.first_negative or '-'})"
        )
        console.print(constants_line(C=scale.C, c=scale.c, epsilon=scale.epsilon))

        if out is not None:
            SweepRepository(out).save_plan(sweep_plan)
            write_experiment_config(experiment, out / EXPERIMENT_FILENAME)
            JsonStateRepository(out / SCALING_FILENAME).save(
                {
                    "alpha_recurrence": recurrence.summary(),
                    "kappa_star": {
                        str(h): kappa_star(h, scale.epsilon) for h in experiment.h_values
                    },
                    "predictions": [
                        None if p is None else p.model_dump(mode="json") for p in predictions
                    ],
                }
            )
            success(f"Saved plan of {len(sweep_plan.points)} points to {out}")
