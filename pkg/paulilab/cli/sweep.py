"""Run the (h, kappa) sweep."""

import typer

from paulilab.cli.common import (
    ConfigOption,
    OutOption,
    ResumeOption,
    SeedOption,
    WorkersOption,
    command_context,
    load_settings,
    resolve_experiment,
)
from paulilab.cli.ui import error, info, success, sweep_progress, warning
from paulilab.models.constants import EXIT_NUMERICAL
from paulilab.repositories import SweepRepository
from paulilab.services.sweep import build_plan, run_sweep

app = typer.Typer(
    help="Minimize at every (h, kappa) point and persist one record per point",
    epilog="""
Examples:
  # Sequential sweep into the configured output directory
  $ paulilab sweep --config experiment.json

  # Four points at a time
  $ paulilab sweep --config experiment.json --out runs/gauss --workers 4

  # Continue after an interruption; completed points are skipped
  $ paulilab sweep --config experiment.json --out runs/gauss --resume
    """,
)


@app.callback(invoke_without_command=True)
def sweep(
    config: ConfigOption = None,
    out: OutOption = None,
    workers: WorkersOption = None,
    seed: SeedOption = None,
    resume: ResumeOption = False,
):
    """Run every planned point, writing records as they complete."""
    with command_context():
        experiment = resolve_experiment(config, seed, out)
        concurrency = workers or load_settings(config).workers
        repository = SweepRepository(experiment.output_dir)
        total = len(build_plan(experiment).points)
        info(f"Sweeping {total} points into {repository.root} with {concurrency} worker(s)")

        with sweep_progress(total) as on_progress:
            summary = run_sweep(experiment, repository, concurrency, resume, on_progress)

        if summary.skipped:
            info(f"Skipped {len(summary.skipped)} completed point(s)")
        for point, reason in summary.failed:
            error(f"h={point.h:g} kappa={point.kappa:g}: {reason}")
        if not summary.ok:
            warning(f"{len(summary.failed)} of {total} point(s) failed; rerun with --resume")
            raise typer.Exit(EXIT_NUMERICAL)
        success(f"Completed {len(summary.completed)} point(s)")
