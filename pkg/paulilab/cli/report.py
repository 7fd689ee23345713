"""Summary table and plot-ready CSV of a sweep."""

import typer

from paulilab.cli.common import ConfigOption, OutOption, command_context, resolve_experiment
from paulilab.cli.ui import SweepFormatter, constants_line, console, info, success
from paulilab.models.constants import REPORT_CSV_FILENAME
from paulilab.repositories import SweepRepository
from paulilab.services.sweep import report_rows, write_report_csv

app = typer.Typer(
    help="Compare E(A*) with Weyl_1, Weyl_1* and the predicted remainders",
    epilog="""
Examples:
  $ paulilab report --out runs/gauss
    """,
)


@app.callback(invoke_without_command=True)
def report(config: ConfigOption = None, out: OutOption = None):
    """Print the report table and write report.csv; an empty sweep gives an empty table."""
    with command_context():
        experiment = resolve_experiment(config, out=out, required=False)
        repository = SweepRepository(experiment.output_dir)
        records = repository.records()
        SweepFormatter.display_report(report_rows(records))
        if not records:
            info(f"No records in {repository.root}")
        else:
            scale = experiment.scale
            console.print(
                constants_line(
                    kappa1=scale.kappa1,
                    kappa2=scale.kappa2,
                    C=scale.C,
                    c=scale.c,
                    epsilon=scale.epsilon,
                )
            )
        path = write_report_csv(records, repository.root / REPORT_CSV_FILENAME)
        success(f"Saved {path}")
