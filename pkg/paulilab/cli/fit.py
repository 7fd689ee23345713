"""Fit remainder exponents over sweep records."""

import csv
from pathlib import Path

import typer

from paulilab.cli.common import ConfigOption, OutOption, command_context, resolve_experiment
from paulilab.cli.ui import SweepFormatter, success, warning
from paulilab.exceptions import InsufficientDataError, StateSaveError
from paulilab.models.constants import FIT_CSV_FILENAME, FIT_FILENAME
from paulilab.models.domain.scaling import FitReport
from paulilab.models.enums import FitTarget
from paulilab.repositories import JsonStateRepository, SweepRepository
from paulilab.services.scalelab import fit_exponent
from paulilab.services.scalelab.fitting import MIN_FIT_POINTS

app = typer.Typer(
    help="Fit |error| ~ C h^-p over the records of a sweep",
    epilog="""
Examples:
  # Free trace against Weyl_1, one fit per kappa
  $ paulilab fit --out runs/gauss

  # Minimized energy against the corrected Weyl_1 at one coupling
  $ paulilab fit --out runs/gauss --target energy_corrected --kappa 0.5
    """,
)

FIT_COLUMNS = ("target", "kappa", "fit", "exponent", "constant", "residual", "points", "dropped")


def _write_fit_csv(reports: list[FitReport], path: Path) -> None:
    try:
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(FIT_COLUMNS)
            for report in reports:
                kappa = "" if report.kappa is None else report.kappa
                fits = [("full", report.full, "")]
                if report.trimmed is not None:
                    dropped = " ".join(f"{h:g}" for h in report.dropped)
                    fits.append(("trimmed", report.trimmed, dropped))
                for label, fit, dropped in fits:
                    writer.writerow(
                        [
                            report.target.value,
                            kappa,
                            label,
                            fit.exponent,
                            fit.constant,
                            fit.residual,
                            fit.points,
                            dropped,
                        ]
                    )
    except OSError as e:
        raise StateSaveError(str(path), str(e)) from e


@app.callback(invoke_without_command=True)
def fit(
    config: ConfigOption = None,
    out: OutOption = None,
    target: FitTarget | None = typer.Option(None, "--target", help="Error quantity to fit"),
    kappa: float | None = typer.Option(None, "--kappa", help="Only this coupling"),
):
    """Fit one exponent per coupling; fewer than three usable h is an error."""
    with command_context():
        experiment = resolve_experiment(config, out=out, required=False)
        options = experiment.fit
        chosen = target or options.target
        repository = SweepRepository(experiment.output_dir)
        records = repository.records()
        couplings = [kappa] if kappa is not None else sorted({r.kappa for r in records})
        if not couplings:
            raise InsufficientDataError(0, MIN_FIT_POINTS)

        reports: list[FitReport] = []
        for value in couplings:
            try:
                reports.append(fit_exponent(records, chosen, options, kappa=value))
            except InsufficientDataError as e:
                if len(couplings) == 1:
                    raise
                warning(f"kappa={value:g}: {e}")
        if not reports:
            raise InsufficientDataError(0, MIN_FIT_POINTS)

        for report in reports:
            SweepFormatter.display_fit(report)
            if report.trimmed is not None:
                warning("Large-h points look preasymptotic; prefer the trimmed fit")

        repo = JsonStateRepository(repository.root / FIT_FILENAME)
        repo.save({"fits": [r.model_dump(mode="json") for r in reports]})
        _write_fit_csv(reports, repository.root / FIT_CSV_FILENAME)
        success(f"Saved {repo.path}")
