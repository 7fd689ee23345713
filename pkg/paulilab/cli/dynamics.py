"""Measure of periodic points of the classical flow."""

import csv
from pathlib import Path

import typer

from paulilab.cli.common import ConfigOption, OutOption, SeedOption, command_context, load_settings
from paulilab.cli.ui import SweepFormatter, success
from paulilab.exceptions import StateSaveError
from paulilab.models.domain.dynamics import SampleOutcome
from paulilab.models.enums import Preset
from paulilab.models.settings import DynamicsOptions
from paulilab.repositories import JsonStateRepository
from paulilab.services.dynamics import FlowConfig, periodic_measure_samples, scan_periodic_measure

app = typer.Typer(
    help="Estimate the measure of rho-periodic points on an energy shell",
    epilog="""
Examples:
  # Harmonic oscillator, where every orbit is periodic
  $ paulilab dynamics --preset harmonic --horizon 4 --rho 0.01

  # Anharmonic perturbation over a (T, rho) grid
  $ paulilab dynamics --preset anharmonic --horizon 2 --horizon 8 --rho 0.05 --rho 0.01

  # Keep the sampled initial conditions
  $ paulilab dynamics --config experiment.json --out runs/flow
    """,
)

SAMPLE_COLUMNS = ("x1", "x2", "x3", "xi1", "xi2", "xi3", "weight", "return_time")


def _write_samples(outcomes: list[SampleOutcome], path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(SAMPLE_COLUMNS)
            for o in outcomes:
                writer.writerow(
                    [*o.x, *o.xi, o.weight, "" if o.return_time is None else o.return_time]
                )
    except OSError as e:
        raise StateSaveError(str(path), str(e)) from e


@app.callback(invoke_without_command=True)
def dynamics(
    config: ConfigOption = None,
    preset: Preset | None = typer.Option(None, "--preset", help="Analytic potential"),
    tau: float | None = typer.Option(None, "--tau", help="Energy of the shell"),
    horizon: list[float] | None = typer.Option(None, "--horizon", help="Time horizon T"),
    rho: list[float] | None = typer.Option(None, "--rho", help="Return radius"),
    samples: int | None = typer.Option(None, "--samples", min=100, help="Shell samples"),
    seed: SeedOption = None,
    out: OutOption = None,
):
    """Sample the shell {V + |xi|^2 = tau} and count orbits that come back."""
    with command_context():
        options = load_settings(config, required=False).experiment.dynamics
        overrides = {
            "preset": preset,
            "tau": tau,
            "samples": samples,
            "seed": seed,
            "horizon": horizon[0] if horizon else None,
            "rho": min(rho) if rho else None,
            "step": min(options.step, min(rho) / 10) if rho else None,
        }
        updates = {key: value for key, value in overrides.items() if value is not None}
        options = DynamicsOptions.model_validate({**options.model_dump(), **updates})
        flow_config = FlowConfig.from_options(options)

        horizons = horizon or [options.horizon]
        radii = rho or [options.rho]
        outcomes: list[SampleOutcome] = []
        if len(horizons) == 1 and len(radii) == 1:
            single = flow_config.with_limits(horizons[0], radii[0])
            measure, outcomes = periodic_measure_samples(single)
            measures = [measure]
        else:
            measures = scan_periodic_measure(flow_config, horizons, radii)
        SweepFormatter.display_measures(measures)

        if out is not None:
            repo = JsonStateRepository(out / "dynamics.json")
            repo.save(
                {
                    "options": options.model_dump(mode="json"),
                    "measures": [m.model_dump(mode="json") for m in measures],
                }
            )
            if outcomes:
                _write_samples(outcomes, out / "samples.csv")
            success(f"Saved {repo.path}")
