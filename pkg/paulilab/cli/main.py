"""paulilab - numerical lab for the self-generated magnetic field Pauli problem."""

import typer

from paulilab.cli import dynamics, fit, localize, minimize, plan, report, spectrum, sweep, weyl


def create_app() -> typer.Typer:
    """Build the command tree."""
    app = typer.Typer(
        no_args_is_help=True,
        help="paulilab - semiclassical asymptotics of the Pauli operator with self-generated field",
        epilog="""
Quick Start:
  1. paulilab plan --out runs/demo        # Write an explicit configuration
  2. paulilab sweep --config runs/demo/experiment.json --out runs/demo
  3. paulilab report --out runs/demo      # Compare E(A*) with Weyl_1

Single computations:
  paulilab weyl | spectrum | minimize | localize | dynamics

Run 'paulilab COMMAND --help' for more information on a command.
        """,
    )

    app.add_typer(weyl.app, name="weyl")
    app.add_typer(spectrum.app, name="spectrum")
    app.add_typer(minimize.app, name="minimize")
    app.add_typer(localize.app, name="localize")
    app.add_typer(dynamics.app, name="dynamics")
    app.add_typer(plan.app, name="plan")
    app.add_typer(sweep.app, name="sweep")
    app.add_typer(fit.app, name="fit")
    app.add_typer(report.app, name="report")
    return app


def run_cli():
    """Main CLI entry point."""
    create_app()()


if __name__ == "__main__":
    run_cli()
