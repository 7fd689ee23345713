"""Rich tables for spectra, minimizations, sweeps, fits and flow measurements."""

import numpy as np
from rich.table import Table

from paulilab.cli.ui.console import console
from paulilab.models.domain.dynamics import PeriodicMeasure
from paulilab.models.domain.localize import IsmReport, LocalizedEnergy, SubadditivityReport
from paulilab.models.domain.scaling import FitReport, RemainderPrediction
from paulilab.models.domain.selfgen import Diagnostics, InequalityReport, MinimizerCheckpoint
from paulilab.models.domain.sweep import SweepPoint
from paulilab.models.domain.weyl import WeylSummary


def _table(title: str, *columns: str) -> Table:
    table = Table(title=title, show_header=True, header_style="bold cyan")
    for column in columns:
        table.add_column(column, justify="right" if column != columns[0] else "left")
    return table


def _number(value: float | None, spec: str = ".8g") -> str:
    return "-" if value is None else format(value, spec)


class SpectrumFormatter:
    """Weyl expressions and negative spectra."""

    @staticmethod
    def display_weyl(summaries: list[WeylSummary]) -> None:
        """One row per h."""
        table = _table(
            "Weyl expressions", "h", "tau", "Weyl(tau)", "Weyl_1", "Weyl_1*", "quadrature err"
        )
        for s in summaries:
            table.add_row(
                _number(s.h, "g"),
                _number(s.tau, "g"),
                _number(s.weyl_tau),
                _number(s.weyl1),
                _number(s.corrected),
                _number(s.quadrature_error, ".2e"),
            )
        console.print(table)

    @staticmethod
    def display_spectrum(
        eigenvalues: np.ndarray, trace: float, certified: bool | None, limit: int = 20
    ) -> None:
        """Lowest eigenvalues and their sum."""
        table = _table(f"Negative spectrum ({eigenvalues.size} eigenvalues)", "n", "lambda_n")
        for n, value in enumerate(eigenvalues[:limit]):
            table.add_row(str(n), _number(float(value), ".12g"))
        if eigenvalues.size > limit:
            table.add_row("...", "")
        console.print(table)
        console.print(f"Tr^- = {trace:.12g}   certified: {'-' if certified is None else certified}")


class SelfgenFormatter:
    """Minimizer results, diagnostics and a-priori bounds."""

    @staticmethod
    def display_minimizer(checkpoint: MinimizerCheckpoint) -> None:
        """Energy split and convergence."""
        table = _table("Minimization", "quantity", "value")
        table.add_row("h", _number(checkpoint.h, "g"))
        table.add_row("kappa", _number(checkpoint.kappa, "g"))
        table.add_row("E(A*)", _number(checkpoint.energy, ".12g"))
        table.add_row("Tr^- H", _number(checkpoint.trace, ".12g"))
        table.add_row("int |dA|^2", _number(checkpoint.field_energy, ".6e"))
        table.add_row("EL residual", _number(checkpoint.el_residual, ".3e"))
        table.add_row("iterations", str(checkpoint.iteration))
        table.add_row("converged", str(checkpoint.converged))
        if checkpoint.restarted:
            table.add_row("restarted", "returned A = 0")
        console.print(table)

    @staticmethod
    def display_diagnostics(diagnostics: Diagnostics) -> None:
        """Field size and regularity."""
        table = _table("Field diagnostics", "quantity", "value")
        for name, value in diagnostics.model_dump().items():
            table.add_row(name, _number(value, ".6g"))
        console.print(table)

    @staticmethod
    def display_inequalities(report: InequalityReport) -> None:
        """Both sides of each bound with the implied constant."""
        table = _table(
            f"A-priori bounds (h={report.h:g}, kappa={report.kappa:g})",
            "check",
            "lhs",
            "rhs scale",
            "implied C",
            "holds",
        )
        for check in report.checks:
            table.add_row(
                check.name,
                _number(check.lhs, ".6g"),
                _number(check.rhs_scale, ".6g"),
                _number(check.implied_constant, ".4g"),
                "[green]yes[/green]" if check.holds else "[red]no[/red]",
            )
        console.print(table)
        console.print(f"||A||_6 / ||dA|| = {report.sobolev_ratio:.4g}")


class LocalizeFormatter:
    """Localization identities and localized energies."""

    @staticmethod
    def display(
        ism: IsmReport,
        subadditivity: SubadditivityReport | None,
        energy: LocalizedEnergy | None,
    ) -> None:
        """All localization results of one run."""
        table = _table("Localization", "quantity", "value")
        table.add_row("ISM defect", _number(ism.defect, ".3e"))
        table.add_row("sum psi_j^2 - 1", _number(ism.completeness_defect, ".3e"))
        if subadditivity is not None:
            table.add_row("Tr^-(sum psi H psi)", _number(subadditivity.combined, ".10g"))
            table.add_row("sum Tr^-(psi H psi)", _number(sum(subadditivity.members), ".10g"))
            table.add_row("subadditivity gap", _number(subadditivity.gap, ".3e"))
        if energy is not None:
            table.add_row("Tr^-(psi H psi)", _number(energy.trace, ".10g"))
            table.add_row("int e_1 psi^2", _number(energy.lower, ".10g"))
            table.add_row("int Weyl_1 psi^2", _number(energy.weyl, ".10g"))
            table.add_row("(Weyl - E_psi)_+", _number(energy.error, ".3e"))
        console.print(table)


class SweepFormatter:
    """Plans, sweep records, fits and flow measurements."""

    @staticmethod
    def display_plan(
        points: list[SweepPoint], predictions: list[RemainderPrediction | None]
    ) -> None:
        """Planned points with their regime and predicted remainder."""
        table = _table("Sweep plan", "h", "kappa", "seed", "regime", "predicted", "key")
        for point, prediction in zip(points, predictions, strict=True):
            table.add_row(
                _number(point.h, "g"),
                _number(point.kappa, "g"),
                str(point.seed),
                "-" if prediction is None else prediction.regime.value,
                "-" if prediction is None else _number(prediction.value, ".4g"),
                point.key[:12],
            )
        console.print(table)

    @staticmethod
    def display_report(rows: list[dict[str, object]]) -> None:
        """Energies against Weyl_1 and Weyl_1* per point; an empty table for no rows."""
        table = _table(
            "Sweep report",
            "h",
            "kappa",
            "E(A*)",
            "Weyl_1",
            "Weyl_1*",
            "|E - Weyl_1|",
            "predicted",
            "regime",
            "conv",
        )
        for row in rows:
            table.add_row(
                _number(row["h"], "g"),  # type: ignore[arg-type]
                _number(row["kappa"], "g"),  # type: ignore[arg-type]
                _number(row["energy"], ".10g"),  # type: ignore[arg-type]
                _number(row["weyl1"], ".10g"),  # type: ignore[arg-type]
                _number(row["weyl1_corr"], ".10g"),  # type: ignore[arg-type]
                _number(row["energy_error"], ".4g"),  # type: ignore[arg-type]
                _number(row["predicted_remainder"], ".4g"),  # type: ignore[arg-type]
                str(row["regime"] or "-"),
                "yes" if row["converged"] else "no",
            )
        console.print(table)

    @staticmethod
    def display_fit(report: FitReport) -> None:
        """Full and trimmed fits."""
        title = f"Exponent fit: {report.target.value}"
        if report.kappa is not None:
            title += f" (kappa={report.kappa:g})"
        table = _table(title, "fit", "p", "constant", "residual", "points")
        fits = [("all points", report.full)]
        if report.trimmed is not None:
            fits.append((f"without h={report.dropped}", report.trimmed))
        for label, fit in fits:
            table.add_row(
                label,
                _number(fit.exponent, ".4f"),
                _number(fit.constant, ".4g"),
                _number(fit.residual, ".3g"),
                str(fit.points),
            )
        console.print(table)

    @staticmethod
    def display_measures(measures: list[PeriodicMeasure]) -> None:
        """Periodic-point estimates with their Wilson intervals."""
        table = _table(
            "Periodic-point measure", "T", "rho", "estimate", "95% interval", "returned", "drift"
        )
        for m in measures:
            table.add_row(
                _number(m.horizon, "g"),
                _number(m.rho, "g"),
                _number(m.estimate, ".4f"),
                f"[{m.lower:.4f}, {m.upper:.4f}]",
                f"{m.returned}/{m.samples}",
                _number(m.max_drift, ".1e"),
            )
        console.print(table)
        if measures:
            first = measures[0]
            console.print(f"shell volume at tau={first.tau:g}: {first.shell_volume:.6g}")
