"""Progress display for sweeps."""

from collections.abc import Iterator
from contextlib import contextmanager

from rich.progress import Progress

from paulilab.core.progress import progress_columns
from paulilab.models.domain.sweep import SweepPoint
from paulilab.services.sweep import PointStatus
from paulilab.services.sweep.runner import ProgressCallback


@contextmanager
def sweep_progress(total: int, description: str = "Sweep") -> Iterator[ProgressCallback]:
    """A progress bar advanced once per finished, skipped or failed point.

    Yields:
        Callback for ``run_sweep``'s ``on_progress``.
    """
    with Progress(*progress_columns()) as progress:
        task = progress.add_task(description, total=total)

        def advance(point: SweepPoint, status: PointStatus) -> None:
            if status is PointStatus.FAILED:
                progress.console.print(f"[red]✗ h={point.h:g} kappa={point.kappa:g} failed[/red]")
            progress.advance(task)

        yield advance
