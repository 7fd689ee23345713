"""Rich progress layout shared by long-running commands."""

from rich.progress import BarColumn, MofNCompleteColumn, TextColumn, TimeRemainingColumn


def progress_columns() -> list:
    """Columns of every progress bar in the lab."""
    return [
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeRemainingColumn(),
    ]
