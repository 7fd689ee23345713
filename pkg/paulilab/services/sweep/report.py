"""Plot-ready comparison of measured energies with Weyl expressions and predictions."""

import csv
import logging
from pathlib import Path

from paulilab.exceptions import StateSaveError
from paulilab.models.constants import INDEX_COLUMNS
from paulilab.models.domain.sweep import SweepRecord

logger = logging.getLogger(__name__)

REPORT_COLUMNS: tuple[str, ...] = INDEX_COLUMNS + (
    "trace_free",
    "trace_error",
    "energy_error",
    "energy_error_corr",
    "localized_error",
    "localized_error_corr",
    "predicted_remainder",
    "regime",
    "kappa1",
    "kappa2",
    "C",
    "c",
    "epsilon",
)


def report_row(record: SweepRecord) -> dict[str, object]:
    """One report row; every value is a field of the record or a difference of two."""
    prediction = record.prediction
    localized = record.localized
    row: dict[str, object] = dict(record.index_row())
    row.update(
        trace_free=record.trace_free,
        trace_error=abs(record.trace_free - record.weyl1),
        energy_error=abs(record.energy - record.weyl1),
        energy_error_corr=abs(record.energy - record.weyl1_corr),
        localized_error=None if localized is None else abs(localized.trace - localized.weyl),
        localized_error_corr=(
            None
            if localized is None or record.localized_weyl_corrected is None
            else abs(localized.trace - record.localized_weyl_corrected)
        ),
        predicted_remainder=None if prediction is None else prediction.value,
        regime=None if prediction is None else prediction.regime.value,
        kappa1=record.kappa1,
        kappa2=record.kappa2,
        C=None if prediction is None else prediction.C,
        c=None if prediction is None else prediction.c,
        epsilon=None if prediction is None else prediction.epsilon,
    )
    return row


def report_rows(records: list[SweepRecord]) -> list[dict[str, object]]:
    """Rows ordered by kappa, then decreasing h."""
    return [report_row(r) for r in sorted(records, key=lambda r: (r.kappa, -r.h))]


def write_report_csv(records: list[SweepRecord], path: Path) -> Path:
    """Write the report CSV; a header-only file when there are no records.

    Raises:
        StateSaveError: If the file cannot be written.
    """
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(REPORT_COLUMNS))
            writer.writeheader()
            for row in report_rows(records):
                writer.writerow({k: "" if v is None else v for k, v in row.items()})
    except OSError as e:
        raise StateSaveError(str(path), str(e)) from e
    logger.info("Wrote report with %d rows to %s", len(records), path)
    return path
