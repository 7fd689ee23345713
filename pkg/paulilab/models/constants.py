"""Constants used throughout paulilab."""

import math

APP_NAME = "paulilab"
CONFIG_FILENAME = ".paulilab.json"

# Persistence layout
PLAN_FILENAME = "plan.json"
INDEX_FILENAME = "index.csv"
RECORD_FILENAME = "record.json"
FIT_FILENAME = "fit.json"
FIT_CSV_FILENAME = "fit.csv"
REPORT_CSV_FILENAME = "report.csv"
CHECKPOINT_FILENAME = "minimizer.json"
POINTS_DIRNAME = "points"
FIELD_SUFFIX = ".bin"

# Binary field layout header
FIELD_MAGIC = b"PLFD"
FIELD_FORMAT_VERSION = 1

INDEX_COLUMNS: tuple[str, ...] = (
    "h",
    "kappa",
    "trace_minus",
    "energy",
    "weyl1",
    "weyl1_corr",
    "field_energy",
    "mu",
    "el_residual",
    "converged",
)

# Grid and operator rules
MIN_GRID_POINTS = 4
RESOLUTION_FACTOR = 4.0 / math.pi  # h >= RESOLUTION_FACTOR * max spacing

# Numerical tolerances
HERMITICITY_TOLERANCE = 1e-10
PAULI_CONSISTENCY_TOLERANCE = 1e-8
RESIDUAL_TOLERANCE = 1e-8
GRAM_TOLERANCE = 1e-8
THRESHOLD_AMBIGUITY = 1e-6
CURRENT_IMAG_TOLERANCE = 1e-8
LINE_SEARCH_TOLERANCE = 1e-10
CUTOFF_AUDIT_FLOOR = 1e-10
PARTITION_COMPLETENESS_TOLERANCE = 1e-12
ISM_TOLERANCE = 1e-10
SIGNIFICANT_MODE_TOLERANCE = 1e-10

# Sites up to which a dense solve is used to certify iterative spectra
DENSE_CERTIFY_SITES = 6**3

# Phase-space measure for Weyl expressions with spin trace 2
WEYL_TAU_COEFFICIENT = 1.0 / (3.0 * math.pi**2)
WEYL1_COEFFICIENT = 2.0 / (15.0 * math.pi**2)

# CLI exit codes
EXIT_SUCCESS = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
