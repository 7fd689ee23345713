"""Binary and CSV storage of grid fields.

Binary layout, little-endian: 4-byte magic, uint32 format version, three
uint32 dims, three float64 box lengths, uint32 component count, then the
float64 values in row-major (component, n1, n2, n3) order.
"""

import logging
from pathlib import Path

import numpy as np

from paulilab.exceptions import StateLoadError, StateSaveError
from paulilab.models.constants import FIELD_FORMAT_VERSION, FIELD_MAGIC
from paulilab.services.fields.fields import ScalarField, VectorField
from paulilab.services.fields.grid import Grid, build_grid

logger = logging.getLogger(__name__)

HEADER = np.dtype(
    [
        ("magic", "S4"),
        ("version", "<u4"),
        ("dims", "<u4", (3,)),
        ("box", "<f8", (3,)),
        ("components", "<u4"),
    ]
)

type GridField = ScalarField | VectorField


class FieldStore:
    """Reads and writes scalar and vector fields under one directory.

    Args:
        root: Directory holding the field files.
    """

    def __init__(self, root: Path):
        self._root = root

    @property
    def root(self) -> Path:
        """Directory of the stored fields."""
        return self._root

    def path(self, name: str, suffix: str = ".bin") -> Path:
        """File path of a named field."""
        return self._root / f"{name}{suffix}"

    def save(self, name: str, field: GridField) -> Path:
        """Write ``field`` in the binary layout.

        Raises:
            StateSaveError: If the file cannot be written.
        """
        values = field.values if isinstance(field, VectorField) else field.values[np.newaxis]
        header = np.zeros((), dtype=HEADER)
        header["magic"] = FIELD_MAGIC
        header["version"] = FIELD_FORMAT_VERSION
        header["dims"] = field.grid.dims
        header["box"] = field.grid.box
        header["components"] = values.shape[0]
        target = self.path(name)
        try:
            self._root.mkdir(parents=True, exist_ok=True)
            with target.open("wb") as handle:
                handle.write(header.tobytes())
                handle.write(np.ascontiguousarray(values, dtype="<f8").tobytes())
        except OSError as e:
            raise StateSaveError(str(target), str(e)) from e
        logger.debug("Saved field %s (%d components) to %s", name, values.shape[0], target)
        return target

    def load(self, name: str, grid: Grid | None = None) -> GridField:
        """Read a field written by ``save``.

        Args:
            name: Field name.
            grid: When given, the stored grid must equal it.

        Returns:
            A ScalarField for one component, a VectorField for three.

        Raises:
            StateLoadError: On a missing file, bad header or truncated data.
        """
        source = self.path(name)
        try:
            raw = source.read_bytes()
        except OSError as e:
            raise StateLoadError(str(source), str(e)) from e
        if len(raw) < HEADER.itemsize:
            raise StateLoadError(str(source), "file shorter than the header")
        header = np.frombuffer(raw[: HEADER.itemsize], dtype=HEADER)[0]
        if header["magic"] != FIELD_MAGIC:
            raise StateLoadError(str(source), f"bad magic {header['magic']!r}")
        if int(header["version"]) != FIELD_FORMAT_VERSION:
            raise StateLoadError(str(source), f"unsupported version {int(header['version'])}")
        dims = tuple(int(n) for n in header["dims"])
        components = int(header["components"])
        if components not in (1, 3):
            raise StateLoadError(str(source), f"unsupported component count {components}")
        stored = build_grid(dims, tuple(float(b) for b in header["box"]))  # type: ignore[arg-type]
        if grid is not None:
            grid.require_same(stored)
        data = np.frombuffer(raw[HEADER.itemsize :], dtype="<f8")
        expected = components * stored.n_sites
        if data.size != expected:
            raise StateLoadError(str(source), f"expected {expected} values, found {data.size}")
        values = data.reshape(components, *dims)
        if components == 1:
            return ScalarField(stored, values[0])
        return VectorField(stored, values)

    def exists(self, name: str) -> bool:
        """Whether a binary field of that name exists."""
        return self.path(name).is_file()

    def export_csv(self, name: str, field: GridField) -> Path:
        """Write one row per site: coordinates then component values."""
        grid = field.grid
        values = field.values if isinstance(field, VectorField) else field.values[np.newaxis]
        columns = ["x", "y", "z"] + (["value"] if values.shape[0] == 1 else ["Ax", "Ay", "Az"])
        table = np.concatenate(
            [grid.coordinates.reshape(3, -1), values.reshape(values.shape[0], -1)]
        ).T
        target = self.path(name, ".csv")
        try:
            self._root.mkdir(parents=True, exist_ok=True)
            np.savetxt(target, table, delimiter=",", header=",".join(columns), comments="")
        except OSError as e:
            raise StateSaveError(str(target), str(e)) from e
        return target
