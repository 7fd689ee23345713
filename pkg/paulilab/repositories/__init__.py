"""Repository implementations for state persistence."""

from paulilab.repositories.field_store import FieldStore
from paulilab.repositories.json_state import JsonStateRepository
from paulilab.repositories.sweep_state import SweepRepository

__all__ = [
    "FieldStore",
    "JsonStateRepository",
    "SweepRepository",
]
