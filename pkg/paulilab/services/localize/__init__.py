"""psi-localized traces, partitions of unity, ISM identity and subadditivity."""

from paulilab.services.localize.operators import LocalizedOperator, PartitionSumOperator
from paulilab.services.localize.partition import Partition, build_partition, perturbed_partition
from paulilab.services.localize.traces import (
    ism_check,
    localization_error,
    localized_energy,
    localized_spectrum,
    localized_trace_minus,
    subadditivity_check,
)

__all__ = [
    "LocalizedOperator",
    "Partition",
    "PartitionSumOperator",
    "build_partition",
    "ism_check",
    "localization_error",
    "localized_energy",
    "localized_spectrum",
    "localized_trace_minus",
    "perturbed_partition",
    "subadditivity_check",
]
