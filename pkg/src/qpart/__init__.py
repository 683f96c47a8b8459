"""Exact q-series and weighted partition identity verification."""

from .qseries import QSeries, PochSpec, poch, pochhammer, sum_of_terms
from .partitions import Partition, enumerate_partitions, get_set, parse_partition
from .weights import get_weight, weighted_series, weighted_sum
from .identities import builtin_registry, get_identity, verify, verify_all

__version__ = "0.1.0"

__all__ = [
    "QSeries", "PochSpec", "poch", "pochhammer", "sum_of_terms",
    "Partition", "enumerate_partitions", "get_set", "parse_partition",
    "get_weight", "weighted_series", "weighted_sum",
    "builtin_registry", "get_identity", "verify", "verify_all",
]
