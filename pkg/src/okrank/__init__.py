"""Overpartition rank statistics and exact q-series identity checking."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .kernels import BACKEND
from .series import (
    DomainError,
    MarkerPoly,
    Ring,
    RingError,
    SignedMonomial,
    TruncatedSeries,
    TruncationError,
    equal_up_to,
    from_coeffs,
    make_monomial,
)
from .partitions import Overpartition, Partition, ParseError, parse_overpartition
from .bijection import (
    VectorPartition,
    ValidationError,
    k_conjugate,
    kbar_rank,
    over_to_vector,
    vector_to_over,
)
from .counting import RankTable, UsageError, rank_table

__all__ = [
    "BACKEND",
    "DomainError",
    "MarkerPoly",
    "Overpartition",
    "ParseError",
    "Partition",
    "RankTable",
    "Ring",
    "RingError",
    "SignedMonomial",
    "TruncatedSeries",
    "TruncationError",
    "UsageError",
    "ValidationError",
    "VectorPartition",
    "equal_up_to",
    "from_coeffs",
    "k_conjugate",
    "kbar_rank",
    "make_monomial",
    "over_to_vector",
    "parse_overpartition",
    "rank_table",
    "vector_to_over",
]
