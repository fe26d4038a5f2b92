"""Exact tools for sumsets in Z/nZ and the 3k-4 structure problem."""

from .cyclic import AffineMap, CyclicSet, IntSet, canonical_pair, sumset
from .errors import CapacityError, DomainError, PreconditionError, RangeError, UsageError, ZslError

__all__ = [
    "AffineMap",
    "CyclicSet",
    "IntSet",
    "canonical_pair",
    "sumset",
    "ZslError",
    "UsageError",
    "DomainError",
    "PreconditionError",
    "RangeError",
    "CapacityError",
]
__version__ = "0.1.0"
