"""Ordinals, disjoint types, ladder systems and the sparse graph constructions built on them."""

from .ordinal import Ordinal, Universe, enum_below, enum_inverse, format_ordinal, is_limit, parse_ordinal
from .types import DisjointType, depth, opposite, specker_type, type_of

__version__ = "0.1.0"

__all__ = [
    "DisjointType",
    "Ordinal",
    "Universe",
    "depth",
    "enum_below",
    "enum_inverse",
    "format_ordinal",
    "is_limit",
    "opposite",
    "parse_ordinal",
    "specker_type",
    "type_of",
]
