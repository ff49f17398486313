"""Degrees and multidegrees of equisingular strata of plane curves."""

from ._core import (
    DegenError,
    EliminationError,
    UnknownType,
    degree,
    degree_coefficients,
    ideal,
    multidegree,
    multidegree_json,
    normalize_type_name,
    types,
    universality_bounds,
    verify,
)

__all__ = [
    "DegenError",
    "EliminationError",
    "UnknownType",
    "degree",
    "degree_coefficients",
    "ideal",
    "multidegree",
    "multidegree_json",
    "normalize_type_name",
    "types",
    "universality_bounds",
    "verify",
]
