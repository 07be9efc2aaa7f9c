"""Exact arithmetic over F_q and over (Laurent) polynomial rings."""

from .cover import CoverRing, is_in_base_subring, pth_root_to_cover
from .field import FieldError, FieldSpec, FqElement
from .poly import (
    MultiPoly,
    NotDivisible,
    RingMismatch,
    grlex_key,
    parse_poly,
    poly_arith,
)

__all__ = [
    "CoverRing",
    "FieldError",
    "FieldSpec",
    "FqElement",
    "MultiPoly",
    "NotDivisible",
    "RingMismatch",
    "grlex_key",
    "is_in_base_subring",
    "parse_poly",
    "poly_arith",
    "pth_root_to_cover",
]
