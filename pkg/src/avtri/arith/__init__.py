"""Exact arithmetic substrate: fields, polynomials, CRT, small discrete logs."""

from .field import (
    DESK_P_CAP,
    ExtField,
    Fe,
    PrimeField,
    build_field,
    field_from_description,
    irreducible_poly,
    is_prime,
    is_square,
    sqrt,
)
from .poly import poly_roots
from .crt import crt_combine, rational_reconstruct, signed_rep
from .dlog import NotInSubgroupError, bsgs_dlog, dlog_field

__all__ = [
    "DESK_P_CAP",
    "ExtField",
    "Fe",
    "PrimeField",
    "build_field",
    "field_from_description",
    "irreducible_poly",
    "is_prime",
    "is_square",
    "sqrt",
    "poly_roots",
    "crt_combine",
    "rational_reconstruct",
    "signed_rep",
    "NotInSubgroupError",
    "bsgs_dlog",
    "dlog_field",
]
