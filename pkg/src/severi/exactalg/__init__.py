"""Exact arithmetic kernel: coefficient fields, bivariate polynomials, gcds and resultants."""

from .bipoly import INF, BiPoly
from .factor import ExtensionRequired, adjoin_root, factor_over, roots_in_field
from .fields import QQ, FieldMismatch, NFElement, NumberField, cyclotomic_field, cyclotomic_polynomial
from .polyalg import (
    AuxPoly,
    SquarefreeDecomposition,
    divides_locally,
    gcd,
    gcd_prs,
    resultant,
    resultant_v,
    squarefree_decomposition,
)
from .serialize import field_descriptor, format_poly, format_scalar


def derivative(p: BiPoly, var: str) -> BiPoly:
    """Formal partial derivative of ``p`` in ``'u'`` or ``'v'``."""
    return p.diff(var)


__all__ = [
    "QQ",
    "INF",
    "BiPoly",
    "NumberField",
    "NFElement",
    "FieldMismatch",
    "ExtensionRequired",
    "AuxPoly",
    "SquarefreeDecomposition",
    "adjoin_root",
    "cyclotomic_field",
    "cyclotomic_polynomial",
    "derivative",
    "divides_locally",
    "factor_over",
    "field_descriptor",
    "format_poly",
    "format_scalar",
    "gcd",
    "gcd_prs",
    "resultant",
    "resultant_v",
    "roots_in_field",
    "squarefree_decomposition",
]
