"""Divisible linear codes over small finite fields that are spanned by their
codewords of minimum weight Δ: constructions, invariants and classification."""

from .catalog import Catalog, Family, FamilyTag, catalog_for, construct, fingerprint, identify, is_admissible, parse_tag
from .classify import ClassificationCertificate, classify, parse_certificate, verify_certificate
from .code import (
    LinearCode,
    column_multiset,
    direct_sum,
    dual,
    from_matrix,
    from_rows,
    is_projective,
    parse_matrix,
    puncture,
    read_matrix,
    repetition,
    residual,
    write_matrix,
)
from .errors import DivCodesError
from .field import FieldSpec, field_of_order, make_field
from .spectrum import WeightDistribution, is_divisible, macwilliams, pless_moments_check, weight_distribution
from .structure import decompose, intersection_census, is_indecomposable, tiny_isomorphism, weight_span

__all__ = [name for name in dir() if not name.startswith("_")]
