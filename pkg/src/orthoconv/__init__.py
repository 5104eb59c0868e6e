"""Fast conversions between orthogonal polynomial bases and monomials over Z/pZ."""

from .decomp import (
    DecompPlan,
    MomentSeries,
    NormalizationConstants,
    decomp,
    g_polynomial,
    hankel_matrix,
    moment_series,
    normalization,
)
from .expand import expand, expand_transposed
from .field import (
    DEFAULT_MODULUS,
    SMALL_TEST_MODULUS,
    CapacityError,
    FieldElement,
    FieldError,
    PrimeField,
    default_field,
)
from .poly import poly_mul, poly_mul_transposed, rev, series_inv
from .recurrence import (
    InvalidFamilyError,
    RecurrenceFamily,
    basis_matrix,
    naive_decomp,
    naive_expand,
    pad,
    preset,
    sample,
)
from .tree import SubproductTree, TransitionMatrix, build_tree, transition

__all__ = [
    "CapacityError", "DEFAULT_MODULUS", "DecompPlan", "FieldElement", "FieldError",
    "InvalidFamilyError", "MomentSeries", "NormalizationConstants", "PrimeField",
    "RecurrenceFamily", "SMALL_TEST_MODULUS", "SubproductTree", "TransitionMatrix",
    "basis_matrix", "build_tree", "decomp", "default_field", "expand", "expand_transposed",
    "g_polynomial", "hankel_matrix", "moment_series", "naive_decomp", "naive_expand",
    "normalization", "pad", "poly_mul", "poly_mul_transposed", "preset", "rev", "sample",
    "series_inv", "transition",
]
