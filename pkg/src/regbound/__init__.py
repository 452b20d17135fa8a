"""Regularity, extended degrees and local cohomology of graded modules."""

from .algebra import GF, QQ, ContextError, Element, FreeModule, NonHomogeneousError, Ring, parse_field
from .groebner import (
    GroebnerBasis,
    Submodule,
    buchberger,
    colon,
    initial_module,
    normal_form,
    quotient_by_linear_form,
    saturate,
    syzygy_module,
)
from .hilbert import HilbertSeries, dim_deg, hilbert_function_at, hilbert_series_monomial, hilbert_series_of
from .monomial import MonomialModule

__all__ = [
    "GF",
    "QQ",
    "ContextError",
    "Element",
    "FreeModule",
    "GroebnerBasis",
    "HilbertSeries",
    "MonomialModule",
    "NonHomogeneousError",
    "Ring",
    "Submodule",
    "buchberger",
    "colon",
    "dim_deg",
    "hilbert_function_at",
    "hilbert_series_monomial",
    "hilbert_series_of",
    "initial_module",
    "normal_form",
    "parse_field",
    "quotient_by_linear_form",
    "saturate",
    "syzygy_module",
]
