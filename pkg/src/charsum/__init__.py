"""Exact Jacobi-sum L-series of cyclic covers y^n = f(x) over finite fields."""

from __future__ import annotations

from ._accel import backend_name
from .cyc import CycNum
from .fq import FieldSpec, FqElem, build_field, extend_and_embed
from .jacobi import jacobi_plain, jacobi_subspace_brute, lemma_prod_product
from .lseries import (
    CoverSpec,
    LPolynomial,
    lseries_jacobi,
    lseries_oracle_artin,
    lseries_oracle_paper,
    validate_cover,
)
from .zeta import count_points, verify_counts

__version__ = "0.1.0"

__all__ = [
    "CoverSpec",
    "CycNum",
    "FieldSpec",
    "FqElem",
    "LPolynomial",
    "backend_name",
    "build_field",
    "count_points",
    "extend_and_embed",
    "jacobi_plain",
    "jacobi_subspace_brute",
    "lemma_prod_product",
    "lseries_jacobi",
    "lseries_oracle_artin",
    "lseries_oracle_paper",
    "validate_cover",
    "verify_counts",
]
