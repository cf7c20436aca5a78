"""Constant-dimension subspace codes from the coset construction."""

from __future__ import annotations

from .errors import (
    BlueprintError,
    BudgetExceededError,
    CosetCodeError,
    FieldMismatchError,
    InfeasibleParametersError,
    OracleGapError,
    ParseError,
    ShapeError,
)
from .fq_matrix import (
    FerrersDiagram,
    FqMatrix,
    ef_size,
    enumerate_grassmannian,
    gaussian_binomial,
    phi_b,
    pivot_vectors,
    rank,
    rre,
)
from .gf_arith import Field, FieldElement, field_new, gf
from .metrics import (
    hamming_distance,
    injection_distance,
    min_distance,
    rank_distance,
    subspace_distance,
)
from .subspace import Code, Subspace

__version__ = "0.1.0"

__all__ = [
    "BlueprintError",
    "BudgetExceededError",
    "Code",
    "CosetCodeError",
    "FerrersDiagram",
    "Field",
    "FieldElement",
    "FieldMismatchError",
    "FqMatrix",
    "InfeasibleParametersError",
    "OracleGapError",
    "ParseError",
    "ShapeError",
    "Subspace",
    "ef_size",
    "enumerate_grassmannian",
    "field_new",
    "gaussian_binomial",
    "gf",
    "hamming_distance",
    "injection_distance",
    "min_distance",
    "phi_b",
    "pivot_vectors",
    "rank",
    "rank_distance",
    "rre",
    "subspace_distance",
]
