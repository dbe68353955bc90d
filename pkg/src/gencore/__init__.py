"""Generalized inverses of square matrices over a ring with involution.

Exact computations run over Gaussian rationals; ``float_engine`` holds the
SVD-based floating-point counterparts.
"""

from .classical import (
    InverseKind,
    InverseResult,
    core_inverse,
    drazin_inverse,
    dual_core_inverse,
    equation_inverse,
    group_inverse,
    moore_penrose_closed_form,
    one_four_inverse,
    one_three_inverse,
)
from .errors import (
    DimensionMismatch,
    GencoreError,
    HypothesisViolated,
    LawViolation,
    NonSquare,
    NoSolution,
    NotApplicable,
    RankZero,
    SingularBlock,
    SingularMatrix,
)
from .kernels import BACKEND
from .matrix import EXACT_H, EXACT_T, FLOAT_H, Involution, Matrix, RingContext, ScalarMode
from .pseudocore import (
    LAWS,
    core_nilpotent,
    dual_pseudo_core_inverse,
    identity_check,
    pseudo_core_inverse,
    regularity_certificates,
    relation_check,
)
from .scalars import GaussianRational

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EXACT_H",
    "EXACT_T",
    "FLOAT_H",
    "LAWS",
    "DimensionMismatch",
    "GaussianRational",
    "GencoreError",
    "HypothesisViolated",
    "InverseKind",
    "InverseResult",
    "Involution",
    "LawViolation",
    "Matrix",
    "NoSolution",
    "NonSquare",
    "NotApplicable",
    "RankZero",
    "RingContext",
    "ScalarMode",
    "SingularBlock",
    "SingularMatrix",
    "core_inverse",
    "core_nilpotent",
    "drazin_inverse",
    "dual_core_inverse",
    "dual_pseudo_core_inverse",
    "equation_inverse",
    "group_inverse",
    "identity_check",
    "moore_penrose_closed_form",
    "one_four_inverse",
    "one_three_inverse",
    "pseudo_core_inverse",
    "regularity_certificates",
    "relation_check",
]
