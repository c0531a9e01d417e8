"""Exact rational Witt vectors, endomorphism classes and a brute-force K0 oracle."""

from .complexes import FreeComplexEndo, add_contractible, euler_class, validate
from .endo import (
    EndoClass,
    EndoMatrix,
    OperationElement,
    apply_operation,
    class_of,
    dsum,
    frobenius_class,
    split_class,
    tensor,
    universal_element,
    verschiebung_matrix,
)
from .errors import (
    BudgetExceeded,
    DomainError,
    InvalidComplex,
    NonIntegralGhost,
    NotEffective,
    ParseError,
    RingMismatch,
    WittError,
)
from .expr import evaluate, parse, to_source
from .matrix import Matrix, berkowitz, char_det_form, companion_of, det
from .oracle import enumerate_classes, enumerate_relations, invariant_check, quotient
from .poly import Polynomial
from .rings import ZZ, IntegersMod, PolyRing, PrimeField, parse_ring
from .snf import smith_normal_form
from .witt import (
    GhostVector,
    TruncatedWitt,
    WittFraction,
    from_ghost,
    frobenius,
    ghost,
    invol,
    lambda_op,
    truncate,
    verschiebung,
    witt_add,
    witt_eq,
    witt_mul,
    witt_mul_plus,
    witt_neg,
    witt_sub,
)

__version__ = "0.1.0"

__all__ = [
    "FreeComplexEndo",
    "add_contractible",
    "euler_class",
    "validate",
    "EndoClass",
    "EndoMatrix",
    "OperationElement",
    "apply_operation",
    "class_of",
    "dsum",
    "frobenius_class",
    "split_class",
    "tensor",
    "universal_element",
    "verschiebung_matrix",
    "BudgetExceeded",
    "DomainError",
    "InvalidComplex",
    "NonIntegralGhost",
    "NotEffective",
    "ParseError",
    "RingMismatch",
    "WittError",
    "evaluate",
    "parse",
    "to_source",
    "Matrix",
    "berkowitz",
    "char_det_form",
    "companion_of",
    "det",
    "enumerate_classes",
    "enumerate_relations",
    "invariant_check",
    "quotient",
    "Polynomial",
    "ZZ",
    "IntegersMod",
    "PolyRing",
    "PrimeField",
    "parse_ring",
    "smith_normal_form",
    "GhostVector",
    "TruncatedWitt",
    "WittFraction",
    "from_ghost",
    "frobenius",
    "ghost",
    "invol",
    "lambda_op",
    "truncate",
    "verschiebung",
    "witt_add",
    "witt_eq",
    "witt_mul",
    "witt_mul_plus",
    "witt_neg",
    "witt_sub",
]
