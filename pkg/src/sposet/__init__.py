"""Finite pomonoids, S-posets and their tensor products."""

from .congruence import QuotientSPoset, check_universal_property, order_congruence
from .conditions import CONDITIONS, Verdict, check_condition, condition_implications
from .core import (
    LEFT,
    RIGHT,
    Map,
    Pomonoid,
    SPoset,
    StructureError,
    ValidationReport,
    enumerate_pomorphisms,
    isomorphic,
    morphism_kind,
    right_ideals,
    validate_pomonoid,
    validate_sposet,
)
from .flatness import (
    FlatnessVerdict,
    build_standard_quotient,
    check_flat_bounded,
    check_ideal_flatness,
    replacement_skeleton_search,
)
from .structure import decompose, is_free, is_projective
from .tensor import (
    Skeleton,
    TensorPoset,
    TossingCertificate,
    connected_by_skeleton,
    eval_skeleton_formula,
    extract_tossing,
    induced_tensor_map,
    tensor_leq,
    tensor_product,
    verify_tossing,
)

__version__ = "0.1.0"

__all__ = [
    "CONDITIONS",
    "FlatnessVerdict",
    "LEFT",
    "Map",
    "Pomonoid",
    "QuotientSPoset",
    "RIGHT",
    "SPoset",
    "Skeleton",
    "StructureError",
    "TensorPoset",
    "TossingCertificate",
    "ValidationReport",
    "Verdict",
    "build_standard_quotient",
    "check_condition",
    "check_flat_bounded",
    "check_ideal_flatness",
    "check_universal_property",
    "condition_implications",
    "connected_by_skeleton",
    "decompose",
    "enumerate_pomorphisms",
    "eval_skeleton_formula",
    "extract_tossing",
    "induced_tensor_map",
    "is_free",
    "is_projective",
    "isomorphic",
    "morphism_kind",
    "order_congruence",
    "replacement_skeleton_search",
    "right_ideals",
    "tensor_leq",
    "tensor_product",
    "validate_pomonoid",
    "validate_sposet",
    "verify_tossing",
]
