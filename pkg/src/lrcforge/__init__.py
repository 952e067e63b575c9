"""Optimal cyclic (r, delta) locally repairable codes of unbounded length.

Finite-field and polynomial arithmetic, cyclic-code machinery with two
independent exact minimum-distance oracles, the four generator-polynomial
families, locality checks, and local/global erasure repair.
"""
from .cyclic import AboveCeiling, CyclicCode, bch_lower_bound, encode, from_generator, min_distance_exact
from .field import (
    FieldElement,
    FiniteField,
    build_field,
    in_base_field,
    multiplicative_order,
    primitive_nth_root,
)
from .lrc import (
    ConstructionKind,
    Kind,
    LrcParams,
    LrcReport,
    construct,
    locality_check_defining_set,
    locality_check_direct,
    search_params,
    singleton_bound,
    verify,
)
from .poly import Polynomial, descend_coefficients, divides_xn_minus_1, sparse_binomial
from .repair import ErasurePattern, RepairGroup, global_erasure_decode, local_parities, local_repair, repair_groups

__version__ = "0.1.0"

__all__ = [
    "AboveCeiling", "CyclicCode", "bch_lower_bound", "encode", "from_generator", "min_distance_exact",
    "FieldElement", "FiniteField", "build_field", "in_base_field", "multiplicative_order",
    "primitive_nth_root", "ConstructionKind", "Kind", "LrcParams", "LrcReport", "construct",
    "locality_check_defining_set", "locality_check_direct", "search_params", "singleton_bound",
    "verify", "Polynomial", "descend_coefficients", "divides_xn_minus_1", "sparse_binomial",
    "ErasurePattern", "RepairGroup", "global_erasure_decode", "local_parities", "local_repair",
    "repair_groups",
]
