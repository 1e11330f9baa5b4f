"""Finite partial groups, localities and their products."""

from .errors import (
    ConjugationUndefinedError,
    DocumentError,
    HypothesisError,
    InvalidActionError,
    InvalidInputError,
    PartialGroupError,
    UndefinedProductError,
    UnknownElementError,
    VerificationError,
)
from .groups import cayley_group, cyclic_group, generated, permutation_group, subgroups, symmetric_group
from .kernels import BACKEND
from .locality import Locality, check_locality, locality_from_group, verify_locality
from .locality_products import (
    ProductLocality,
    classify_internal_product,
    external_semidirect_locality,
    group_semidirect_locality,
)
from .morphisms import ActionHom, PartialGroupMap, find_isomorphism, is_action, is_homomorphism, is_isomorphism
from .partial_group import PartialGroup, conjugate, is_defined, product, verify_axioms
from .report import CheckResult, VerificationReport
from .semidirect import check_internal_semidirect, external_semidirect, internal_to_external_iso
from .words import Word
from .wreath import centralizer_lemma_check, direct_product_localities, wreath_product

__all__ = [
    "BACKEND",
    "ActionHom",
    "CheckResult",
    "ConjugationUndefinedError",
    "DocumentError",
    "HypothesisError",
    "InvalidActionError",
    "InvalidInputError",
    "Locality",
    "PartialGroup",
    "PartialGroupError",
    "PartialGroupMap",
    "ProductLocality",
    "UndefinedProductError",
    "UnknownElementError",
    "VerificationError",
    "VerificationReport",
    "Word",
    "cayley_group",
    "centralizer_lemma_check",
    "check_internal_semidirect",
    "check_locality",
    "classify_internal_product",
    "conjugate",
    "cyclic_group",
    "direct_product_localities",
    "external_semidirect",
    "external_semidirect_locality",
    "find_isomorphism",
    "generated",
    "group_semidirect_locality",
    "internal_to_external_iso",
    "is_action",
    "is_defined",
    "is_homomorphism",
    "is_isomorphism",
    "locality_from_group",
    "permutation_group",
    "product",
    "subgroups",
    "symmetric_group",
    "verify_axioms",
    "verify_locality",
    "wreath_product",
]
