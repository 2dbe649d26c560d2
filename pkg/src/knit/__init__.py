"""Matched pairs of finite groups, bicrossed products, and their classification."""

from .actions import (
    MatchedPair,
    enumerate_matched_pairs,
    fix_g,
    fix_h,
    is_action_by_automorphisms,
    ker_beta,
    matched_pair,
    matched_pair_from_json,
    matched_pair_to_json,
    trivial_alpha,
    trivial_beta,
    verify_matched_pair,
)
from .classification import (
    Classification,
    classify_b2,
    classify_k2,
    recognize_direct_product,
    recognize_semidirect_left,
    recognize_semidirect_right,
)
from .cyclic import (
    SubstitutionPair,
    c2_cm_matched_pairs,
    c3_cm_matched_pairs,
    cyclic_report,
    matched_pair_from_substitution,
    special_substitutions,
    substitution_from_matched_pair,
    varsigma,
)
from .deformation import (
    DeformationDatum,
    deform,
    deformation_closure,
    enumerate_deformation_data,
    verify_datum,
)
from .errors import (
    InvalidOrderError,
    InvariantError,
    KnitError,
    MalformedTableError,
    NotAGroupError,
    NotAMatchedPairError,
    PreconditionError,
    SearchTooLargeError,
)
from .groups import (
    FiniteGroup,
    GroupMap,
    automorphisms,
    cyclic_group,
    direct_product,
    group_from_json,
    group_to_json,
    homomorphisms,
    identity_map,
    is_isomorphic,
    structural_report,
    subgroup_generated,
    verify_group,
)
from .morphisms import (
    B2Morphism,
    RVDatum,
    compose_rv,
    decompose_psi,
    enumerate_b2_morphisms,
    enumerate_sigma_morphisms,
    invert_rv,
    is_sigma_isomorphic,
    psi_from_rv,
    verify_rv,
)
from .products import (
    BicrossedGroup,
    abelian_criterion,
    bicrossed,
    center_by_formula,
    cyclic_criterion,
    presentation,
    semidirect_left,
    semidirect_right,
    verify_fixed_point_diagram,
)
from .report import Check, Report

__version__ = "0.1.0"

__all__ = [
    "B2Morphism",
    "BicrossedGroup",
    "Check",
    "Classification",
    "DeformationDatum",
    "FiniteGroup",
    "GroupMap",
    "InvalidOrderError",
    "InvariantError",
    "KnitError",
    "MalformedTableError",
    "MatchedPair",
    "NotAGroupError",
    "NotAMatchedPairError",
    "PreconditionError",
    "RVDatum",
    "Report",
    "SearchTooLargeError",
    "SubstitutionPair",
    "abelian_criterion",
    "automorphisms",
    "bicrossed",
    "c2_cm_matched_pairs",
    "c3_cm_matched_pairs",
    "center_by_formula",
    "classify_b2",
    "classify_k2",
    "compose_rv",
    "cyclic_criterion",
    "cyclic_group",
    "cyclic_report",
    "decompose_psi",
    "deform",
    "deformation_closure",
    "direct_product",
    "enumerate_b2_morphisms",
    "enumerate_deformation_data",
    "enumerate_matched_pairs",
    "enumerate_sigma_morphisms",
    "fix_g",
    "fix_h",
    "group_from_json",
    "group_to_json",
    "homomorphisms",
    "identity_map",
    "invert_rv",
    "is_action_by_automorphisms",
    "is_isomorphic",
    "is_sigma_isomorphic",
    "ker_beta",
    "matched_pair",
    "matched_pair_from_json",
    "matched_pair_from_substitution",
    "matched_pair_to_json",
    "presentation",
    "psi_from_rv",
    "recognize_direct_product",
    "recognize_semidirect_left",
    "recognize_semidirect_right",
    "semidirect_left",
    "semidirect_right",
    "special_substitutions",
    "structural_report",
    "subgroup_generated",
    "substitution_from_matched_pair",
    "trivial_alpha",
    "trivial_beta",
    "varsigma",
    "verify_datum",
    "verify_fixed_point_diagram",
    "verify_group",
    "verify_matched_pair",
    "verify_rv",
]
