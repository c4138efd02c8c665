"""Structure detection and theorem verification."""

from .detectors import (
    DEGENERATE,
    FAILS,
    HOLDS,
    STRUCTURE_KINDS,
    StructureResult,
    check_semisymmetry,
    detect_einstein_class,
    detect_roter,
    detect_structure,
    properness_flags,
    structure_basis,
)
from .linsolve import DirectionSolution, SolutionFamily, solve_linear_family, solve_single
from .theorems import (
    Check,
    check_semisymmetry_sufficiency,
    member_with_component,
    rdotr_expansion,
    sample_members,
    sgk_combination,
    transfer_sgk,
    verify_rdotr_expansion,
    verify_sgk_identities,
    verify_specialization_theorems,
)

__all__ = [
    "Check",
    "DEGENERATE",
    "DirectionSolution",
    "FAILS",
    "HOLDS",
    "STRUCTURE_KINDS",
    "SolutionFamily",
    "StructureResult",
    "check_semisymmetry",
    "check_semisymmetry_sufficiency",
    "detect_einstein_class",
    "detect_roter",
    "detect_structure",
    "member_with_component",
    "properness_flags",
    "rdotr_expansion",
    "sample_members",
    "sgk_combination",
    "solve_linear_family",
    "solve_single",
    "structure_basis",
    "transfer_sgk",
    "verify_rdotr_expansion",
    "verify_sgk_identities",
    "verify_specialization_theorems",
]
