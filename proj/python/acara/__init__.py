"""Sparse approximate convex decompositions of matrices and tensors.

Python surface over the C++ core: Schatten and entrywise norms with their
directional derivatives, the deterministic approximate Caratheodory solver
over finite atom oracles, the closed-form rank budgets, the diagonal gauge
values with the square-root pipeline, weighted simplicial complexes with
group actions, and the experiment instance builders.
"""

from ._acara import (
    AtomOracle,
    OmegaGDecomposition,
    GroupAction,
    RankBudget,
    SizeCapError,
    SolveResult,
    SolverInfeasible,
    SqrtPipelineResult,
    Wsc,
    approx_caratheodory,
    approx_sqrt_pipeline,
    basis_atoms,
    budget_nn,
    budget_puri,
    budget_rank,
    budget_schatten1,
    budget_sep,
    build_circle,
    build_cyclic_action,
    build_euclid_instance,
    build_line,
    build_random_instance,
    build_rank1_instance,
    build_simplex,
    build_slack_instance,
    check_g_compatibility,
    decomposition_from_json,
    decomposition_to_json,
    diagonal_projector_atoms,
    error_bound,
    estimate_modulus_of_smoothness,
    evaluate,
    facets,
    format_group_action,
    format_wsc,
    hanner_residual,
    is_connected,
    is_free_action,
    lp_directional_derivative,
    lp_norm,
    mu1_diagonal_exact,
    mu_sqrt_bounds_diagonal,
    parse_group_action,
    parse_wsc,
    product_psd_atoms,
    required_k,
    schatten_directional_derivative,
    schatten_norm,
    schatten_quasinorm,
    svd,
    symmetrize,
    trivial_action,
    validate_group_action,
    validate_wsc,
)

__version__ = "0.1.0"

__all__ = [
    "AtomOracle",
    "OmegaGDecomposition",
    "GroupAction",
    "RankBudget",
    "SizeCapError",
    "SolveResult",
    "SolverInfeasible",
    "SqrtPipelineResult",
    "Wsc",
    "approx_caratheodory",
    "approx_sqrt_pipeline",
    "basis_atoms",
    "budget_nn",
    "budget_puri",
    "budget_rank",
    "budget_schatten1",
    "budget_sep",
    "build_circle",
    "build_cyclic_action",
    "build_euclid_instance",
    "build_line",
    "build_random_instance",
    "build_rank1_instance",
    "build_simplex",
    "build_slack_instance",
    "check_g_compatibility",
    "decomposition_from_json",
    "decomposition_to_json",
    "diagonal_projector_atoms",
    "error_bound",
    "estimate_modulus_of_smoothness",
    "evaluate",
    "facets",
    "format_group_action",
    "format_wsc",
    "hanner_residual",
    "is_connected",
    "is_free_action",
    "lp_directional_derivative",
    "lp_norm",
    "mu1_diagonal_exact",
    "mu_sqrt_bounds_diagonal",
    "parse_group_action",
    "parse_wsc",
    "product_psd_atoms",
    "required_k",
    "schatten_directional_derivative",
    "schatten_norm",
    "schatten_quasinorm",
    "svd",
    "symmetrize",
    "trivial_action",
    "validate_group_action",
    "validate_wsc",
]
