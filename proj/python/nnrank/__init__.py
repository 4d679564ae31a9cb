"""Best nonnegative rank-one approximation and copositivity of partially
symmetric tensors via doubly nonnegative relaxations."""

from ._core import (
    ApproxReport,
    BoundInfo,
    CopositivityVerdict,
    ExtractionResult,
    InputError,
    OracleResult,
    SizeLimitError,
    SolverError,
    SolverSummary,
    Tensor,
    best_nonneg_rank_one,
    bound_info,
    brute_force_min,
    count_constraints,
    generate,
    generator_families,
    parse_tensor,
    report_json,
    serialize_tensor,
    tensor_from_json,
    tensor_to_json,
    test_copositivity,
    theta_matrix,
)

__all__ = [
    "ApproxReport",
    "BoundInfo",
    "CopositivityVerdict",
    "ExtractionResult",
    "InputError",
    "OracleResult",
    "SizeLimitError",
    "SolverError",
    "SolverSummary",
    "Tensor",
    "best_nonneg_rank_one",
    "bound_info",
    "brute_force_min",
    "count_constraints",
    "generate",
    "generator_families",
    "parse_tensor",
    "report_json",
    "serialize_tensor",
    "tensor_from_json",
    "tensor_to_json",
    "test_copositivity",
    "theta_matrix",
]
