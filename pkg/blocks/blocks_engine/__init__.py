"""
Blocks engine

状態和による次元計算、縮約計画、構造的な検証
"""

from blocks.blocks_engine.models import (
    ContractionPlan,
    ContractionStep,
    DimensionTensor,
    StepKind,
)
from blocks.blocks_engine.operations import (
    atom_dimension,
    brute_force_dim,
    contract,
    dim_blocks,
    dim_tensor,
    factor_tensor,
)
from blocks.blocks_engine.planner import plan_contraction
from blocks.blocks_engine.verify import (
    FactorizationReport,
    FactorizationSummary,
    MultiplicityReport,
    TensorComparison,
    insert_cylinder_noop,
    random_moves,
    verify_factorization,
    verify_factorization_all,
    verify_gluing_associativity,
    verify_move_invariance,
    verify_sphere_multiplicity,
)

__all__ = [
    "ContractionPlan",
    "ContractionStep",
    "DimensionTensor",
    "FactorizationReport",
    "FactorizationSummary",
    "MultiplicityReport",
    "StepKind",
    "TensorComparison",
    "atom_dimension",
    "brute_force_dim",
    "contract",
    "dim_blocks",
    "dim_tensor",
    "factor_tensor",
    "insert_cylinder_noop",
    "plan_contraction",
    "random_moves",
    "verify_factorization",
    "verify_factorization_all",
    "verify_gluing_associativity",
    "verify_move_invariance",
    "verify_sphere_multiplicity",
]
