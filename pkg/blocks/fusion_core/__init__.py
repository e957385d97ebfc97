"""
Fusion core

融合環・モジュラーデータと N₀ 多重度、標準カタログ
"""

from blocks.fusion_core.catalog import catalog, catalog_names
from blocks.fusion_core.models import VACUUM, FusionRing, ModularData, ValidationIssue
from blocks.fusion_core.operations import (
    frobenius_perron_dims,
    fusion_matrix,
    global_dimension,
    n3,
    n_vacuum,
    n_vacuum_tree,
    quantum_dims,
    ring_isomorphism,
    validate_modular_data,
    validate_ring,
    verlinde_from_s,
)

__all__ = [
    "VACUUM",
    "FusionRing",
    "ModularData",
    "ValidationIssue",
    "catalog",
    "catalog_names",
    "frobenius_perron_dims",
    "fusion_matrix",
    "global_dimension",
    "n3",
    "n_vacuum",
    "n_vacuum_tree",
    "quantum_dims",
    "ring_isomorphism",
    "validate_modular_data",
    "validate_ring",
    "verlinde_from_s",
]
