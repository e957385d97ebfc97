"""曲面の位相型と分解グラフ"""

from blocks.surface_model.models import (
    Atom,
    AtomKind,
    BoundaryCircle,
    Component,
    DecompositionGraph,
    Edge,
    LegRef,
    Orientation,
    Surface,
)
from blocks.surface_model.operations import (
    canonical_decomposition,
    disjoint_union,
    disjoint_union_decompositions,
    extend_leg,
    flip,
    flippable_edges,
    glue,
    glue_decompositions,
    infer_surface,
    random_move,
    reverse_boundary,
    self_glue,
    self_glue_decomposition,
    subdivide_edge,
    validate_decomposition,
    validate_structure,
)

__all__ = [
    "Atom",
    "AtomKind",
    "BoundaryCircle",
    "Component",
    "DecompositionGraph",
    "Edge",
    "LegRef",
    "Orientation",
    "Surface",
    "canonical_decomposition",
    "disjoint_union",
    "disjoint_union_decompositions",
    "extend_leg",
    "flip",
    "flippable_edges",
    "glue",
    "glue_decompositions",
    "infer_surface",
    "random_move",
    "reverse_boundary",
    "self_glue",
    "self_glue_decomposition",
    "subdivide_edge",
    "validate_decomposition",
    "validate_structure",
]
