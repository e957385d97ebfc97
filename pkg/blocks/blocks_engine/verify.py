"""
Structural checks

分解の局所変形と貼り合わせに対する次元テンソルの不変性を検証する
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from blocks.blocks_engine.models import DimensionTensor
from blocks.blocks_engine.operations import dim_blocks, dim_tensor
from blocks.errors import DuplicateMatch, InvalidArgument
from blocks.fusion_core.models import FusionRing, Label
from blocks.fusion_core.operations import n_vacuum
from blocks.surface_model.models import DecompositionGraph, Orientation, Surface
from blocks.surface_model.operations import (
    Matching,
    canonical_decomposition,
    flip,
    glue,
    glue_decompositions,
    random_move,
    self_glue,
    self_glue_decomposition,
    subdivide_edge,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorizationReport:
    labels: tuple[Label, ...]
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class FactorizationSummary:
    """全境界ラベリングでの因子分解の検証結果"""

    glued: Surface
    checked: int
    mismatches: tuple[FactorizationReport, ...] = field(default=())

    @property
    def equal(self) -> bool:
        return not self.mismatches


@dataclass(frozen=True)
class TensorComparison:
    """変形・貼り合わせの前後の次元テンソル"""

    before: DimensionTensor
    after: DimensionTensor
    description: str = ""

    @property
    def equal(self) -> bool:
        return self.before.values == self.after.values


@dataclass(frozen=True)
class MultiplicityReport:
    labels: tuple[Label, ...]
    state_sum: int
    n_vacuum: int

    @property
    def equal(self) -> bool:
        return self.state_sum == self.n_vacuum


def _induced_array(tensor: DimensionTensor) -> npt.NDArray[np.object_]:
    return tensor.induced().as_array()


def _to_induced(surface: Surface, ring: FusionRing, labels: Sequence[Label]) -> tuple[Label, ...]:
    return tuple(
        label if circle.orientation is Orientation.INDUCED else ring.bar(label)
        for label, circle in zip(labels, surface.boundary, strict=True)
    )


def _glued_tensors(
    ring: FusionRing,
    s1: Surface,
    s2: Surface | None,
    matching: Matching,
    d1: DecompositionGraph | None,
    d2: DecompositionGraph | None,
) -> tuple[Surface, npt.NDArray[np.object_], npt.NDArray[np.object_]]:
    d1 = d1 or canonical_decomposition(s1)
    bar = list(ring.dual)

    if s2 is None:
        if len(matching) != 1:
            raise InvalidArgument("self-gluing takes exactly one pair of circles")
        ((i, j),) = matching
        glued = self_glue(s1, i, j)
        glued_d = self_glue_decomposition(d1, i, j)
        joint = _induced_array(dim_tensor(ring, d1, surface=s1))
        pairs = [(i, j)]
    else:
        d2 = d2 or canonical_decomposition(s2)
        glued = glue(s1, s2, matching)
        glued_d = glue_decompositions(d1, d2, matching)
        left = _induced_array(dim_tensor(ring, d1, surface=s1))
        right = _induced_array(dim_tensor(ring, d2, surface=s2))
        joint = np.multiply.outer(left, right)
        pairs = [(i, s1.n_boundary + j) for i, j in matching]

    # Σ_λ T[.., i=λ, .., j=λ̄, ..]（誘導された向き同士では逆側のラベルは双対）
    axes = list(range(joint.ndim))
    rhs = np.asarray(joint, dtype=object)
    for i, j in pairs:
        ai, aj = axes.index(i), axes.index(j)
        rhs = np.take(rhs, bar, axis=aj)
        rhs = np.asarray(np.trace(rhs, axis1=ai, axis2=aj), dtype=object)
        axes = [a for a in axes if a not in (i, j)]

    lhs = _induced_array(dim_tensor(ring, glued_d, surface=glued))
    return glued, lhs, rhs


def verify_factorization(
    ring: FusionRing,
    s1: Surface,
    s2: Surface | None,
    matching: Matching,
    labels: Sequence[Label],
    *,
    d1: DecompositionGraph | None = None,
    d2: DecompositionGraph | None = None,
) -> FactorizationReport:
    """
    貼り合わせた曲面の次元と、因子の次元を切断円周で縮約したものを比べる

    dim V(Σ₁ ∪ Σ₂; …) = Σ_λ dim V(Σ₁; …, λ) · dim V(Σ₂; λ̄, …)

    Args:
        ring: 融合環
        s1: 1つ目の曲面
        s2: 2つ目の曲面（None なら s1 の自己接着）
        matching: 貼り合わせる境界円周の組
        labels: 貼り合わせた曲面の境界ラベル
        d1: s1 の分解（省略時は標準分解）
        d2: s2 の分解（省略時は標準分解）

    Returns:
        lhs, rhs を持つ FactorizationReport

    Raises:
        IndexOutOfRange, DuplicateMatch, OrientationMismatch: glue と同じ
    """
    glued, lhs, rhs = _glued_tensors(ring, s1, s2, matching, d1, d2)
    if len(labels) != glued.n_boundary:
        raise InvalidArgument(f"expected {glued.n_boundary} labels, got {len(labels)}")
    for label in labels:
        ring.check_label(label)
    key = _to_induced(glued, ring, labels)
    report = FactorizationReport(labels=tuple(labels), lhs=int(lhs[key]), rhs=int(rhs[key]))
    if not report.equal:
        logger.warning(f"Factorization mismatch at {report.labels}: {report.lhs} != {report.rhs}")
    return report


def verify_factorization_all(
    ring: FusionRing,
    s1: Surface,
    s2: Surface | None,
    matching: Matching,
    *,
    d1: DecompositionGraph | None = None,
    d2: DecompositionGraph | None = None,
) -> FactorizationSummary:
    """
    貼り合わせた曲面のすべての境界ラベリングで因子分解を検証する

    Returns:
        FactorizationSummary（不一致のラベリングを含む）
    """
    glued, lhs, rhs = _glued_tensors(ring, s1, s2, matching, d1, d2)
    mismatches = []
    count = 0
    for labels in itertools.product(range(ring.rank), repeat=glued.n_boundary):
        key = _to_induced(glued, ring, labels)
        count += 1
        if lhs[key] != rhs[key]:
            mismatches.append(FactorizationReport(labels, int(lhs[key]), int(rhs[key])))

    summary = FactorizationSummary(glued=glued, checked=count, mismatches=tuple(mismatches))
    if summary.equal:
        logger.info(f"Factorization holds on all {count} labelings")
    else:
        logger.warning(f"Factorization fails on {len(mismatches)} of {count} labelings")
    return summary


def verify_move_invariance(
    ring: FusionRing, d: DecompositionGraph, edge: int, *, surface: Surface | None = None
) -> TensorComparison:
    """
    2つのパンツを結ぶ辺で flip し、次元テンソルが変わらないことを確かめる

    Raises:
        EdgeNotBetweenTwoPants: 辺が異なる2つのパンツを結んでいない
    """
    moved = flip(d, edge)
    before = dim_tensor(ring, d, surface=surface)
    after = dim_tensor(ring, moved, surface=before.surface)
    return TensorComparison(before, after, f"flip:{edge}")


def insert_cylinder_noop(
    ring: FusionRing, d: DecompositionGraph, edge: int, *, surface: Surface | None = None
) -> TensorComparison:
    """内部辺に円筒を挿入しても次元テンソルが変わらないことを確かめる"""
    moved = subdivide_edge(d, edge)
    before = dim_tensor(ring, d, surface=surface)
    after = dim_tensor(ring, moved, surface=before.surface)
    return TensorComparison(before, after, f"subdivide:{edge}")


def verify_sphere_multiplicity(ring: FusionRing, labels: Sequence[Label]) -> MultiplicityReport:
    """n 穴球面の状態和が N₀^{λ₁…λₙ} に一致することを確かめる"""
    sphere = Surface.connected(0, ["+"] * len(labels))
    state_sum = dim_blocks(ring, canonical_decomposition(sphere), labels, surface=sphere)
    return MultiplicityReport(tuple(labels), state_sum, n_vacuum(ring, labels))


def verify_gluing_associativity(
    ring: FusionRing,
    s1: Surface,
    s2: Surface,
    s3: Surface,
    m12: Matching,
    m23: Matching,
) -> TensorComparison:
    """
    (Σ₁ ∪ Σ₂) ∪ Σ₃ と Σ₁ ∪ (Σ₂ ∪ Σ₃) の次元テンソルを比べる

    Args:
        ring: 融合環
        s1, s2, s3: 曲面
        m12: (s1 の境界, s2 の境界) の組
        m23: (s2 の境界, s3 の境界) の組

    Returns:
        before に左結合、after に右結合の結果を持つ TensorComparison
    """
    used12 = {j for _, j in m12}
    used23 = {i for i, _ in m23}
    if used12 & used23:
        raise DuplicateMatch(f"circles {sorted(used12 & used23)} of the middle surface matched twice")

    d1, d2, d3 = (canonical_decomposition(s) for s in (s1, s2, s3))

    # 左結合: s12 の境界は s1 の残り、s2 の残りの順
    left_s2 = [c for c in range(s2.n_boundary) if c not in used12]
    offset = s1.n_boundary - len(m12)
    m12_3 = [(offset + left_s2.index(i), k) for i, k in m23]
    s_left = glue(glue(s1, s2, m12), s3, m12_3)
    d_left = glue_decompositions(glue_decompositions(d1, d2, m12), d3, m12_3)

    # 右結合: s23 の境界は s2 の残り、s3 の残りの順
    right_s2 = [c for c in range(s2.n_boundary) if c not in used23]
    m1_23 = [(i, right_s2.index(j)) for i, j in m12]
    s_right = glue(s1, glue(s2, s3, m23), m1_23)
    d_right = glue_decompositions(d1, glue_decompositions(d2, d3, m23), m1_23)

    left = dim_tensor(ring, d_left, surface=s_left)
    right = dim_tensor(ring, d_right, surface=s_right)
    return TensorComparison(left, right, "associativity")


def random_moves(
    d: DecompositionGraph, count: int, rng: np.random.Generator
) -> tuple[DecompositionGraph, list[str]]:
    """
    flip と円筒挿入を count 回ランダムに適用する

    Args:
        d: 分解グラフ
        count: 変形の回数
        rng: 乱数生成器（numpy.random.default_rng）

    Returns:
        (変形後の分解, 適用した変形の説明)
    """
    if count < 0:
        raise InvalidArgument("move count must be nonnegative")
    moves = []
    for _ in range(count):
        d, description = random_move(d, rng)
        moves.append(description)
    logger.debug(f"Applied moves: {', '.join(moves)}")
    return d, moves
