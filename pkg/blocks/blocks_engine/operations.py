"""
Blocks engine

状態和による共形ブロック空間の次元計算

各部品を境界ラベルで添字付けた整数テンソルにし、内部辺について縮約する。
int64 で計算し、最悪値が 64bit を超えそうなステップだけ Python int（object 配列）に広げる。
"""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from blocks.blocks_engine.models import INT64_MAX, ContractionPlan, DimensionTensor, StepKind
from blocks.blocks_engine.planner import plan_contraction
from blocks.config import get_settings
from blocks.errors import CapExceeded, DimensionOverflow, InvalidArgument, InvalidDecomposition
from blocks.fusion_core.models import VACUUM, FusionRing, Label
from blocks.fusion_core.operations import n3
from blocks.surface_model.models import Atom, AtomKind, DecompositionGraph, LegRef, Surface
from blocks.surface_model.operations import (
    infer_surface,
    validate_decomposition,
    validate_structure,
)

logger = logging.getLogger(__name__)

# 軸のタグ: ("edge", 内部辺) または ("leg", 外部脚の位置)
AxisTag = tuple[str, int]


def atom_dimension(ring: FusionRing, atom: Atom, labels: Sequence[Label]) -> int:
    """
    部品1つの次元

    符号 -1 の脚はラベルを双対にして読む。

    Args:
        ring: 融合環
        atom: 部品
        labels: 脚の順のラベル

    Returns:
        パンツは N₀^{μ₁μ₂μ₃}、円筒は δ_{μ₂,μ̄₁}、円板は δ_{μ,0}
    """
    if len(labels) != atom.legs:
        raise InvalidArgument(f"{atom.kind.value} needs {atom.legs} labels, got {len(labels)}")
    for label in labels:
        ring.check_label(label)
    mu = [
        label if sign > 0 else ring.bar(label)
        for label, sign in zip(labels, atom.signs, strict=True)
    ]

    match atom.kind:
        case AtomKind.PANTS:
            return n3(ring, *mu)
        case AtomKind.CYLINDER:
            return int(mu[1] == ring.bar(mu[0]))
        case AtomKind.DISK:
            return int(mu[0] == VACUUM)
    raise InvalidArgument(f"unknown atom kind {atom.kind}")


def factor_tensor(ring: FusionRing, atom: Atom) -> npt.NDArray[np.int64]:
    """部品の次元を脚ラベルで添字付けた int64 テンソル"""
    shape = (ring.rank,) * atom.legs
    table = np.zeros(shape, dtype=np.int64)
    for labels in itertools.product(range(ring.rank), repeat=atom.legs):
        table[labels] = atom_dimension(ring, atom, labels)
    return table


@dataclass
class _Term:
    array: npt.NDArray[np.int64] | npt.NDArray[np.object_]
    tags: list[AxisTag]


def _require_valid(d: DecompositionGraph, surface: Surface | None) -> Surface:
    if surface is None:
        report = validate_structure(d)
        if not report:
            return infer_surface(d)
    else:
        report = validate_decomposition(d, surface)
        if not report:
            return surface
    raise InvalidDecomposition(f"invalid decomposition: {report[0].message}", report)


def _check_labels(ring: FusionRing, d: DecompositionGraph, labels: Sequence[Label]) -> None:
    if len(labels) != len(d.external_legs):
        raise InvalidArgument(f"expected {len(d.external_legs)} boundary labels, got {len(labels)}")
    for label in labels:
        ring.check_label(label)


def _peak(array: npt.NDArray[np.generic]) -> int:
    return int(array.max()) if array.size else 0


def _widen(terms: Sequence[_Term], bound: int, allow_bigint: bool) -> None:
    if bound <= INT64_MAX or all(term.array.dtype == object for term in terms):
        return
    if not allow_bigint:
        raise DimensionOverflow(f"intermediate bound {bound} exceeds the signed 64-bit range")
    logger.debug(f"Widening to Python integers (bound {bound})")
    for term in terms:
        term.array = term.array.astype(object)


def contract(
    ring: FusionRing,
    d: DecompositionGraph,
    plan: ContractionPlan | None = None,
    fixed: Sequence[Label] | None = None,
    *,
    allow_bigint: bool | None = None,
) -> npt.NDArray[np.int64] | npt.NDArray[np.object_]:
    """
    縮約計画を実行する

    Args:
        ring: 融合環
        d: 構造的に正しい分解グラフ
        plan: 縮約計画（省略時は plan_contraction）
        fixed: 外部脚のラベル（省略時は外部軸を残す）
        allow_bigint: 64bit を超えたら Python int に広げるか（省略時は設定値）

    Returns:
        外部脚の順に軸を持つ配列（fixed 指定時は0次元）

    Raises:
        DimensionOverflow: allow_bigint が False で 64bit を超える
    """
    widen = get_settings().allow_bigint if allow_bigint is None else allow_bigint
    plan = plan or plan_contraction(d, ring.rank)

    tag_of: dict[LegRef, AxisTag] = {}
    for index, (u, v) in enumerate(d.internal_edges):
        tag_of[u] = tag_of[v] = ("edge", index)
    for position, ref in enumerate(d.external_legs):
        tag_of[ref] = ("leg", position)

    terms: list[_Term] = []
    for index, atom in enumerate(d.atoms):
        array = factor_tensor(ring, atom)
        tags = [tag_of[LegRef(index, leg)] for leg in range(atom.legs)]
        if fixed is not None:
            # 固定ラベルの外部軸は先に切り出す（後ろの軸から）
            for axis in reversed(range(atom.legs)):
                kind, position = tags[axis]
                if kind == "leg":
                    array = np.asarray(np.take(array, fixed[position], axis=axis))
                    del tags[axis]
        terms.append(_Term(array, tags))

    for step in plan.steps:
        tag = ("edge", step.edge)
        holders = [term for term in terms if tag in term.tags]
        if step.kind is StepKind.MERGE:
            first, second = holders
            _widen(holders, _peak(first.array) * _peak(second.array) * ring.rank, widen)
            i, j = first.tags.index(tag), second.tags.index(tag)
            array = np.tensordot(first.array, second.array, axes=([i], [j]))
            tags = first.tags[:i] + first.tags[i + 1 :] + second.tags[:j] + second.tags[j + 1 :]
            terms = [term for term in terms if term is not first and term is not second]
            terms.append(_Term(array, tags))
        else:
            (term,) = holders
            _widen(holders, _peak(term.array) * ring.rank, widen)
            i = term.tags.index(tag)
            j = term.tags.index(tag, i + 1)
            term.array = np.asarray(np.trace(term.array, axis1=i, axis2=j), dtype=term.array.dtype)
            term.tags = [t for k, t in enumerate(term.tags) if k not in (i, j)]

    # 連結成分ごとに残った項を外積でまとめる
    result: npt.NDArray[np.generic] = np.array(1, dtype=np.int64)
    free: list[AxisTag] = []
    for term in terms:
        holder = _Term(result, free)
        _widen([holder, term], _peak(result) * _peak(term.array), widen)
        dtype = object if object in (holder.array.dtype, term.array.dtype) else np.int64
        result = np.asarray(np.multiply.outer(holder.array, term.array), dtype=dtype)
        free = free + term.tags

    order = sorted(range(len(free)), key=lambda axis: free[axis][1])
    result = np.asarray(result)
    return np.transpose(result, order) if order else result


def _checked(value: int, allow_bigint: bool | None) -> int:
    widen = get_settings().allow_bigint if allow_bigint is None else allow_bigint
    if not widen and value > INT64_MAX:
        raise DimensionOverflow(f"dimension {value} exceeds the signed 64-bit range")
    return value


def dim_blocks(
    ring: FusionRing,
    d: DecompositionGraph,
    labels: Sequence[Label],
    *,
    surface: Surface | None = None,
    plan: ContractionPlan | None = None,
    allow_bigint: bool | None = None,
) -> int:
    """
    境界ラベルを固定した共形ブロック空間の次元

    Args:
        ring: 融合環
        d: 分解グラフ
        labels: 外部脚（境界円周）の順のラベル
        surface: 検証に使う曲面（省略時は d から復元）
        plan: 縮約計画
        allow_bigint: 64bit を超えたら Python int に広げるか

    Returns:
        dim V(Σ; λ₁, …, λₙ)

    Raises:
        InvalidDecomposition: 分解グラフが不正
        DimensionOverflow: 64bit を超え、拡張が許可されていない
    """
    _require_valid(d, surface)
    _check_labels(ring, d, labels)
    value = contract(ring, d, plan, fixed=labels, allow_bigint=allow_bigint)
    return _checked(int(value), allow_bigint)


def dim_tensor(
    ring: FusionRing,
    d: DecompositionGraph,
    *,
    surface: Surface | None = None,
    plan: ContractionPlan | None = None,
    allow_bigint: bool | None = None,
) -> DimensionTensor:
    """
    すべての境界ラベリングの次元を1回の縮約で求める

    Args:
        ring: 融合環
        d: 分解グラフ
        surface: 検証に使う曲面（省略時は d から復元）
        plan: 縮約計画
        allow_bigint: 64bit を超えたら Python int に広げるか

    Returns:
        DimensionTensor
    """
    target = _require_valid(d, surface)
    array = contract(ring, d, plan, allow_bigint=allow_bigint)
    tensor = DimensionTensor.from_array(target, ring, array)
    logger.debug(f"Dimension tensor over {ring.name}: {len(tensor.values)} entries")
    return tensor


def brute_force_dim(
    ring: FusionRing,
    d: DecompositionGraph,
    labels: Sequence[Label],
    *,
    cap: int | None = None,
    allow_bigint: bool | None = None,
) -> int:
    """
    内部辺の全ラベリングを列挙して状態和をそのまま評価する（独立オラクル）

    Args:
        ring: 融合環
        d: 分解グラフ
        labels: 境界ラベル
        cap: 内部辺数の上限（省略時は BLOCKS_BRUTE_CAP）

    Returns:
        dim V(Σ; λ₁, …, λₙ)

    Raises:
        CapExceeded: 内部辺が cap 本を超える
    """
    limit = get_settings().brute_cap if cap is None else cap
    n_edges = len(d.internal_edges)
    if n_edges > limit:
        raise CapExceeded(f"{n_edges} internal edges exceed the brute-force cap {limit}")
    _require_valid(d, None)
    _check_labels(ring, d, labels)

    leg_label: dict[LegRef, int] = dict(zip(d.external_legs, labels, strict=True))
    total = 0
    for assignment in itertools.product(range(ring.rank), repeat=n_edges):
        for (u, v), label in zip(d.internal_edges, assignment, strict=True):
            leg_label[u] = leg_label[v] = label
        term = 1
        for index, atom in enumerate(d.atoms):
            term *= atom_dimension(
                ring, atom, [leg_label[LegRef(index, leg)] for leg in range(atom.legs)]
            )
            if not term:
                break
        total += term

    logger.debug(f"Brute force over {ring.rank ** n_edges} labelings: {total}")
    return _checked(total, allow_bigint)

