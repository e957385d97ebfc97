"""
Engine models

次元テンソルと縮約計画を表す値型
"""

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt

from blocks.errors import InvalidArgument
from blocks.fusion_core.models import FusionRing, Label
from blocks.surface_model.models import BoundaryCircle, Orientation, Surface
from blocks.surface_model.operations import disjoint_union

INT64_MAX = int(np.iinfo(np.int64).max)


@dataclass(frozen=True)
class DimensionTensor:
    """
    境界ラベルごとの共形ブロック空間の次元

    Attributes:
        surface: 対象の曲面（軸は境界円周の順）
        ring: 軸のラベル集合 Δ を与える融合環
        values: 行優先に並べた全成分（Python int）
    """

    surface: Surface
    ring: FusionRing = field(repr=False)
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        expected = self.ring.rank**self.surface.n_boundary
        if len(self.values) != expected:
            raise InvalidArgument(f"tensor has {len(self.values)} entries, expected {expected}")

    @classmethod
    def from_array(cls, surface: Surface, ring: FusionRing, array: npt.ArrayLike) -> "DimensionTensor":
        flat = np.asarray(array, dtype=object).reshape(-1)
        return cls(surface=surface, ring=ring, values=tuple(int(x) for x in flat))

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.ring.rank,) * self.surface.n_boundary

    @property
    def axis_labels(self) -> tuple[tuple[str, ...], ...]:
        return (self.ring.labels,) * self.surface.n_boundary

    @property
    def scalar(self) -> int:
        """閉曲面の次元"""
        if self.surface.n_boundary:
            raise InvalidArgument("tensor of a surface with boundary is not a scalar")
        return self.values[0]

    def entry(self, labels: Sequence[Label]) -> int:
        if len(labels) != self.surface.n_boundary:
            raise InvalidArgument(f"expected {self.surface.n_boundary} labels, got {len(labels)}")
        offset = 0
        for label in labels:
            self.ring.check_label(label)
            offset = offset * self.ring.rank + label
        return self.values[offset]

    def items(self) -> Iterator[tuple[tuple[Label, ...], int]]:
        """(ラベル組, 次元) を行優先で列挙する"""
        keys = itertools.product(range(self.ring.rank), repeat=self.surface.n_boundary)
        return zip(keys, self.values, strict=True)

    def as_array(self) -> npt.NDArray[np.object_]:
        return np.array(self.values, dtype=object).reshape(self.shape)

    def induced(self) -> "DimensionTensor":
        """
        逆向きの軸をすべて誘導された向きに書き直す

        逆向き円周のラベル λ は誘導された向きでは λ̄ と読む。
        """
        array = self.as_array()
        bar = list(self.ring.dual)
        circles = []
        for axis, circle in enumerate(self.surface.boundary):
            if circle.orientation is Orientation.REVERSED:
                array = np.take(array, bar, axis=axis)
            circles.append(BoundaryCircle(Orientation.INDUCED, circle.label))
        surface = Surface(boundary=tuple(circles), components=self.surface.components)
        return DimensionTensor.from_array(surface, self.ring, array)

    def outer(self, other: "DimensionTensor") -> "DimensionTensor":
        """非交和の次元テンソル（外積）"""
        if other.ring != self.ring:
            raise InvalidArgument("tensors over different rings")
        array = np.multiply.outer(self.as_array(), other.as_array())
        return DimensionTensor.from_array(disjoint_union(self.surface, other.surface), self.ring, array)


class StepKind(str, Enum):
    MERGE = "merge"
    TRACE = "trace"


@dataclass(frozen=True)
class ContractionStep:
    """内部辺1本の消去（cost は生成される中間テンソルの成分数）"""

    edge: int
    kind: StepKind
    cost: int


@dataclass(frozen=True)
class ContractionPlan:
    rank: int
    n_edges: int
    steps: tuple[ContractionStep, ...]

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(step.edge for step in self.steps)

    @property
    def total_cost(self) -> int:
        return sum(step.cost for step in self.steps)

    @property
    def naive_cost(self) -> int:
        """全ラベリング列挙のコスト |Δ|^E"""
        return self.rank**self.n_edges
