"""
Fusion ring models

ラベル集合 Δ・双対・融合係数 N と、S 行列付きのモジュラーデータを表す不変な値型
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import numpy.typing as npt

from blocks.errors import LabelOutOfRange

# 真空は常にインデックス 0
VACUUM = 0

Label = int
"""Δ へのインデックス。0 は真空。"""

FusionTensor = tuple[tuple[tuple[int, ...], ...], ...]
"""N[a][b][c] = N_{ab}^c"""


@dataclass(frozen=True)
class ValidationIssue:
    """検証レポートの1項目（違反した公理と証拠となるラベル組）"""

    axiom: str
    witness: tuple[int, ...]
    message: str

    def to_dict(self) -> dict[str, object]:
        return {"axiom": self.axiom, "witness": list(self.witness), "message": self.message}


@dataclass(frozen=True)
class FusionRing:
    """
    融合環 (Δ, λ ↦ λ̄, N)

    Attributes:
        name: 環の名前
        labels: ラベル名（インデックス順、0 が真空）
        dual: 双対の対合（インデックス → インデックス）
        n_tensor: N[a][b][c] = N_{ab}^c
    """

    name: str
    labels: tuple[str, ...]
    dual: tuple[int, ...]
    n_tensor: FusionTensor = field(repr=False)

    @classmethod
    def from_function(
        cls,
        name: str,
        labels: Sequence[str],
        dual: Sequence[int],
        rule: Callable[[int, int, int], int],
    ) -> "FusionRing":
        """
        融合則の関数から環を作る

        Args:
            name: 環の名前
            labels: ラベル名
            dual: 双対の対合
            rule: (a, b, c) -> N_{ab}^c

        Returns:
            FusionRing
        """
        rank = len(labels)
        tensor = tuple(
            tuple(tuple(int(rule(a, b, c)) for c in range(rank)) for b in range(rank))
            for a in range(rank)
        )
        return cls(name=name, labels=tuple(labels), dual=tuple(dual), n_tensor=tensor)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def check_label(self, label: Label) -> Label:
        if not 0 <= label < self.rank:
            raise LabelOutOfRange(label, self.rank)
        return label

    def index(self, name: str) -> Label:
        """ラベル名をインデックスに変換する"""
        try:
            return self.labels.index(name)
        except ValueError:
            raise LabelOutOfRange(-1, self.rank) from None

    def n(self, a: Label, b: Label, c: Label) -> int:
        return self.n_tensor[a][b][c]

    def bar(self, label: Label) -> Label:
        return self.dual[label]

    @cached_property
    def array(self) -> npt.NDArray[np.int64]:
        """N を int64 の numpy 配列として返す（読み取り専用）"""
        arr = np.array(self.n_tensor, dtype=np.int64).reshape((self.rank,) * 3)
        arr.setflags(write=False)
        return arr


@dataclass(frozen=True)
class ModularData:
    """
    融合環と S 行列の組

    Attributes:
        ring: 融合環
        s_matrix: |Δ|×|Δ| の複素行列（行優先のタプル）
    """

    ring: FusionRing
    s_matrix: tuple[tuple[complex, ...], ...] = field(repr=False)

    @classmethod
    def from_array(cls, ring: FusionRing, s: npt.ArrayLike) -> "ModularData":
        matrix = np.asarray(s, dtype=complex)
        rows = tuple(tuple(complex(x) for x in row) for row in matrix)
        return cls(ring=ring, s_matrix=rows)

    @property
    def name(self) -> str:
        return self.ring.name

    @property
    def rank(self) -> int:
        return self.ring.rank

    @cached_property
    def s(self) -> npt.NDArray[np.complex128]:
        arr = np.array(self.s_matrix, dtype=complex)
        arr.setflags(write=False)
        return arr
