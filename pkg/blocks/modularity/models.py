"""
Modularity models

透明なラベルの判定結果と Verlinde 公式との照合表
"""

from dataclasses import dataclass

from blocks.fusion_core.models import VACUUM, Label


@dataclass(frozen=True)
class ModularityReport:
    """
    S 行列のモノドロミー判定の結果

    Attributes:
        name: データの名前
        transparent_labels: 透明と判定されたラベル（真空を必ず含む）
        deviations: 各ラベルの max_μ |S_{λμ}S_{00} - S_{0λ}S_{0μ}|
        tolerance: 判定に使った τ_S
    """

    name: str
    transparent_labels: tuple[Label, ...]
    deviations: tuple[float, ...]
    tolerance: float

    @property
    def is_modular(self) -> bool:
        return self.transparent_labels == (VACUUM,)


@dataclass(frozen=True)
class CrossCheckRow:
    """種数1つ分の状態和と Verlinde 公式の比較"""

    genus: int
    state_sum: int
    verlinde: float
    tolerance: float

    @property
    def residual(self) -> float:
        return abs(self.verlinde - round(self.verlinde))

    @property
    def agree(self) -> bool:
        return self.state_sum == round(self.verlinde) and self.residual <= self.tolerance
