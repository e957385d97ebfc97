"""
Modularity operations

透明なラベルの検出（S 行列のモノドロミー判定）と Verlinde 公式による状態和の照合
"""

import logging
from collections.abc import Sequence

import numpy as np

from blocks.blocks_engine.operations import dim_blocks
from blocks.config import get_settings
from blocks.errors import InvalidArgument, NotModular
from blocks.fusion_core.models import VACUUM, Label, ModularData
from blocks.modularity.models import CrossCheckRow, ModularityReport
from blocks.surface_model.models import Surface
from blocks.surface_model.operations import canonical_decomposition

logger = logging.getLogger(__name__)

MAX_CROSS_CHECK_GENUS = 4


def detect_transparent(data: ModularData, *, tolerance: float | None = None) -> ModularityReport:
    """
    自明なモノドロミーを持つラベルを探す

    λ が透明 ⇔ すべての μ で S_{λμ}S_{00} = S_{0λ}S_{0μ}

    Args:
        data: モジュラーデータ
        tolerance: 判定の許容値（省略時は τ_S）

    Returns:
        ModularityReport
    """
    tol = get_settings().s_tolerance if tolerance is None else tolerance
    s = data.s
    deviation = np.abs(s * s[VACUUM, VACUUM] - np.outer(s[VACUUM], s[VACUUM])).max(axis=1)
    transparent = tuple(int(label) for label in np.nonzero(deviation <= tol)[0])
    report = ModularityReport(
        name=data.name,
        transparent_labels=transparent,
        deviations=tuple(float(x) for x in deviation),
        tolerance=tol,
    )
    logger.info(f"{data.name}: transparent labels {transparent}, modular={report.is_modular}")
    return report


def _require_modular(data: ModularData) -> None:
    report = detect_transparent(data)
    if not report.is_modular:
        extra = [data.ring.labels[label] for label in report.transparent_labels if label != VACUUM]
        raise NotModular(f"{data.name} has transparent labels {extra}")


def verlinde_genus_dim(data: ModularData, genus: int) -> float:
    """
    閉曲面の Verlinde 次元 Σ_λ S_{0λ}^{2-2g}

    Args:
        data: モジュラーデータ
        genus: 種数 g ≥ 0

    Returns:
        実数値（モジュラーなら整数に近い）

    Raises:
        NotModular: 透明なラベルが真空以外にある
    """
    if genus < 0:
        raise InvalidArgument(f"genus must be nonnegative, got {genus}")
    _require_modular(data)
    row = data.s[VACUUM].real
    return float(np.sum(row ** (2 - 2 * genus)))


def verlinde_dim(data: ModularData, genus: int, labels: Sequence[Label]) -> complex:
    """
    境界ラベル付きの Verlinde 公式 Σ_ρ S_{0ρ}^{2-2g-n} Π_i S_{λ_i ρ}

    ラベルは誘導された向きで読む。
    """
    if genus < 0:
        raise InvalidArgument(f"genus must be nonnegative, got {genus}")
    for label in labels:
        data.ring.check_label(label)
    _require_modular(data)
    s = data.s
    terms = s[VACUUM] ** (2 - 2 * genus - len(labels))
    for label in labels:
        terms = terms * s[label]
    return complex(np.sum(terms))


def cross_check(
    data: ModularData,
    g_max: int,
    *,
    g_min: int = 2,
    tolerance: float | None = None,
) -> list[CrossCheckRow]:
    """
    標準分解の状態和と Verlinde 次元を種数ごとに比べる

    Args:
        data: モジュラーデータ
        g_max: 最大種数（4 以下）
        g_min: 最小種数（0 なら球面、1 ならトーラスも含む）
        tolerance: 整数からのずれの許容値（省略時は τ_V）

    Returns:
        種数ごとの CrossCheckRow

    Raises:
        NotModular: データがモジュラーでない
    """
    tol = get_settings().verlinde_tolerance if tolerance is None else tolerance
    if not 0 <= g_min <= g_max <= MAX_CROSS_CHECK_GENUS:
        raise InvalidArgument(
            f"genus range [{g_min}, {g_max}] must lie within [0, {MAX_CROSS_CHECK_GENUS}]"
        )
    _require_modular(data)

    rows = []
    for genus in range(g_min, g_max + 1):
        surface = Surface.connected(genus)
        state_sum = dim_blocks(data.ring, canonical_decomposition(surface), [], surface=surface)
        row = CrossCheckRow(genus, state_sum, verlinde_genus_dim(data, genus), tol)
        if not row.agree:
            logger.warning(f"{data.name} genus {genus}: state sum {state_sum} vs Verlinde {row.verlinde}")
        rows.append(row)
    return rows
