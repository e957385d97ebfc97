"""モジュラリティ判定と Verlinde 公式による照合"""

from blocks.modularity.models import CrossCheckRow, ModularityReport
from blocks.modularity.operations import (
    cross_check,
    detect_transparent,
    verlinde_dim,
    verlinde_genus_dim,
)

__all__ = [
    "CrossCheckRow",
    "ModularityReport",
    "cross_check",
    "detect_transparent",
    "verlinde_dim",
    "verlinde_genus_dim",
]
