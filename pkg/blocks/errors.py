"""
Error hierarchy

エンジン全体で使う例外クラス
"""

from typing import Any


class BlocksError(Exception):
    """すべてのエンジン例外の基底クラス"""


class InvalidArgument(BlocksError):
    """引数が事前条件を満たさない"""


class LabelOutOfRange(BlocksError):
    """ラベルのインデックスが Δ の範囲外"""

    def __init__(self, label: int, rank: int) -> None:
        super().__init__(f"label {label} out of range for ring with {rank} labels")
        self.label = label
        self.rank = rank


class ResidualTooLarge(BlocksError):
    """Verlinde 再構成の丸め誤差が許容値を超えた"""

    def __init__(self, witness: tuple[int, ...], residual: float, tolerance: float) -> None:
        super().__init__(
            f"entry {witness} deviates from an integer by {residual:.3e} (tolerance {tolerance:.1e})"
        )
        self.witness = witness
        self.residual = residual


class UnknownCatalogName(BlocksError):
    """カタログに存在しない名前"""


class OrientationMismatch(BlocksError):
    """貼り合わせる円周の向きが逆になっていない"""


class IndexOutOfRange(BlocksError):
    """境界円周・辺のインデックスが範囲外"""


class DuplicateMatch(BlocksError):
    """同じ境界円周が複数回マッチングに現れた"""


class InvalidDecomposition(BlocksError):
    """分解グラフが検証に失敗した"""

    def __init__(self, message: str, report: list[Any] | None = None) -> None:
        super().__init__(message)
        self.report = report or []


class DimensionOverflow(BlocksError):
    """整数が 64bit に収まらず、拡張も許可されていない"""


class CapExceeded(BlocksError):
    """全列挙の辺数上限を超えた"""


class EdgeNotBetweenTwoPants(BlocksError):
    """flip の対象辺が異なる2つのパンツを結んでいない"""


class NotModular(BlocksError):
    """モジュラーでないデータに Verlinde 公式を適用しようとした"""


class ParseError(BlocksError):
    """JSON 文書の構文・形式エラー"""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column


class ValidationError(BlocksError):
    """文書は読めたが公理・整合性の検証に失敗した"""

    def __init__(self, message: str, report: list[Any]) -> None:
        super().__init__(message)
        self.report = report
