"""
Conformal block dimensions

融合環・モジュラーデータから、曲面の共形ブロック空間の次元を
パンツ分解の状態和として計算するライブラリ
"""

__version__ = "0.1.0"
