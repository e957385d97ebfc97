"""
Settings

環境変数（BLOCKS_*）と .env ファイルから読み込むエンジン設定
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """エンジン全体の調整パラメータ"""

    model_config = SettingsConfigDict(
        env_prefix="BLOCKS_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # 全列挙オラクルの内部辺数上限（4^12 ≈ 1.6e7 ラベリング）
    brute_cap: int = Field(default=12, ge=0)
    # S 行列の数値チェック（τ_S）
    s_tolerance: float = Field(default=1e-9, gt=0)
    # Verlinde 公式と状態和の一致判定（τ_V）
    verlinde_tolerance: float = Field(default=1e-6, gt=0)
    # False のとき int64 を超える次元は DimensionOverflow
    allow_bigint: bool = True
    log_level: str = "WARNING"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    設定を取得する（プロセス内でキャッシュ）

    Returns:
        Settings インスタンス
    """
    return Settings()
