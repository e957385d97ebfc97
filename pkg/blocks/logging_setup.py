"""
Logging setup

CLI エントリーポイント用のログ設定
"""

import logging
import sys

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(level: str = "WARNING") -> None:
    """
    ルートロガーを設定する

    標準出力はコマンド結果専用なので、ログは標準エラーに出す。

    Args:
        level: ログレベル名（DEBUG, INFO, ...）
    """
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )
