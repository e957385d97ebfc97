"""
共通フィクスチャ
"""

from collections.abc import Iterator
from pathlib import Path

import pytest

from blocks.config import get_settings
from blocks.fusion_core.catalog import catalog
from blocks.fusion_core.models import ModularData

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def fresh_settings() -> Iterator[None]:
    """環境変数の変更がテスト間で漏れないように設定キャッシュを消す"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def ising() -> ModularData:
    return catalog("ising")


@pytest.fixture
def fibonacci() -> ModularData:
    return catalog("fibonacci")


@pytest.fixture
def trivial() -> ModularData:
    return catalog("trivial")


@pytest.fixture
def z2_boson() -> ModularData:
    return catalog("z2_boson")


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR
