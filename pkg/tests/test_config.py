"""
設定のテスト
"""

import pytest
from pydantic import ValidationError as SettingsError

from blocks.config import Settings, get_settings


class TestSettings:
    def test_defaults(self, monkeypatch):
        for name in ("BLOCKS_BRUTE_CAP", "BLOCKS_S_TOLERANCE", "BLOCKS_ALLOW_BIGINT"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings(_env_file=None)
        assert settings.brute_cap == 12
        assert settings.s_tolerance == 1e-9
        assert settings.verlinde_tolerance == 1e-6
        assert settings.allow_bigint is True

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("BLOCKS_BRUTE_CAP", "3")
        monkeypatch.setenv("BLOCKS_ALLOW_BIGINT", "false")
        settings = get_settings()
        assert settings.brute_cap == 3
        assert settings.allow_bigint is False

    def test_cached(self):
        assert get_settings() is get_settings()

    def test_negative_cap_rejected(self, monkeypatch):
        monkeypatch.setenv("BLOCKS_BRUTE_CAP", "-1")
        with pytest.raises(SettingsError):
            Settings(_env_file=None)
