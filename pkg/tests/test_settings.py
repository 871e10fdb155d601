"""Tests for environment-driven settings."""

from pathlib import Path

import pytest

from app.utils.settings import TEST_MODE_SAMPLE_CAP, cache_dir, env_flag, is_dev_mode, is_test_mode, sample_budget


class TestEnvFlags:
    """Test boolean environment flags."""

    @pytest.mark.parametrize("value", ["1", "true", "YES", " on "])
    def test_truthy(self, monkeypatch, value):
        """Test that accepted spellings enable a flag."""
        monkeypatch.setenv("ZORNLAB_DEV_MODE", value)
        assert env_flag("ZORNLAB_DEV_MODE")
        assert is_dev_mode()

    @pytest.mark.parametrize("value", ["", "0", "false", "off", "maybe"])
    def test_falsy(self, monkeypatch, value):
        """Test that anything else leaves a flag disabled."""
        monkeypatch.setenv("ZORNLAB_DEV_MODE", value)
        assert not is_dev_mode()

    def test_unset(self, monkeypatch):
        """Test that an unset flag is disabled."""
        monkeypatch.delenv("ZORNLAB_DEV_MODE", raising=False)
        assert not env_flag("ZORNLAB_DEV_MODE")


class TestSampleBudget:
    """Test the test-mode cap."""

    def test_capped_in_test_mode(self):
        """Test that the session fixture caps budgets."""
        assert is_test_mode()
        assert sample_budget(1_000_000) == TEST_MODE_SAMPLE_CAP
        assert sample_budget(10) == 10

    def test_uncapped_otherwise(self, monkeypatch):
        """Test that budgets pass through without test mode."""
        monkeypatch.setenv("ZORNLAB_TEST_MODE", "0")
        assert sample_budget(1_000_000) == 1_000_000


class TestCacheDir:
    """Test cache directory resolution."""

    def test_override_wins(self, monkeypatch, tmp_path):
        """Test that an explicit directory beats the environment."""
        monkeypatch.setenv("ZORNLAB_CACHE_DIR", "/elsewhere")
        assert cache_dir(tmp_path) == tmp_path

    def test_environment(self, monkeypatch):
        """Test that ZORNLAB_CACHE_DIR is used when set."""
        monkeypatch.setenv("ZORNLAB_CACHE_DIR", "/tmp/zl")
        assert cache_dir() == Path("/tmp/zl")

    def test_default(self, monkeypatch):
        """Test the home-directory default."""
        monkeypatch.delenv("ZORNLAB_CACHE_DIR", raising=False)
        assert cache_dir() == Path.home() / ".cache" / "zornlab"
