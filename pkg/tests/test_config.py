"""
Unit tests for environment settings.

Run: python -m pytest tests/test_config.py -v
"""
import pytest

from rdlab.config import BUNDLED_CATALOGUE, load_settings

ENV_NAMES = ("RDLAB_THREADS", "RDLAB_SEED", "RDLAB_TOL", "RDLAB_CATALOGUE", "RDLAB_LOG_LEVEL")


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    """Test the values used when nothing is set."""
    settings = load_settings()
    assert settings.threads == 1 and settings.seed == 0
    assert settings.tol == 1e-10 and settings.catalogue_path == BUNDLED_CATALOGUE
    assert settings.log_level == "WARNING"


def test_environment_overrides(monkeypatch):
    """Test that every variable is read."""
    monkeypatch.setenv("RDLAB_THREADS", "4")
    monkeypatch.setenv("RDLAB_SEED", "17")
    monkeypatch.setenv("RDLAB_TOL", "1e-6")
    monkeypatch.setenv("RDLAB_CATALOGUE", "/tmp/cat.json")
    monkeypatch.setenv("RDLAB_LOG_LEVEL", "debug")
    settings = load_settings()
    assert (settings.threads, settings.seed, settings.tol) == (4, 17, 1e-6)
    assert settings.catalogue_path == "/tmp/cat.json" and settings.log_level == "DEBUG"


@pytest.mark.parametrize(
    "name, raw",
    [
        ("RDLAB_THREADS", "0"),
        ("RDLAB_THREADS", "many"),
        ("RDLAB_SEED", "-1"),
        ("RDLAB_TOL", "tiny"),
        ("RDLAB_TOL", "-1e-3"),
        ("RDLAB_LOG_LEVEL", "LOUD"),
    ],
)
def test_bad_values_raise(monkeypatch, name, raw):
    """Test that invalid settings raise RuntimeError naming the variable."""
    monkeypatch.setenv(name, raw)
    with pytest.raises(RuntimeError, match=name):
        load_settings()


def test_blank_values_fall_back(monkeypatch):
    """Test that empty strings behave like unset variables."""
    monkeypatch.setenv("RDLAB_THREADS", "")
    monkeypatch.setenv("RDLAB_TOL", " ")
    settings = load_settings()
    assert settings.threads == 1 and settings.tol == 1e-10
