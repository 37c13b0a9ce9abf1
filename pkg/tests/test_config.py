"""
Tests of the settings validators.
"""
from pathlib import Path
import pytest
from pydantic import ValidationError
from core.config import Settings


def test_defaults() -> None:
    setting = Settings(_env_file=None)
    assert setting.OUTPUT_DIR == Path("results")
    assert setting.PLATEAU_SHARE == 0.2
    assert setting.HERMITIAN_TOLERANCE == 1e-12


def test_environment_overrides(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("JOBS", "3")
    monkeypatch.setenv("OUTPUT_DIR", "elsewhere")
    setting = Settings(_env_file=None)
    assert setting.JOBS == 3
    assert setting.OUTPUT_DIR == Path("elsewhere")


@pytest.mark.parametrize(("field", "value"), [
    ("PLATEAU_SHARE", 0.0), ("PLATEAU_SHARE", 1.5), ("QFI_EPSILON", -1.0),
    ("JOBS", 0), ("ENSEMBLE_SIZE", 0)])
def test_invalid_values(field: str, value: float) -> None:
    with pytest.raises(ValidationError):
        Settings(_env_file=None, **{field: value})
