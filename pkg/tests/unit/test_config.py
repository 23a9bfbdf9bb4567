"""
Unit tests for settings loading and validation.

These tests check the layered settings (defaults, YAML, environment, flags)
and the validation of each layer without touching the real environment.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

from pathlib import Path

import pytest
import yaml
from pydantic import ValidationError

from ppforms.config import (
    DinewSettings,
    PPFormsSettings,
    ReductionSettings,
    ZetaSettings,
    load_env_overrides,
    load_settings,
)


def _write_yaml(path: Path, data: object) -> Path:
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return path


@pytest.mark.unit
class TestDefaults:
    """Built-in defaults and the shipped config file."""

    def test_builtin_defaults(self) -> None:
        settings = PPFormsSettings()
        assert settings.samples == 20_000
        assert settings.seed == 0
        assert settings.tolerances.decision == 1e-6
        assert settings.reduction.max_attempts == 1000
        assert settings.suites.instances["thm4"] == 1000

    def test_shipped_config_matches_defaults(self, config_dir: Path) -> None:
        """config/ppforms.yaml documents the defaults and must not drift."""
        settings = load_settings(config_dir / "ppforms.yaml", env={})
        assert settings == PPFormsSettings()

    def test_missing_default_file_falls_back(self, monkeypatch: pytest.MonkeyPatch,
                                             tmp_path: Path) -> None:
        monkeypatch.setattr("ppforms.common.get_config_dir", lambda: tmp_path)
        assert load_settings(env={}) == PPFormsSettings()


@pytest.mark.unit
class TestValidation:
    """Field constraints."""

    def test_reduction_budget_covers_all_pairs(self) -> None:
        with pytest.raises(ValidationError):
            ReductionSettings(max_attempts=5)

    @pytest.mark.parametrize("radii", [[], [1.0, -0.5]])
    def test_invalid_radii(self, radii: list[float]) -> None:
        with pytest.raises(ValidationError):
            ZetaSettings(radii=radii)

    def test_invalid_suite_count(self) -> None:
        with pytest.raises(ValidationError):
            PPFormsSettings.model_validate({"suites": {"instances": {"thm1": 0}}})

    def test_dinew_restarts(self) -> None:
        with pytest.raises(ValidationError):
            DinewSettings(restarts=0)

    def test_invalid_yaml_value(self, tmp_path: Path) -> None:
        path = _write_yaml(tmp_path / "bad.yaml", {"samples": 0})
        with pytest.raises(ValidationError):
            load_settings(path, env={})

    def test_missing_explicit_file(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            load_settings(tmp_path / "absent.yaml", env={})

    def test_missing_file_from_environment(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            load_settings(env={"PPFORMS_CONFIG": str(tmp_path / "absent.yaml")})


@pytest.mark.unit
class TestEnvironmentOverrides:
    """PPFORMS_* variables."""

    def test_empty(self) -> None:
        assert load_env_overrides({}) == {}

    def test_all_variables(self) -> None:
        overrides = load_env_overrides({
            "PPFORMS_SAMPLES": "500",
            "PPFORMS_SEED": "7",
            "PPFORMS_TOL": "1e-4",
            "PPFORMS_LOG_LEVEL": "debug",
        })
        assert overrides == {"samples": 500, "seed": 7, "tol": 1e-4, "log_level": "DEBUG"}

    @pytest.mark.parametrize(
        "env",
        [
            {"PPFORMS_SAMPLES": "0"},
            {"PPFORMS_SAMPLES": "many"},
            {"PPFORMS_SEED": "-1"},
            {"PPFORMS_TOL": "0.5"},
            {"PPFORMS_TOL": "0"},
            {"PPFORMS_LOG_LEVEL": "LOUD"},
        ],
    )
    def test_invalid(self, env: dict[str, str]) -> None:
        with pytest.raises(ValueError):
            load_env_overrides(env)

    def test_environment_beats_yaml(self, tmp_path: Path) -> None:
        path = _write_yaml(tmp_path / "run.yaml", {"samples": 100, "seed": 3})
        settings = load_settings(path, env={"PPFORMS_SEED": "9"})
        assert settings.samples == 100
        assert settings.seed == 9

    def test_config_from_environment(self, tmp_path: Path) -> None:
        path = _write_yaml(tmp_path / "run.yaml", {"dinew": {"restarts": 3}})
        settings = load_settings(env={"PPFORMS_CONFIG": str(path)})
        assert settings.dinew.restarts == 3
        assert settings.dinew.descent_steps == 200


@pytest.mark.unit
class TestWithOverrides:
    """Flag-level overrides."""

    def test_none_is_ignored(self) -> None:
        settings = PPFormsSettings(samples=10)
        assert settings.with_overrides(samples=None, seed=None) == settings

    def test_tol_shorthand(self) -> None:
        settings = PPFormsSettings().with_overrides(tol=1e-3, seed=4)
        assert settings.tolerances.decision == 1e-3
        assert settings.tolerances.residual == 1e-9
        assert settings.seed == 4

    def test_original_is_unchanged(self) -> None:
        settings = PPFormsSettings()
        settings.with_overrides(samples=5)
        assert settings.samples == 20_000

    def test_overrides_are_validated(self) -> None:
        with pytest.raises(ValidationError):
            PPFormsSettings().with_overrides(samples=0)
