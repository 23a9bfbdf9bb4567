"""
Unit tests for shared utilities.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

from pathlib import Path

import pytest
import yaml
from loguru import logger

from ppforms.common import configure_logging, get_config_dir, get_project_root, load_yaml_config


@pytest.mark.unit
class TestPaths:
    """Project path helpers."""

    def test_project_root(self) -> None:
        root = get_project_root()
        assert (root / "pyproject.toml").exists()
        assert (root / "scripts" / "ppforms").is_dir()

    def test_config_dir(self) -> None:
        assert get_config_dir() == get_project_root() / "config"
        assert (get_config_dir() / "ppforms.yaml").exists()


@pytest.mark.unit
class TestLoadYamlConfig:
    """YAML loading."""

    def test_relative_name_resolves_in_config_dir(self) -> None:
        data = load_yaml_config("ppforms.yaml")
        assert data["samples"] == 20000

    def test_absolute_path(self, tmp_path: Path) -> None:
        path = tmp_path / "x.yaml"
        path.write_text("seed: 4\n", encoding="utf-8")
        assert load_yaml_config(path) == {"seed": 4}

    def test_empty_file(self, tmp_path: Path) -> None:
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert load_yaml_config(path) == {}

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            load_yaml_config(tmp_path / "absent.yaml")

    def test_non_mapping(self, tmp_path: Path) -> None:
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ValueError, match="mapping"):
            load_yaml_config(path)

    def test_syntax_error(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.yaml"
        path.write_text("samples: [1, 2\n", encoding="utf-8")
        with pytest.raises(yaml.YAMLError):
            load_yaml_config(path)


@pytest.mark.unit
class TestLogging:
    """Logging setup."""

    def test_logs_go_to_stderr(self, capsys: pytest.CaptureFixture[str]) -> None:
        configure_logging("INFO", colorize=False)
        logger.info("Suite started", suite="eps")
        logger.debug("hidden")
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "Suite started" in captured.err
        assert "hidden" not in captured.err
