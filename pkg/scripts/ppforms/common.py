"""
Common utilities shared by the ppforms modules and CLI.

This module provides:
- Structured logging with Loguru (stderr only; stdout carries JSON payloads)
- Path utilities for locating the project root and the config/ directory
- YAML configuration loading with error reporting

Examples:
    >>> configure_logging("DEBUG")
    >>> logger.info("Suite started", suite="eps", seed=0)
    >>> data = load_yaml_config("ppforms.yaml")
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any

import yaml
from loguru import logger

LOG_FORMAT = "<level>[{level: <8}]</level> {message}"

DEFAULT_CONFIG_FILE = "ppforms.yaml"


def configure_logging(level: str = "INFO", colorize: bool | None = None) -> None:
    """
    Route all log output to stderr with the project format.

    Removes Loguru's default handler first so repeated calls do not duplicate
    output. Standard output is never used for logs because CLI commands print
    their JSON payload there.

    Args:
        level: Minimum level name (``"DEBUG"``, ``"INFO"``, ``"WARNING"``, ...)
        colorize: Force or disable ANSI colors; ``None`` lets Loguru decide
    """
    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level=level.upper(), colorize=colorize)


def log_success(message: str, **kwargs: Any) -> None:
    """
    Log a success level message with structured context.

    Example:
        >>> log_success("Suite passed", suite="thm1", instances=500)
    """
    logger.success(message, **kwargs)


def get_project_root() -> Path:
    """
    Get the project root directory.

    Returns:
        Path: Absolute path to the repository root (two levels above this package)
    """
    return Path(__file__).resolve().parent.parent.parent


def get_config_dir() -> Path:
    """
    Get the configuration directory path.

    Returns:
        Path: Absolute path to config/ directory
    """
    return get_project_root() / "config"


def load_yaml_config(path: Path | str) -> dict[str, Any]:
    """
    Load and parse a YAML configuration file.

    Relative names are resolved inside the config/ directory. Uses
    ``yaml.safe_load`` so no arbitrary objects are constructed.

    Args:
        path: File name inside config/ or an absolute path

    Returns:
        dict[str, Any]: Parsed mapping (empty for an empty file)

    Raises:
        FileNotFoundError: If the configuration file doesn't exist.
        yaml.YAMLError: If YAML syntax is invalid.
        ValueError: If the top-level YAML value is not a mapping.
    """
    config_path = Path(path)
    if not config_path.is_absolute():
        config_path = get_config_dir() / config_path

    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    try:
        with open(config_path) as f:
            content = yaml.safe_load(f)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        logger.error(
            "YAML parsing error in {file}: {error}",
            file=str(config_path),
            error=str(e),
            line_number=mark.line + 1 if mark is not None else None,
        )
        raise

    if content is None:
        return {}
    if not isinstance(content, dict):
        raise ValueError(f"{config_path} must contain a mapping, got {type(content).__name__}")

    logger.debug(
        "Loaded configuration from {file}",
        file=str(config_path),
        keys=sorted(content.keys()),
    )
    return content
