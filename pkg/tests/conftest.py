"""
Pytest configuration and shared fixtures for ppforms tests
"""

import json
from collections.abc import Iterator
from pathlib import Path
from typing import Any

import pytest
from loguru import logger

from ppforms.config import DinewSettings, PPFormsSettings, ZetaSettings
from ppforms.ppmatrix import Omega6Form, PPMatrixForm
from ppforms.serialization import matrix_to_json

# Project paths
PROJECT_ROOT = Path(__file__).parent.parent
CONFIG_DIR = PROJECT_ROOT / "config"
SETTINGS_FILE = CONFIG_DIR / "ppforms.yaml"


@pytest.fixture(autouse=True)
def quiet_logging() -> Iterator[None]:
    """Drop Loguru handlers around each test so sinks never outlive capture"""
    logger.remove()
    yield
    logger.remove()


@pytest.fixture(scope="session")
def project_root() -> Path:
    """Project root directory"""
    return PROJECT_ROOT


@pytest.fixture(scope="session")
def config_dir() -> Path:
    """Configuration directory"""
    return CONFIG_DIR


@pytest.fixture
def fast_settings() -> PPFormsSettings:
    """Settings with small search budgets for unit tests"""
    return PPFormsSettings(
        samples=2000,
        dinew=DinewSettings(descent_steps=60, restarts=6, polish_rounds=10),
        zeta=ZetaSettings(samples=64, restarts=2),
    )


@pytest.fixture
def identity22() -> PPMatrixForm:
    """Lex identity matrix of a (2,2)-form on C^4 (strongly positive)"""
    return PPMatrixForm.identity(2)


@pytest.fixture
def negative_square_omega() -> Omega6Form:
    """Diagonal Omega matrix with square -2"""
    return Omega6Form.from_values(_diagonal([1, 1, 1, 1, -1, -1]))


def _diagonal(values: list[int]) -> list[list[int]]:
    return [[values[j] if j == k else 0 for k in range(len(values))] for j in range(len(values))]


@pytest.fixture
def write_json(tmp_path: Path):
    """Write a payload into tmp_path and return the file path"""

    def _write(name: str, payload: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload, indent=2))
        return path

    return _write


@pytest.fixture
def matrix_file(write_json):
    """Write a matrix form as a JSON document"""

    def _write(name: str, matrix: PPMatrixForm | Omega6Form) -> Path:
        return write_json(name, matrix_to_json(matrix))

    return _write
