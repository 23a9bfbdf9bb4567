"""Reading and writing form, matrix and verdict files.

Documents are plain dicts in the layouts of :mod:`ppforms.schemas`; files are
JSON with 2-space indentation. Any structural problem surfaces as
:class:`~ppforms.errors.SchemaError`, a hermitian violation in a matrix file as
:class:`~ppforms.errors.HermitianViolationError`.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from loguru import logger
from pydantic import BaseModel, ValidationError

from .errors import SchemaError
from .exterior import Form
from .ppmatrix import Omega6Form, PPMatrixForm
from .scalars import ComplexScalar, parse
from .schemas import FormFile, MatrixFile, ReplayFile, VerdictFile

Document = Form | PPMatrixForm | Omega6Form


def _validate(model: type[BaseModel], data: Any) -> Any:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise SchemaError(f"invalid {model.__name__}: {e}") from e


def form_to_json(f: Form) -> dict[str, Any]:
    terms = []
    for (J, K), c in sorted(f.terms.items()):
        re, im = c.to_strings()
        terms.append({"J": list(J), "K": list(K), "re": re, "im": im})
    return {"n": f.n, "mode": f.mode, "terms": terms}


def form_from_json(data: Any) -> Form:
    model: FormFile = _validate(FormFile, data)
    values = [
        ((tuple(t.J), tuple(t.K)), parse(t.re, t.im, model.mode)) for t in model.terms
    ]
    return Form(model.n, values, model.mode == "exact")


def _rows_to_json(rows: list[list[ComplexScalar]]) -> list[list[list[str]]]:
    return [[list(x.to_strings()) for x in row] for row in rows]


def matrix_to_json(A: PPMatrixForm | Omega6Form) -> dict[str, Any]:
    if isinstance(A, Omega6Form):
        p, basis = 2, "omega6"
    else:
        p, basis = A.p, "lex"
    return {
        "p": p,
        "basis": basis,
        "mode": "exact" if A.exact else "float",
        "entries": _rows_to_json(A.entries),
    }


def matrix_from_json(data: Any) -> PPMatrixForm | Omega6Form:
    """Parse a matrix document; hermitian symmetry is enforced by the matrix types."""
    model: MatrixFile = _validate(MatrixFile, data)
    rows = [[parse(re, im, model.mode) for re, im in row] for row in model.entries]
    if model.basis == "omega6":
        return Omega6Form(rows)
    return PPMatrixForm(model.p, rows)


def to_document(obj: Document) -> dict[str, Any]:
    if isinstance(obj, Form):
        return form_to_json(obj)
    return matrix_to_json(obj)


def from_document(data: Any) -> Document:
    """Form or matrix, told apart by the ``terms``/``entries`` key.

    A document with only a ``form`` key (a gallery entry) yields that form.
    """
    if not isinstance(data, dict):
        raise SchemaError(f"expected a JSON object, got {type(data).__name__}")
    if "terms" in data:
        return form_from_json(data)
    if "entries" in data:
        return matrix_from_json(data)
    if isinstance(data.get("form"), dict):
        return from_document(data["form"])
    raise SchemaError("document has neither 'terms' (form) nor 'entries' (matrix)")


def read_json(path: Path | str) -> Any:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON: {e}") from e


def load_document(path: Path | str) -> Document:
    """Load a form or matrix file.

    Raises:
        FileNotFoundError: If ``path`` does not exist
        SchemaError: Malformed content
        HermitianViolationError: Matrix file is not hermitian
    """
    doc = from_document(read_json(path))
    logger.debug("Loaded document", path=str(path), kind=type(doc).__name__)
    return doc


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, default=str)


def save_json(payload: Any, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    return path


def save_document(obj: Document, path: Path | str) -> Path:
    return save_json(to_document(obj), path)


def validate_verdict(data: Any) -> dict[str, Any]:
    """Check a verdict payload against :class:`~ppforms.schemas.VerdictFile`."""
    return _validate(VerdictFile, data).model_dump(exclude_none=True)


def load_replay(path: Path | str) -> ReplayFile:
    return _validate(ReplayFile, read_json(path))
