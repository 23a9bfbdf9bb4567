"""Pydantic models for the JSON file formats.

Form files::

    {"n": 4, "mode": "exact", "terms": [{"J": [1, 2], "K": [1, 2], "re": "1/2", "im": "0"}]}

Matrix files::

    {"p": 2, "basis": "lex" | "omega6", "mode": "exact", "entries": [[["1", "0"], ...], ...]}

Exact values are rational strings ("3", "-1/2"); float values are decimal
strings. Plain JSON numbers are accepted and converted.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

Mode = Literal["exact", "float"]


def _as_text(v: Any) -> str:
    if isinstance(v, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(v, (int, float)):
        return repr(v)
    if isinstance(v, str):
        return v.strip()
    raise ValueError(f"expected a number or numeric string, got {type(v).__name__}")


def _check_number(text: str, mode: Mode) -> None:
    try:
        if mode == "exact":
            Fraction(text)
        else:
            float(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{text!r} is not a valid {mode} number") from None


class TermModel(BaseModel):
    """One term ``(re + i im) dz_J ∧ dz̄_K``"""

    J: list[int]
    K: list[int]
    re: str = "0"
    im: str = "0"

    @field_validator("re", "im", mode="before")
    @classmethod
    def coerce_number(cls, v: Any) -> str:
        return _as_text(v)

    @field_validator("J", "K")
    @classmethod
    def validate_indices(cls, v: list[int]) -> list[int]:
        """Indices are 1-based and distinct; order is free (signs are absorbed)"""
        if any(j < 1 for j in v):
            raise ValueError(f"indices must be >= 1, got {v}")
        if len(set(v)) != len(v):
            raise ValueError(f"repeated index in {v}")
        return v


class FormFile(BaseModel):
    """A sparse form on C^n"""

    n: int = Field(ge=0)
    mode: Mode = "exact"
    terms: list[TermModel] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_terms(self) -> FormFile:
        for term in self.terms:
            if any(j > self.n for j in term.J + term.K):
                raise ValueError(f"index out of range for n={self.n}: J={term.J}, K={term.K}")
            _check_number(term.re, self.mode)
            _check_number(term.im, self.mode)
        return self


class MatrixFile(BaseModel):
    """Coefficient matrix of a (p,p)-form on C^{2p}"""

    p: int = Field(ge=0, le=8)
    basis: Literal["lex", "omega6"] = "lex"
    mode: Mode = "exact"
    entries: list[list[tuple[str, str]]]

    @field_validator("entries", mode="before")
    @classmethod
    def coerce_entries(cls, v: Any) -> Any:
        if not isinstance(v, list):
            return v
        out = []
        for row in v:
            if not isinstance(row, list):
                return v
            out.append([
                tuple(_as_text(x) for x in pair) if isinstance(pair, (list, tuple)) else pair
                for pair in row
            ])
        return out

    @model_validator(mode="after")
    def validate_shape(self) -> MatrixFile:
        if self.basis == "omega6" and self.p != 2:
            raise ValueError(f"the omega6 basis needs p=2, got p={self.p}")
        size = comb(2 * self.p, self.p)
        if len(self.entries) != size or any(len(row) != size for row in self.entries):
            raise ValueError(f"p={self.p} needs a {size}x{size} matrix")
        for row in self.entries:
            for re, im in row:
                _check_number(re, self.mode)
                _check_number(im, self.mode)
        return self


class VerdictFile(BaseModel):
    """Serialized :class:`~ppforms.positivity.verdict.PositivityVerdict`"""

    status: Literal["violated", "no_violation_found"]
    min: float
    witness: list[Any] | None = None
    samples: int = Field(ge=0)
    seed: int = Field(ge=0)
    tol: float = Field(gt=0)
    method: str = "unknown"
    witness_kind: Literal["quadric", "frame", "reduced"] | None = None
    details: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_witness(self) -> VerdictFile:
        """A violation always carries a witness"""
        if self.status == "violated" and self.witness is None:
            raise ValueError("violated verdicts must carry a witness")
        return self


class ReplayFile(BaseModel):
    """A failing suite instance, written so the failure can be rerun"""

    suite: str
    seed: int = Field(ge=0)
    index: int | None = Field(default=None, ge=0)
    recipe: str | None = None
    message: str = ""
    form: FormFile | None = None
    payload: dict[str, Any] = Field(default_factory=dict)
