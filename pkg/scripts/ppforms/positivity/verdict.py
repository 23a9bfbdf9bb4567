"""Positivity verdicts.

A verdict is a bounded-search report. ``violated`` is only ever issued with a
witness whose value was re-evaluated through an independent code path;
``no_violation_found`` carries the observed minimum and never claims positivity.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Literal

import numpy as np

Status = Literal["violated", "no_violation_found"]
VIOLATED: Status = "violated"
NO_VIOLATION: Status = "no_violation_found"

Witness = list[complex] | list[list[complex]]


def _encode(values: Any) -> Any:
    if isinstance(values, (list, tuple, np.ndarray)):
        return [_encode(v) for v in values]
    z = complex(values)
    return [repr(z.real), repr(z.imag)]


def _decode(values: Any) -> Any:
    if (
        isinstance(values, list)
        and len(values) == 2
        and all(isinstance(v, (str, int, float)) for v in values)
    ):
        return complex(float(values[0]), float(values[1]))
    return [_decode(v) for v in values]


@dataclass
class PositivityVerdict:
    """Outcome of a positivity search.

    Attributes:
        status: ``"violated"`` or ``"no_violation_found"``
        value: Smallest normalized value observed (the witness value when violated)
        samples: Number of points or frames evaluated
        tolerance: Decision tolerance; violations are values ``<= -tolerance``
        seed: Master seed of the search
        method: Tester that produced the verdict (``frames``, ``dinew``, ...)
        witness: Quadric point or frame rows achieving ``value``
        witness_kind: ``"quadric"``, ``"frame"`` or ``"reduced"``
        details: Extra diagnostics (independent recheck value, failed condition)
    """

    status: Status
    value: float
    samples: int
    tolerance: float
    seed: int
    method: str
    witness: Witness | None = None
    witness_kind: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED

    def to_json(self) -> dict[str, Any]:
        """JSON payload with complex numbers as ``[re, im]`` decimal string pairs."""
        data: dict[str, Any] = {
            "status": self.status,
            "min": self.value,
            "witness": _encode(self.witness) if self.witness is not None else None,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tolerance,
            "method": self.method,
        }
        if self.witness_kind is not None:
            data["witness_kind"] = self.witness_kind
        if self.details:
            data["details"] = self.details
        return data

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> PositivityVerdict:
        witness = data.get("witness")
        return cls(
            status=data["status"],
            value=float(data["min"]),
            samples=int(data["samples"]),
            tolerance=float(data["tol"]),
            seed=int(data["seed"]),
            method=data.get("method", "unknown"),
            witness=_decode(witness) if witness is not None else None,
            witness_kind=data.get("witness_kind"),
            details=dict(data.get("details", {})),
        )


def no_violation(value: float, samples: int, tolerance: float, seed: int, method: str,
                 **details: Any) -> PositivityVerdict:
    return PositivityVerdict(NO_VIOLATION, float(value), samples, tolerance, seed, method,
                             details=details)


def _rank(verdict: PositivityVerdict) -> tuple[bool, float]:
    return (not verdict.violated, verdict.value)


def merge_verdicts(first: PositivityVerdict, second: PositivityVerdict) -> PositivityVerdict:
    """Combine two partial searches.

    The result is violated if either part is, keeps the smaller value and its
    witness (``first`` wins ties), and adds the sample counts. Merging is
    associative, so partitions may be folded in any grouping.
    """
    lowest = second if _rank(second) < _rank(first) else first
    methods = sorted(set(first.method.split("+")) | set(second.method.split("+")))
    return replace(
        lowest,
        status=VIOLATED if first.violated or second.violated else NO_VIOLATION,
        samples=first.samples + second.samples,
        tolerance=first.tolerance,
        seed=first.seed,
        method="+".join(methods),
        details=dict(lowest.details),
    )
