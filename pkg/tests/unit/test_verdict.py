"""
Unit tests for positivity verdicts and their merge.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

import pytest

from ppforms.positivity.verdict import (
    NO_VIOLATION,
    VIOLATED,
    PositivityVerdict,
    merge_verdicts,
    no_violation,
)
from ppforms.serialization import validate_verdict


def verdict(value: float, violated: bool = False, method: str = "frames",
            samples: int = 10) -> PositivityVerdict:
    if violated:
        return PositivityVerdict(VIOLATED, value, samples, 1e-6, 0, method,
                                 witness=[1 + 0j, 0j], witness_kind="quadric")
    return no_violation(value, samples, 1e-6, 0, method)


@pytest.mark.unit
class TestMerge:
    """Merging partial searches."""

    def test_violation_wins(self) -> None:
        merged = merge_verdicts(verdict(0.5), verdict(-0.25, violated=True))
        assert merged.violated
        assert merged.value == -0.25
        assert merged.witness == [1 + 0j, 0j]

    def test_keeps_smaller_value_and_adds_samples(self) -> None:
        merged = merge_verdicts(verdict(0.5, samples=3), verdict(0.25, samples=4))
        assert merged.status == NO_VIOLATION
        assert merged.value == 0.25
        assert merged.samples == 7

    def test_first_wins_ties(self) -> None:
        merged = merge_verdicts(verdict(0.5, method="a"), verdict(0.5, method="b"))
        assert merged.method == "a+b"
        assert merged.value == 0.5

    def test_associative(self) -> None:
        a = verdict(0.3, method="frames")
        b = verdict(-0.2, violated=True, method="dinew")
        c = verdict(0.1, method="reduced44")
        assert merge_verdicts(merge_verdicts(a, b), c) == merge_verdicts(a, merge_verdicts(b, c))


@pytest.mark.unit
class TestVerdictJson:
    """Verdict payloads."""

    def test_round_trip(self) -> None:
        v = verdict(-0.5, violated=True)
        again = PositivityVerdict.from_json(v.to_json())
        assert again == v

    def test_payload_matches_schema(self) -> None:
        data = validate_verdict(verdict(-0.5, violated=True).to_json())
        assert data["status"] == "violated"
        assert data["witness"] == [["1.0", "0.0"], ["0.0", "0.0"]]

    def test_no_violation_has_null_witness(self) -> None:
        data = verdict(0.1).to_json()
        assert data["witness"] is None
        assert data["status"] == "no_violation_found"
