"""
Unit tests for multi-indices, complements and signs.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

from math import comb

import pytest

from ppforms.combinatorics import (
    MultiIndex,
    complement,
    enumerate_multiindices,
    epsilon,
    merge_sign,
    omega_signs,
    permutation_sign,
    section1_basis,
)
from ppforms.errors import InvalidDegreeError, InvalidMultiIndexError


@pytest.mark.unit
class TestMultiIndex:
    """Multi-index validation."""

    def test_valid(self) -> None:
        J = MultiIndex((1, 3), 4)
        assert J.degree == 2
        assert str(J) == "(1,3)"
        assert J.to_json() == [1, 3]

    @pytest.mark.parametrize("entries", [(2, 1), (1, 1), (0, 2), (1, 5)])
    def test_invalid(self, entries: tuple[int, ...]) -> None:
        with pytest.raises(InvalidMultiIndexError):
            MultiIndex(entries, 4)

    def test_complement(self) -> None:
        assert complement((1, 3), 4).entries == (2, 4)
        assert complement((), 2).entries == (1, 2)


@pytest.mark.unit
class TestSigns:
    """Permutation and merge signs."""

    def test_permutation_sign(self) -> None:
        assert permutation_sign([1, 2, 3]) == 1
        assert permutation_sign([2, 1, 3]) == -1
        assert permutation_sign([3, 1, 2]) == 1
        assert permutation_sign([1, 1]) == 0

    def test_merge_sign(self) -> None:
        assert merge_sign((2,), (1,)) == (-1, (1, 2))
        assert merge_sign((1, 3), (2,)) == (-1, (1, 2, 3))
        assert merge_sign((1,), (2, 3)) == (1, (1, 2, 3))
        assert merge_sign((1, 2), (2,)) == (0, ())

    @pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
    def test_sign_law(self, p: int) -> None:
        """eps_J * eps_J' = (-1)^p for every J of degree p in 2p"""
        table = enumerate_multiindices(p, 2 * p)
        for k in range(len(table)):
            partner = table.complement_position(k)
            assert partner is not None
            assert table.signs[k] * table.signs[partner] == (-1) ** p

    def test_epsilon_matches_table(self) -> None:
        table = enumerate_multiindices(3, 6)
        for J, s in zip(table.entries, table.signs):
            assert epsilon(J) == s
            assert epsilon(J.entries) == s


@pytest.mark.unit
class TestIndexTable:
    """Lexicographic tables."""

    def test_p2_order_and_signs(self) -> None:
        table = enumerate_multiindices(2, 4)
        assert [J.entries for J in table.entries] == [
            (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)
        ]
        assert table.signs == (1, -1, 1, 1, -1, 1)

    @pytest.mark.parametrize("p", range(0, 6))
    def test_sizes(self, p: int) -> None:
        assert len(enumerate_multiindices(p, 2 * p)) == comb(2 * p, p)

    def test_position_round_trip(self) -> None:
        table = enumerate_multiindices(3, 6)
        assert table.position((1, 2, 3)) == 0
        assert table.position((4, 5, 6)) == 19
        assert table.complement_position(0) == 19

    def test_unknown_position_raises(self) -> None:
        with pytest.raises(InvalidMultiIndexError):
            enumerate_multiindices(2, 4).position((1, 2, 3))

    def test_complement_position_needs_half_dimension(self) -> None:
        assert enumerate_multiindices(1, 3).complement_position(0) is None

    @pytest.mark.parametrize("p,n", [(3, 2), (-1, 4), (1, -1)])
    def test_invalid_degree(self, p: int, n: int) -> None:
        with pytest.raises(InvalidDegreeError):
            enumerate_multiindices(p, n)


@pytest.mark.unit
class TestOmegaBasis:
    """The signed basis of 2-vectors on C^4."""

    def test_signs(self) -> None:
        assert omega_signs() == (1, 1, 1, 1, -1, 1)

    def test_pairs_are_complements(self) -> None:
        basis = section1_basis()
        for j, entry in enumerate(basis):
            partner = basis[5 - j]
            assert complement(entry.multiindex, 4) == partner.multiindex
