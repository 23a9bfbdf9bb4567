"""Multi-indices, complements, permutation signs and the signed (2,2) basis.

Multi-indices are 1-based strictly increasing tuples. An :class:`IndexTable`
lists every degree-``p`` multi-index of ``{1..n}`` in lexicographic order
together with its complement and the sign ``epsilon(J)`` defined by
``dz_J ∧ dz_{J'} = epsilon(J) dz_1 ∧ ... ∧ dz_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import InvalidDegreeError, InvalidMultiIndexError


@dataclass(frozen=True, order=True)
class MultiIndex:
    """Strictly increasing tuple of 1-based coordinate indices inside ``{1..n}``.

    Attributes:
        entries: The indices, e.g. ``(1, 3)``
        n: Ambient dimension
    """

    entries: tuple[int, ...]
    n: int = field(compare=False)

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if self.n < 0:
            raise InvalidMultiIndexError(f"ambient dimension must be >= 0, got {self.n}")
        if any(j < 1 or j > self.n for j in entries):
            raise InvalidMultiIndexError(f"indices {entries} not within [1, {self.n}]")
        if any(a >= b for a, b in zip(entries, entries[1:])):
            raise InvalidMultiIndexError(f"indices {entries} are not strictly increasing")

    @property
    def degree(self) -> int:
        return len(self.entries)

    def __iter__(self):  # type: ignore[no-untyped-def]
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(j) for j in self.entries) + ")"

    def to_json(self) -> list[int]:
        return list(self.entries)


def permutation_sign(seq: tuple[int, ...] | list[int]) -> int:
    """Parity of a sequence of distinct integers by inversion counting; 0 on repeats."""
    if len(set(seq)) != len(seq):
        return 0
    inversions = 0
    for i, a in enumerate(seq):
        for b in seq[i + 1 :]:
            if a > b:
                inversions += 1
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=65536)
def merge_sign(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted union for ``dz_left ∧ dz_right`` with both sides increasing.

    Returns ``(0, ())`` when the two index sets overlap.
    """
    if not left:
        return 1, right
    if not right:
        return 1, left
    if set(left) & set(right):
        return 0, ()
    # each right index must jump over the left indices larger than it
    inversions = 0
    for b in right:
        for a in left:
            if a > b:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(sorted(left + right))


@dataclass(frozen=True)
class IndexTable:
    """All degree-``p`` multi-indices of ``{1..n}`` in lexicographic order.

    Attributes:
        p: Degree
        n: Ambient dimension
        entries: Lexicographically ordered multi-indices
        complements: ``complements[k]`` is the complement of ``entries[k]``
        signs: ``signs[k]`` is ``epsilon(entries[k])``
    """

    p: int
    n: int
    entries: tuple[MultiIndex, ...]
    complements: tuple[MultiIndex, ...]
    signs: tuple[int, ...]
    positions: dict[tuple[int, ...], int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.entries)

    def position(self, index: MultiIndex | tuple[int, ...]) -> int:
        """0-based lexicographic position of ``index``."""
        key = index.entries if isinstance(index, MultiIndex) else tuple(index)
        try:
            return self.positions[key]
        except KeyError:
            raise InvalidMultiIndexError(
                f"{key} is not a degree-{self.p} multi-index of [1, {self.n}]"
            ) from None

    def complement_position(self, k: int) -> int | None:
        """Position of ``complements[k]`` in this table (only when ``n = 2p``)."""
        if self.n != 2 * self.p:
            return None
        return self.positions[self.complements[k].entries]


@lru_cache(maxsize=128)
def enumerate_multiindices(p: int, n: int) -> IndexTable:
    """Build (and cache) the lexicographic table of degree-``p`` indices of ``{1..n}``.

    Raises:
        InvalidDegreeError: If ``p < 0`` or ``p > n``
    """
    if n < 0 or p < 0 or p > n:
        raise InvalidDegreeError(f"degree p={p} invalid for dimension n={n}")
    entries = tuple(MultiIndex(c, n) for c in combinations(range(1, n + 1), p))
    complements = tuple(complement(J, n) for J in entries)
    signs = tuple(
        permutation_sign(J.entries + Jc.entries) for J, Jc in zip(entries, complements)
    )
    positions = {J.entries: k for k, J in enumerate(entries)}
    assert len(entries) == comb(n, p)
    return IndexTable(p, n, entries, complements, signs, positions)


def complement(J: MultiIndex | tuple[int, ...], n: int) -> MultiIndex:
    """Complement of ``J`` in ``{1..n}``, increasing."""
    entries = J.entries if isinstance(J, MultiIndex) else tuple(J)
    MultiIndex(entries, n)
    taken = set(entries)
    return MultiIndex(tuple(j for j in range(1, n + 1) if j not in taken), n)


def epsilon(J: MultiIndex | tuple[int, ...], n: int | None = None) -> int:
    """Sign of the permutation ``(J, J')`` of ``(1, ..., n)``.

    ``n`` defaults to ``J.n`` for a :class:`MultiIndex` and to ``2 * len(J)``
    for a bare tuple.
    """
    if isinstance(J, MultiIndex):
        n = J.n if n is None else n
        entries = J.entries
    else:
        entries = tuple(J)
        n = 2 * len(entries) if n is None else n
    Jc = complement(entries, n)
    return permutation_sign(entries + Jc.entries)


@dataclass(frozen=True)
class OmegaBasisEntry:
    """One element ``Omega_j = sign * dz_J`` of the signed (2,2) basis on C^4."""

    position: int
    multiindex: MultiIndex
    sign: int


_SECTION1_LAYOUT: tuple[tuple[tuple[int, int], int], ...] = (
    ((1, 2), 1),
    ((1, 3), 1),
    ((1, 4), 1),
    ((2, 3), 1),
    ((2, 4), -1),
    ((3, 4), 1),
)


@lru_cache(maxsize=1)
def section1_basis() -> tuple[OmegaBasisEntry, ...]:
    """The six signed basis 2-vectors, pairing ``Omega_j`` with ``Omega_{7-j}``."""
    return tuple(
        OmegaBasisEntry(position=k + 1, multiindex=MultiIndex(J, 4), sign=s)
        for k, (J, s) in enumerate(_SECTION1_LAYOUT)
    )


def omega_signs() -> tuple[int, ...]:
    """Signs of the six basis entries, in position order."""
    return tuple(e.sign for e in section1_basis())
