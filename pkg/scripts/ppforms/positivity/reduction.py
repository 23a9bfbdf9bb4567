"""Basis reduction for real (2,2)-forms on C^4.

Given covectors ``ω1, ω2`` with ``α ∧ iω1∧ω̄1 ∧ iω2∧ω̄2 != 0``, the space
``V2 = {ω : α ∧ ω1∧ω2∧ω̄_j∧ω̄ = 0, j = 1, 2}`` is a complement of
``span(ω1, ω2)``. In the basis ``(ω1, ω2, ω3, ω4)`` with ``V2 = span(ω3, ω4)``
the Omega matrix satisfies ``a26 = a36 = a46 = a56 = 0``, and the square splits
into the central 4x4 part plus ``2(a11 a66 + |a16|^2)``.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations

from loguru import logger

from ..config import ReductionSettings
from ..errors import BidegreeError, NonRealFormError, PPFormsError, SearchFailureError
from ..exterior import (
    CoVector,
    Form,
    is_real,
    positivity_pairing,
    standard_covector,
    volume_coefficient,
    wedge_all,
)
from ..linalg import det, nullspace
from ..ppmatrix import (
    BasisChange,
    Omega6Form,
    change_basis,
    from_exterior,
    product22_coefficient,
    to_omega6,
)
from ..sampling import instance_rng, random_covector
from ..scalars import ComplexScalar, zero

REDUCED_ZEROS: tuple[tuple[int, int], ...] = ((2, 6), (3, 6), (4, 6), (5, 6))


@dataclass(frozen=True)
class Reduction:
    """Result of :func:`reduce_basis_22` with search bookkeeping."""

    basis: BasisChange
    omega: Omega6Form
    attempts: int
    pair: tuple[CoVector, CoVector] | None


def _candidate_pairs(seed: int, max_attempts: int) -> Iterator[tuple[CoVector, CoVector]]:
    for i, j in combinations(range(1, 5), 2):
        yield standard_covector(i, 4), standard_covector(j, 4)
    rng = instance_rng(seed)
    for _ in range(max_attempts - 6):
        yield random_covector(rng, 4, bound=2), random_covector(rng, 4, bound=2)


def _conditions(alpha: Form, w1: CoVector, w2: CoVector) -> list[list[ComplexScalar]]:
    """Rows ``T, U`` with ``sum_k T_k x_k = 0`` meaning ``α∧ω1∧ω2∧ω̄1∧dz̄_k x_k = 0``."""
    head = wedge_all([alpha, w1.as_form(), w2.as_form()])
    rows = []
    for w in (w1, w2):
        partial = wedge_all([head, w.conjugate_form()])
        row = []
        for k in range(1, 5):
            dzbar = standard_covector(k, 4, alpha.exact).conjugate_form()
            row.append(volume_coefficient(wedge_all([partial, dzbar])))
        rows.append(row)
    return rows


def is_reduced(W: Omega6Form) -> bool:
    """True when ``a26 = a36 = a46 = a56 = 0`` (and their conjugates)."""
    return all(W.at(j, k).is_zero() for j, k in REDUCED_ZEROS)


def reduce_basis_22(
    alpha: Form, seed: int = 0, settings: ReductionSettings | None = None
) -> Reduction:
    """Find a basis in which the Omega matrix of ``alpha`` has ``a26..a56 = 0``.

    Standard coordinate pairs are tried first, then seeded random exact pairs,
    up to ``settings.max_attempts`` pairs in total.

    Raises:
        BidegreeError: ``alpha`` is not a (2,2)-form on C^4
        NonRealFormError: ``alpha`` is not real
        SearchFailureError: No admissible pair within the attempt budget
    """
    settings = settings or ReductionSettings()
    if alpha.n != 4:
        raise BidegreeError(f"basis reduction needs a form on C^4, got C^{alpha.n}")
    alpha.require_bidegree(2, 2)
    if not is_real(alpha):
        raise NonRealFormError("basis reduction needs a real form")
    if alpha.is_zero():
        ident = BasisChange.identity(4, alpha.exact)
        return Reduction(ident, to_omega6(from_exterior(alpha)), 0, None)

    for attempt, (w1, w2) in enumerate(_candidate_pairs(seed, settings.max_attempts), start=1):
        if not alpha.exact:
            w1, w2 = w1.to_float(), w2.to_float()
        value = positivity_pairing(alpha, [w1, w2])
        if value.is_zero() or (not value.exact and abs(value) < 1e-12):
            continue
        V2 = nullspace(_conditions(alpha, w1, w2))
        if len(V2) != 2:
            raise PPFormsError(f"complement has dimension {len(V2)}, expected 2")
        w3, w4 = (CoVector(tuple(x.conjugate() for x in v)) for v in V2)
        M = [list(w.coefficients) for w in (w1, w2, w3, w4)]
        if det(M).is_zero():
            raise PPFormsError("reduced basis is singular")
        basis = BasisChange(M)
        omega = to_omega6(change_basis(from_exterior(alpha), basis))
        if alpha.exact and not is_reduced(omega):
            raise PPFormsError("reduced matrix lost a required zero")
        logger.debug("Basis reduced", attempt=attempt, seed=seed)
        return Reduction(basis, omega, attempt, (w1, w2))

    raise SearchFailureError(
        f"no pair with nonzero pairing found in {settings.max_attempts} attempts (seed {seed})"
    )


@dataclass(frozen=True)
class SquareSplit:
    """``total = core + corner`` for a reduced Omega matrix."""

    core: ComplexScalar
    corner: ComplexScalar
    total: ComplexScalar

    @property
    def holds(self) -> bool:
        if self.total.exact:
            return self.core + self.corner == self.total
        return (self.core + self.corner).is_close(self.total, 1e-9 * max(1.0, abs(self.total)))

    def to_json(self) -> dict[str, str]:
        return {"core": str(self.core), "corner": str(self.corner), "total": str(self.total)}


def square_split(W: Omega6Form) -> SquareSplit:
    """Split ``sum a_jk a_{7-j,7-k}`` into the central block and the corner terms."""
    core = zero(W.exact)
    for j in range(2, 6):
        for k in range(2, 6):
            core = core + W.at(j, k) * W.at(7 - j, 7 - k)
    a16 = W.at(1, 6)
    corner = (W.at(1, 1) * W.at(6, 6) + ComplexScalar(a16.abs2(), 0, exact=W.exact)) * 2
    return SquareSplit(core, corner, product22_coefficient(W, W))

