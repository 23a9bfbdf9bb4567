"""Matrix representations of (p,p)-forms.

A :class:`PPMatrixForm` on C^{2p} stores the hermitian ``N x N`` matrix
``a_JK`` of ``alpha = i^(p^2) sum a_JK dz_J ∧ dz̄_K`` with rows and columns in
lexicographic multi-index order. For ``p = 2`` the :class:`Omega6Form` stores
the same form over the signed basis ``Omega_1..Omega_6`` where
``Omega_j ∧ Omega_{7-j}`` is the holomorphic volume.

Products and squares are evaluated directly on matrices:

- ``alpha ∧ beta = sum eps_J eps_K a_JK b_J'K' dV`` (any ``p``)
- ``alpha ∧ beta = sum a_jk b_{7-j,7-k} dV`` (Omega basis, ``p = 2``)
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .combinatorics import IndexTable, enumerate_multiindices, omega_signs
from .errors import (
    BidegreeError,
    DimensionMismatchError,
    HermitianViolationError,
    InvalidDegreeError,
    ScalarModeError,
    SingularBasisError,
)
from .exterior import CoVector, Form
from .linalg import (
    Matrix,
    compound,
    conjugate,
    det,
    from_rows,
    identity,
    inverse,
    is_hermitian,
    matmul,
    minor,
    transpose,
    zeros,
)
from .scalars import ComplexScalar, as_scalar, i_power, zero

HERMITIAN_TOL = 1e-9


def _validate_square(entries: Matrix, size: int, what: str) -> None:
    if len(entries) != size or any(len(row) != size for row in entries):
        raise DimensionMismatchError(f"{what} must be {size}x{size}")
    modes = {x.exact for row in entries for x in row}
    if len(modes) > 1:
        raise HermitianViolationError(f"{what} mixes exact and float entries")


def _check_hermitian(entries: Matrix, what: str) -> None:
    exact = entries[0][0].exact if entries else True
    if not is_hermitian(entries, 0.0 if exact else HERMITIAN_TOL):
        raise HermitianViolationError(f"{what} is not hermitian")


@dataclass(frozen=True, eq=False)
class PPMatrixForm:
    """Hermitian coefficient matrix of a (p,p)-form on C^{2p} in the lex basis."""

    p: int
    entries: Matrix
    table: IndexTable = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.p < 0:
            raise InvalidDegreeError(f"p must be >= 0, got {self.p}")
        table = enumerate_multiindices(self.p, 2 * self.p)
        object.__setattr__(self, "table", table)
        _validate_square(self.entries, len(table), f"(p={self.p}) matrix")
        _check_hermitian(self.entries, f"(p={self.p}) matrix")

    @property
    def n(self) -> int:
        return 2 * self.p

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def exact(self) -> bool:
        return self.entries[0][0].exact if self.entries else True

    @classmethod
    def from_values(cls, p: int, rows: Sequence[Sequence[object]],
                    exact_mode: bool | None = None) -> PPMatrixForm:
        return cls(p, from_rows(rows, exact_mode))

    @classmethod
    def zero(cls, p: int, exact: bool = True) -> PPMatrixForm:
        size = len(enumerate_multiindices(p, 2 * p))
        return cls(p, zeros(size, size, exact))

    @classmethod
    def identity(cls, p: int, exact: bool = True) -> PPMatrixForm:
        return cls(p, identity(len(enumerate_multiindices(p, 2 * p)), exact))

    def entry(self, J: Sequence[int], K: Sequence[int]) -> ComplexScalar:
        return self.entries[self.table.position(tuple(J))][self.table.position(tuple(K))]

    def to_float(self) -> PPMatrixForm:
        return PPMatrixForm(self.p, [[x.to_float() for x in row] for row in self.entries])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PPMatrixForm):
            return NotImplemented
        return self.p == other.p and self.entries == other.entries


@dataclass(frozen=True, eq=False)
class Omega6Form:
    """Hermitian 6x6 matrix ``a_jk`` of ``sum a_jk Omega_j ∧ Omega-bar_k`` on C^4."""

    entries: Matrix

    def __post_init__(self) -> None:
        _validate_square(self.entries, 6, "Omega matrix")
        _check_hermitian(self.entries, "Omega matrix")

    @property
    def exact(self) -> bool:
        return self.entries[0][0].exact

    @classmethod
    def from_values(cls, rows: Sequence[Sequence[object]],
                    exact_mode: bool | None = None) -> Omega6Form:
        return cls(from_rows(rows, exact_mode))

    @classmethod
    def identity(cls, exact: bool = True) -> Omega6Form:
        return cls(identity(6, exact))

    def at(self, j: int, k: int) -> ComplexScalar:
        """1-based entry ``a_jk``."""
        return self.entries[j - 1][k - 1]

    def to_float(self) -> Omega6Form:
        return Omega6Form([[x.to_float() for x in row] for row in self.entries])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Omega6Form):
            return NotImplemented
        return self.entries == other.entries


@dataclass(frozen=True, eq=False)
class BasisChange:
    """New covectors ``omega_j = sum_k M[j][k] dz_k``; rows of ``matrix`` are the ``omega_j``."""

    matrix: Matrix

    def __post_init__(self) -> None:
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise DimensionMismatchError("basis change must be square")
        if det(self.matrix).is_zero():
            raise SingularBasisError("basis change matrix is singular")

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> BasisChange:
        return cls(identity(n, exact))

    def covectors(self) -> list[CoVector]:
        return [CoVector(tuple(row)) for row in self.matrix]

    def determinant(self) -> ComplexScalar:
        return det(self.matrix)


def coefficient_matrix(f: Form, p: int | None = None) -> tuple[IndexTable, Matrix]:
    """Matrix ``a_JK`` with ``f = i^(p^2) sum a_JK dz_J ∧ dz̄_K`` for a (p,p)-form on any C^n.

    No hermitian check is made; ``p`` is required only for the zero form.
    """
    degree = f.bidegree()
    if degree is None:
        if not f.is_zero():
            raise BidegreeError(f"expected a (p,p)-form, found bidegrees {sorted(f.bidegrees())}")
        if p is None:
            raise BidegreeError("degree of the zero form must be given")
    else:
        if degree[0] != degree[1] or (p is not None and degree[0] != p):
            raise BidegreeError(f"expected a ({p},{p})-form, got {degree}")
        p = degree[0]
    table = enumerate_multiindices(p, f.n)
    scale = i_power(-p * p, f.exact)
    out = zeros(len(table), len(table), f.exact)
    for (J, K), c in f.terms.items():
        out[table.positions[J]][table.positions[K]] = c * scale
    return table, out


def to_exterior(A: PPMatrixForm) -> Form:
    """``i^(p^2) sum a_JK dz_J ∧ dz̄_K`` as an exterior :class:`Form`."""
    scale = i_power(A.p * A.p, A.exact)
    terms = {}
    for r, J in enumerate(A.table.entries):
        row = A.entries[r]
        for c, K in enumerate(A.table.entries):
            if not row[c].is_zero():
                terms[(J.entries, K.entries)] = row[c] * scale
    return Form._from_clean(A.n, terms, A.exact)


def from_exterior(f: Form) -> PPMatrixForm:
    """Inverse of :func:`to_exterior` for real (p,p)-forms on C^{2p}.

    Raises:
        BidegreeError: Odd ambient dimension or wrong bidegree
        HermitianViolationError: ``f`` is not real
    """
    if f.n % 2:
        raise BidegreeError(f"matrix representation needs even n, got {f.n}")
    _, entries = coefficient_matrix(f, f.n // 2)
    return PPMatrixForm(f.n // 2, entries)


def product_coefficient(A: PPMatrixForm, B: PPMatrixForm) -> ComplexScalar:
    """``sum eps_J eps_K a_JK b_J'K'``: the ``dV`` coefficient of ``alpha ∧ beta``."""
    if A.p != B.p:
        raise DimensionMismatchError(f"cannot multiply p={A.p} and p={B.p} matrices")
    if A.exact != B.exact:
        raise ScalarModeError("cannot multiply exact and float matrices")
    table = A.table
    comp = [table.complement_position(k) for k in range(len(table))]
    signs = table.signs
    acc = zero(A.exact)
    for r in range(len(table)):
        row = A.entries[r]
        brow = B.entries[comp[r]]  # type: ignore[index]
        sr = signs[r]
        for c in range(len(table)):
            a = row[c]
            if a.is_zero():
                continue
            b = brow[comp[c]]  # type: ignore[index]
            if b.is_zero():
                continue
            term = a * b
            acc = acc + term if sr * signs[c] > 0 else acc - term
    return acc


def square_coefficient(A: PPMatrixForm) -> ComplexScalar:
    """``sum eps_J eps_K a_JK a_J'K'``; real for hermitian ``A``."""
    return product_coefficient(A, A)


def to_omega6(A: PPMatrixForm) -> Omega6Form:
    """Lex (2,2) matrix to the signed Omega basis: ``a'_jk = s_j s_k a_jk``."""
    if A.p != 2:
        raise InvalidDegreeError(f"the Omega basis exists only for p=2, got p={A.p}")
    s = omega_signs()
    return Omega6Form([[A.entries[j][k] * (s[j] * s[k]) for k in range(6)] for j in range(6)])


def from_omega6(W: Omega6Form) -> PPMatrixForm:
    s = omega_signs()
    return PPMatrixForm(2, [[W.entries[j][k] * (s[j] * s[k]) for k in range(6)] for j in range(6)])


def product22_coefficient(A: Omega6Form, B: Omega6Form) -> ComplexScalar:
    """``sum_jk a_jk b_{7-j,7-k}`` over the Omega basis."""
    acc = zero(A.exact)
    for j in range(6):
        for k in range(6):
            a = A.entries[j][k]
            if not a.is_zero():
                acc = acc + a * B.entries[5 - j][5 - k]
    return acc


def change_basis(A: PPMatrixForm, M: BasisChange | Matrix) -> PPMatrixForm:
    """Coordinates of the same form in the basis ``omega_j = sum_k M[j][k] dz_k``.

    With ``D`` the ``p``-th compound of ``M^-1`` the new matrix is
    ``D^T A conj(D)``. The volume changes with the coordinates, so
    ``square_coefficient(new) = square_coefficient(A) / |det M|^2``.
    """
    change = M if isinstance(M, BasisChange) else BasisChange(M)
    if change.n != A.n:
        raise DimensionMismatchError(f"basis change on C^{change.n} for a form on C^{A.n}")
    D = compound(inverse(change.matrix), A.p)
    entries = matmul(matmul(transpose(D), A.entries), conjugate(D))
    return PPMatrixForm(A.p, entries)


def quadratic_value(A: Matrix | PPMatrixForm | Omega6Form, z: Sequence[object]) -> ComplexScalar:
    """``z-bar A z^T = sum conj(z_j) a_jk z_k``; real for hermitian ``A``."""
    entries = A if isinstance(A, list) else A.entries
    exact = entries[0][0].exact if entries else True
    vec = [as_scalar(x, exact) for x in z]  # type: ignore[arg-type]
    if len(vec) != len(entries):
        raise DimensionMismatchError(f"vector of length {len(vec)} for a {len(entries)}-square matrix")
    acc = zero(exact)
    for j, zj in enumerate(vec):
        if zj.is_zero():
            continue
        row = entries[j]
        inner = zero(exact)
        for k, zk in enumerate(vec):
            if not zk.is_zero() and not row[k].is_zero():
                inner = inner + row[k] * zk
        acc = acc + zj.conjugate() * inner
    return acc


def frame_matrix(gammas: Sequence[CoVector]) -> Matrix:
    return [list(g.coefficients) for g in gammas]


def frame_coordinates(gammas: Sequence[CoVector], p: int) -> list[ComplexScalar]:
    """Vector ``y`` with ``pairing(alpha, gammas) = sum a_JK y_J conj(y_K)``.

    ``y_J = eps_J * g_{J^c}`` where ``g_L`` is the minor of the covector
    matrix at columns ``L`` and ``eps_J`` the sign of ``dz_J ∧ dz_{J^c}``.
    Works on any C^n with ``n - p`` covectors.
    """
    n = gammas[0].n if gammas else p
    if len(gammas) != n - p:
        raise DimensionMismatchError(f"expected {n - p} covectors on C^{n}, got {len(gammas)}")
    table = enumerate_multiindices(p, n)
    G = frame_matrix(gammas)
    rows = list(range(len(gammas)))
    exact = gammas[0].exact if gammas else True
    out = []
    for J, Jc, eps in zip(table.entries, table.complements, table.signs):
        g = minor(G, rows, [j - 1 for j in Jc.entries]) if rows else as_scalar(1, exact)
        out.append(g if eps > 0 else -g)
    return out
