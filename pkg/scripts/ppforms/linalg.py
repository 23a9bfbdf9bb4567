"""Small dense linear algebra over :class:`ComplexScalar`.

Matrices are lists of rows. Everything here runs in either scalar mode; exact
mode gives Gaussian-rational results with no rounding. Float fast paths that
need eigen-decompositions go through numpy/scipy instead (see
:func:`to_numpy`).
"""

from __future__ import annotations

from collections.abc import Sequence
from itertools import combinations

import numpy as np

from .errors import DimensionMismatchError, SingularBasisError
from .scalars import ComplexScalar, as_scalar, one, zero

Matrix = list[list[ComplexScalar]]


def _mode(rows: Sequence[Sequence[ComplexScalar]]) -> bool:
    for row in rows:
        for x in row:
            return x.exact
    return True


def identity(n: int, exact_mode: bool = True) -> Matrix:
    return [[one(exact_mode) if i == j else zero(exact_mode) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int, exact_mode: bool = True) -> Matrix:
    return [[zero(exact_mode) for _ in range(cols)] for _ in range(rows)]


def from_rows(rows: Sequence[Sequence[object]], exact_mode: bool | None = None) -> Matrix:
    """Lift nested Python numbers to a scalar matrix."""
    return [[as_scalar(x, exact_mode) for x in row] for row in rows]  # type: ignore[arg-type]


def shape(m: Sequence[Sequence[ComplexScalar]]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise DimensionMismatchError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    exact_mode = _mode(a)
    out = zeros(ra, cb, exact_mode)
    for i in range(ra):
        row = a[i]
        for k in range(ca):
            x = row[k]
            if x.is_zero():
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cb):
                y = bk[j]
                if not y.is_zero():
                    oi[j] = oi[j] + x * y
    return out


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def conjugate(m: Matrix) -> Matrix:
    return [[x.conjugate() for x in row] for row in m]


def conjugate_transpose(m: Matrix) -> Matrix:
    return [[x.conjugate() for x in col] for col in zip(*m)]


def is_hermitian(m: Matrix, tol: float = 0.0) -> bool:
    """Exact check when ``tol`` is 0 and the matrix is exact, absolute otherwise."""
    n, c = shape(m)
    if n != c:
        return False
    for i in range(n):
        for j in range(i, n):
            a, b = m[i][j], m[j][i].conjugate()
            if tol == 0.0 and a.exact:
                if a != b:
                    return False
            elif not a.is_close(b, tol):
                return False
    return True


def _rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (exact pivoting on nonzero, float on max)."""
    a = [list(row) for row in m]
    rows, cols = shape(a)
    exact_mode = _mode(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        if exact_mode:
            pivot = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        else:
            best = max(range(r, rows), key=lambda i: abs(a[i][c]))
            pivot = best if abs(a[best][c]) > 1e-12 else None
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    return len(_rref(m)[1])


def nullspace(m: Matrix) -> Matrix:
    """Basis of ``{x : m x = 0}`` as a list of vectors (exact in exact mode)."""
    rows, cols = shape(m)
    exact_mode = _mode(m)
    if rows == 0:
        return identity(cols, exact_mode)
    reduced, pivots = _rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis: Matrix = []
    for f in free:
        v = [zero(exact_mode) for _ in range(cols)]
        v[f] = one(exact_mode)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][f]
        basis.append(v)
    return basis


def det(m: Matrix) -> ComplexScalar:
    """Determinant by fraction-free elimination with row swaps."""
    n, c = shape(m)
    if n != c:
        raise DimensionMismatchError(f"determinant of non-square {n}x{c} matrix")
    exact_mode = _mode(m)
    if n == 0:
        return one(exact_mode)
    a = [list(row) for row in m]
    result = one(exact_mode)
    for col in range(n):
        if exact_mode:
            pivot = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
        else:
            pivot = max(range(col, n), key=lambda i: abs(a[i][col]))
            if a[pivot][col].is_zero():
                pivot = None
        if pivot is None:
            return zero(exact_mode)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        inv = 1 / p
        for i in range(col + 1, n):
            f = a[i][col] * inv
            if f.is_zero():
                continue
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return result


def inverse(m: Matrix) -> Matrix:
    """Inverse via Gauss-Jordan.

    Raises:
        SingularBasisError: If ``m`` is singular
    """
    n, c = shape(m)
    if n != c:
        raise DimensionMismatchError(f"inverse of non-square {n}x{c} matrix")
    exact_mode = _mode(m)
    eye = identity(n, exact_mode)
    augmented = [list(row) + eye[i] for i, row in enumerate(m)]
    reduced, pivots = _rref(augmented)
    if pivots[:n] != list(range(n)):
        raise SingularBasisError("matrix is singular")
    return [row[n:] for row in reduced]


def minor(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> ComplexScalar:
    """Determinant of the submatrix at 0-based ``rows`` x ``cols``."""
    return det([[m[i][j] for j in cols] for i in rows])


def compound(m: Matrix, p: int) -> Matrix:
    """``p``-th compound matrix: all ``p x p`` minors in lexicographic index order."""
    n, c = shape(m)
    row_sets = list(combinations(range(n), p))
    col_sets = list(combinations(range(c), p))
    return [[minor(m, r, s) for s in col_sets] for r in row_sets]


def vector_dot(u: Sequence[ComplexScalar], v: Sequence[ComplexScalar]) -> ComplexScalar:
    acc = zero(u[0].exact) if u else zero()
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def to_numpy(m: Sequence[Sequence[ComplexScalar]]) -> np.ndarray:
    """Complex128 array view (exact entries are rounded)."""
    return np.array([[complex(x) for x in row] for row in m], dtype=np.complex128)


def from_numpy(a: np.ndarray) -> Matrix:
    return [[as_scalar(complex(x)) for x in row] for row in np.atleast_2d(a)]
