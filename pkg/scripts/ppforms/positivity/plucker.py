"""Plücker coordinates of p-frames on C^{2p}.

``z_J = (γ_1 ∧ ... ∧ γ_p ∧ dz_J) / (dz_1 ∧ ... ∧ dz_{2p})`` for every ``J`` in
lexicographic order. For ``p = 2`` these are the quadric coordinates of the
Omega basis after relabeling; for ``p = 3`` they satisfy, among others,
``z1 z20 - z10 z11 + z5 z16 - z2 z19 = 0``.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import TypeVar

import numpy as np

from ..combinatorics import enumerate_multiindices, section1_basis
from ..errors import DimensionMismatchError
from ..exterior import CoVector, Form, full_index, wedge, wedge_all
from ..sampling import instance_rng
from ..scalars import ComplexScalar, zero

T = TypeVar("T", ComplexScalar, complex)

# 1-based lexicographic positions of the monomials in the p=3 relation
P3_RELATION: tuple[tuple[int, int, int], ...] = (
    (1, 1, 20),
    (-1, 10, 11),
    (1, 5, 16),
    (-1, 2, 19),
)


def plucker_embed(gammas: Sequence[CoVector]) -> list[ComplexScalar]:
    """Plücker coordinates of ``p`` covectors on C^{2p}, computed by wedging."""
    p = len(gammas)
    n = gammas[0].n if gammas else 0
    if n != 2 * p:
        raise DimensionMismatchError(f"{p} covectors must live on C^{2 * p}, got C^{n}")
    exact = gammas[0].exact
    frame = wedge_all([g.as_form() for g in gammas], n, exact)
    full = full_index(n)
    out = []
    for J in enumerate_multiindices(p, n).entries:
        top = wedge(frame, Form._from_clean(n, {(J.entries, ()): ComplexScalar(1, 0, exact)}, exact))
        out.append(top.terms.get((full, ()), zero(exact)))
    return out


def plucker_quadric_residual(z: Sequence[T]) -> T:
    """``z1 z20 - z10 z11 + z5 z16 - z2 z19`` for a point of C^20."""
    if len(z) != 20:
        raise DimensionMismatchError(f"the p=3 relation needs 20 coordinates, got {len(z)}")
    acc = z[0] * 0
    for s, j, k in P3_RELATION:
        term = z[j - 1] * z[k - 1]
        acc = acc + term if s > 0 else acc - term
    return acc


def plucker_to_omega(z: Sequence[T]) -> list[T]:
    """Relabel p=2 Plücker coordinates into Omega quadric coordinates.

    ``m_k = s_k * eps(J_k) * z_{J_{7-k}}`` so that ``m`` equals
    ``minors_map(b, c)`` for the frame ``(b, c)``.
    """
    if len(z) != 6:
        raise DimensionMismatchError("p=2 Plücker vectors have 6 coordinates")
    table = enumerate_multiindices(2, 4)
    out = []
    for k, entry in enumerate(section1_basis()):
        sign = entry.sign * table.signs[k]
        value = z[5 - k]
        out.append(value if sign > 0 else -value)
    return out


def plucker_batch(frames: np.ndarray) -> np.ndarray:
    """Float Plücker coordinates for frames of shape ``(count, p, 2p)``.

    Uses ``z_J = eps(J') * det(frame[:, J'])`` with ``J'`` the complement of ``J``.
    """
    count, p, n = frames.shape
    table = enumerate_multiindices(p, n)
    out = np.empty((count, len(table)), dtype=np.complex128)
    for k, Jc in enumerate(table.complements):
        cols = [j - 1 for j in Jc.entries]
        sign = table.signs[table.position(Jc)]
        out[:, k] = sign * np.linalg.det(frames[:, :, cols])
    return out


def plucker_quadric_sample(count: int, seed: int = 0, p: int = 3) -> np.ndarray:
    """Unit points of the Plücker image in C^{N}, some with zeroed frame columns."""
    rng = instance_rng(seed)
    frames = rng.standard_normal((count, p, 2 * p)) + 1j * rng.standard_normal((count, p, 2 * p))
    # drop whole columns on a quarter of the frames so boundary coordinates vanish
    sparse = rng.random(count) < 0.25
    mask = rng.random((count, 1, 2 * p)) > 0.3
    frames = np.where(sparse[:, None, None], frames * mask, frames)
    z = plucker_batch(frames)
    norms = np.linalg.norm(z, axis=1, keepdims=True)
    keep = norms[:, 0] > 1e-12
    return z[keep] / norms[keep]
