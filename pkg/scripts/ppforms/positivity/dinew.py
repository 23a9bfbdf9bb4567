"""Quadric criterion for (2,2)-forms on C^4.

A real (2,2)-form with Omega matrix ``A`` is positive exactly when
``z̄ A z^T >= 0`` for every ``z`` on the quadric ``z1 z6 + z2 z5 + z3 z4 = 0``.
Quadric points are the images of pairs ``(b, c)`` under :func:`minors_map`;
:func:`factor_bivector` inverts that map. :func:`dinew_test` minimizes the
Rayleigh quotient over the quadric by sampling, multi-start descent in
``(b, c)``, and alternating generalized eigen solves.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any, TypeVar

import numpy as np
from loguru import logger
from scipy.linalg import eigh, null_space

from ..config import DinewSettings
from ..errors import OffQuadricError
from ..exterior import CoVector, positivity_pairing
from ..linalg import to_numpy
from ..ppmatrix import Omega6Form, from_omega6, to_exterior
from ..sampling import instance_rng, random_exact_scalar
from ..scalars import ComplexScalar, exact, from_complex, magnitude2, zero
from .verdict import NO_VIOLATION, VIOLATED, PositivityVerdict

T = TypeVar("T", ComplexScalar, complex)

PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
SIGNS: tuple[int, ...] = (1, 1, 1, 1, -1, 1)


def minors_map(b: Sequence[T], c: Sequence[T]) -> list[T]:
    """Signed 2x2 minors ``s_j (b_p c_q - b_q c_p)`` in Omega order."""
    if len(b) != 4 or len(c) != 4:
        raise ValueError("minors_map takes two vectors of length 4")
    return [
        (b[p] * c[q] - b[q] * c[p]) * s for (p, q), s in zip(PAIRS, SIGNS)
    ]


def minors_map_batch(b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Vectorized :func:`minors_map` over the last axis."""
    out = np.empty(b.shape[:-1] + (6,), dtype=np.complex128)
    for j, ((p, q), s) in enumerate(zip(PAIRS, SIGNS)):
        out[..., j] = s * (b[..., p] * c[..., q] - b[..., q] * c[..., p])
    return out


def dinew_residual(z: Sequence[T]) -> T:
    """``z1 z6 + z2 z5 + z3 z4``."""
    return z[0] * z[5] + z[1] * z[4] + z[2] * z[3]


def _linear_map(b: np.ndarray) -> np.ndarray:
    """Matrix ``L(b)`` with ``minors_map(b, c) = L(b) @ c``."""
    L = np.zeros((6, 4), dtype=np.complex128)
    for j, ((p, q), s) in enumerate(zip(PAIRS, SIGNS)):
        L[j, q] += s * b[p]
        L[j, p] -= s * b[q]
    return L


def factor_bivector(z: Sequence[T], tol: float = 1e-9) -> tuple[list[T], list[T]]:
    """Vectors ``(b, c)`` with ``minors_map(b, c) = z`` for a quadric point ``z``.

    The antisymmetric matrix ``g`` of the bivector is read off ``z``; with
    ``g_jl`` its largest entry, ``b = g_j / g_jl`` and ``c = g_l`` reproduce all
    six minors thanks to the quadric relation.

    Raises:
        OffQuadricError: If ``z`` is not on the quadric (exactly, or within ``tol``
            relative to ``|z|^2`` in float mode)
    """
    if len(z) != 6:
        raise ValueError("quadric points have 6 coordinates")
    exact_mode = isinstance(z[0], ComplexScalar) and z[0].exact
    residual = dinew_residual(z)
    if exact_mode:
        if not residual.is_zero():  # type: ignore[union-attr]
            raise OffQuadricError(f"point is off the quadric, residual {residual}")
    else:
        norm2 = float(sum(magnitude2(x) for x in z))  # type: ignore[arg-type]
        if abs(complex(residual)) > tol * max(1.0, norm2):
            raise OffQuadricError(f"point is off the quadric, residual {abs(complex(residual)):.3e}")

    nought: Any = zero(True) if exact_mode else (zero(False) if isinstance(z[0], ComplexScalar) else 0j)
    g: list[list[Any]] = [[nought] * 4 for _ in range(4)]
    for (p, q), s, value in zip(PAIRS, SIGNS, z):
        g[p][q] = value * s
        g[q][p] = -(value * s)

    j, l = max(((p, q) for p, q in PAIRS), key=lambda pq: magnitude2(g[pq[0]][pq[1]]))
    pivot = g[j][l]
    if magnitude2(pivot) == 0:
        return [nought] * 4, [nought] * 4
    b = [g[j][k] / pivot for k in range(4)]
    c = [g[l][k] for k in range(4)]
    return b, c


def quadric_sample(seed: int, count: int = 1, exact_mode: bool = False) -> Any:
    """Points on the quadric ``z1 z6 + z2 z5 + z3 z4 = 0``.

    Float mode returns a unit-norm ``(count, 6)`` array drawn half from
    ``minors_map`` of Gaussian pairs and half from chart solves with random
    coordinates set to zero, so every coordinate vanishes on some samples. Exact
    mode returns Gaussian-rational points scaled so the largest real or
    imaginary part is 1.
    """
    rng = instance_rng(seed)
    if exact_mode:
        points = []
        while len(points) < count:
            b = [random_exact_scalar(rng, 3) if rng.random() > 0.2 else exact(0) for _ in range(4)]
            c = [random_exact_scalar(rng, 3) if rng.random() > 0.2 else exact(0) for _ in range(4)]
            z = minors_map(b, c)
            scale = max(max(abs(x.re), abs(x.im)) for x in z)
            if scale == 0:
                continue
            points.append([x / exact(scale) for x in z])
        return points

    half = count // 2
    b = rng.standard_normal((half, 4)) + 1j * rng.standard_normal((half, 4))
    c = rng.standard_normal((half, 4)) + 1j * rng.standard_normal((half, 4))
    from_pairs = minors_map_batch(b, c)

    rest = count - half
    z = rng.standard_normal((rest, 6)) + 1j * rng.standard_normal((rest, 6))
    z *= rng.random((rest, 6)) > 0.3
    solve = rng.integers(0, 6, rest)
    rows = np.arange(rest)
    partner = 5 - solve
    z[rows, partner] = rng.standard_normal(rest) + 1j * rng.standard_normal(rest)
    z[rows, solve] = 0
    z[rows, solve] = -(z[:, 0] * z[:, 5] + z[:, 1] * z[:, 4] + z[:, 2] * z[:, 3]) / z[rows, partner]

    points = np.concatenate([from_pairs, z])
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    return points / np.where(norms == 0, 1.0, norms)


def rayleigh(A: np.ndarray, z: np.ndarray) -> np.ndarray:
    """``Re(z̄ A z) / |z|^2`` row-wise."""
    num = np.einsum("bj,jk,bk->b", z.conj(), A, z).real
    return num / np.einsum("bj,bj->b", z.conj(), z).real


class _QuadricMinimizer:
    def __init__(self, A: np.ndarray, settings: DinewSettings) -> None:
        self.A = A
        self.settings = settings

    def value(self, b: np.ndarray, c: np.ndarray) -> float:
        z = _linear_map(b) @ c
        nz = float(np.vdot(z, z).real)
        return float(np.vdot(z, self.A @ z).real / nz) if nz > 0 else np.inf

    def descend(self, b: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
        b = b / np.linalg.norm(b)
        c = c / np.linalg.norm(c)
        current = self.value(b, c)
        step = self.settings.initial_step
        for _ in range(self.settings.descent_steps):
            Lb, Lc = _linear_map(b), _linear_map(c)
            z = Lb @ c
            nz = float(np.vdot(z, z).real)
            if nz == 0:
                break
            r = (self.A @ z - current * z) / nz
            gc = Lb.conj().T @ r
            gb = -(Lc.conj().T @ r)
            nb, nc = b - step * gb, c - step * gc
            nb /= np.linalg.norm(nb)
            nc /= np.linalg.norm(nc)
            trial = self.value(nb, nc)
            if trial < current:
                b, c, current = nb, nc, trial
                step *= 1.2
            else:
                step /= 2
                if step < 1e-12:
                    break
        return b, c, current

    def _solve(self, fixed: np.ndarray, sign: float) -> tuple[np.ndarray, float]:
        L = sign * _linear_map(fixed)
        Q = null_space(fixed.conj()[None, :])
        LQ = L @ Q
        H = LQ.conj().T @ self.A @ LQ
        G = LQ.conj().T @ LQ
        w, v = eigh((H + H.conj().T) / 2, (G + G.conj().T) / 2, subset_by_index=[0, 0])
        x = Q @ v[:, 0]
        return x / np.linalg.norm(x), float(w[0])

    def polish(self, b: np.ndarray, c: np.ndarray, current: float
               ) -> tuple[np.ndarray, np.ndarray, float]:
        for _ in range(self.settings.polish_rounds):
            try:
                c_new, _ = self._solve(b, 1.0)
                b_new, value = self._solve(c_new, -1.0)
            except (np.linalg.LinAlgError, ValueError):
                break
            if value > current + 1e-14:
                break
            b, c = b_new, c_new
            done = current - value < 1e-15
            current = value
            if done:
                break
        return b, c, current


def recheck_quadric_point(A: Omega6Form, z: Sequence[complex]) -> float:
    """``z̄ A z^T / |z|^2`` through the exterior engine.

    The point ``m = conj(reverse(z))`` is factored into a frame ``(b, c)`` whose
    pairing against the form equals ``z̄ A z^T``.
    """
    m = [complex(x).conjugate() for x in reversed(list(z))]
    b, c = factor_bivector([from_complex(x) for x in m], tol=1e-6)
    form = to_exterior(from_omega6(A)).to_float()
    value = positivity_pairing(form, [CoVector(tuple(b)), CoVector(tuple(c))], tol=1e-6)
    norm2 = sum(abs(complex(x)) ** 2 for x in z)
    return float(value.re) / norm2


def witness_scale(A: Omega6Form) -> float | None:
    """Squared norm ``4|a_16|`` of the explicit witness ``z1 = z2 = sqrt|a_16|``.

    Unit values times this scale are values at that witness normalization;
    ``None`` when ``a_16 = 0``.
    """
    corner = abs(complex(A.at(1, 6)))
    return 4 * corner if corner > 0 else None


def dinew_test(
    A: Omega6Form,
    samples: int = 20_000,
    seed: int = 0,
    tol: float = 1e-6,
    settings: DinewSettings | None = None,
    extra_points: Sequence[Sequence[complex]] | None = None,
) -> PositivityVerdict:
    """Minimize ``z̄ A z^T`` over unit points of the quadric.

    Args:
        A: Hermitian Omega matrix
        samples: Random quadric points evaluated before local search
        seed: Seed for the sampler
        tol: Normalized values ``<= -tol`` count as violations
        settings: Descent and polish budget
        extra_points: Quadric points evaluated in addition to the random ones

    Returns:
        Verdict whose ``value`` is the smallest Rayleigh quotient found and whose
        witness, when violated, is a unit quadric point

    A violated verdict also carries ``scaled_value``, the value at the
    :func:`witness_scale` normalization, when ``a_16 != 0``.
    """
    settings = settings or DinewSettings()
    Anp = to_numpy(A.entries)
    Anp = (Anp + Anp.conj().T) / 2
    rng = instance_rng(seed)

    half = samples // 2
    b = rng.standard_normal((half, 4)) + 1j * rng.standard_normal((half, 4))
    c = rng.standard_normal((half, 4)) + 1j * rng.standard_normal((half, 4))
    pair_values = rayleigh(Anp, minors_map_batch(b, c)) if half else np.empty(0)
    charts = quadric_sample(seed + 1, samples - half) if samples - half else np.empty((0, 6))
    if extra_points:
        charts = np.concatenate([charts, np.array(extra_points, dtype=np.complex128)])
    chart_values = rayleigh(Anp, charts) if len(charts) else np.empty(0)

    starts: list[tuple[float, np.ndarray, np.ndarray]] = []
    for k in np.argsort(pair_values)[: settings.restarts]:
        starts.append((float(pair_values[k]), b[k], c[k]))
    for k in np.argsort(chart_values)[: settings.restarts]:
        fb, fc = factor_bivector([complex(x) for x in charts[k]], tol=1e-6)
        if np.linalg.norm(fb) > 0 and np.linalg.norm(fc) > 0:
            starts.append((float(chart_values[k]), np.array(fb), np.array(fc)))
    starts.sort(key=lambda s: s[0])
    starts = starts[: settings.restarts]

    minimizer = _QuadricMinimizer(Anp, settings)
    best_value, best_z = np.inf, None
    for k, (_, b0, c0) in enumerate(starts):
        bb, cc, value = minimizer.descend(b0, c0)
        bb, cc, value = minimizer.polish(bb, cc, value)
        if value < best_value:
            best_value = value
            best_z = _linear_map(bb) @ cc
        logger.trace("Quadric restart", restart=k, value=value)

    if best_z is None:
        return PositivityVerdict(NO_VIOLATION, float("inf"), samples, tol, seed, "dinew")
    best_z = best_z / np.linalg.norm(best_z)
    best_value = float(rayleigh(Anp, best_z[None, :])[0])
    residual = abs(complex(dinew_residual(list(best_z))))
    logger.debug("Quadric search finished", value=best_value, residual=residual, seed=seed)

    if best_value > -tol:
        return PositivityVerdict(NO_VIOLATION, best_value, samples, tol, seed, "dinew",
                                 details={"residual": residual})
    rechecked = recheck_quadric_point(A, list(best_z))
    witness = [complex(x) for x in best_z]
    if rechecked <= -tol:
        details: dict[str, Any] = {
            "search_value": best_value, "recheck_value": rechecked, "residual": residual,
        }
        scale = witness_scale(A)
        if scale is not None:
            details["witness_scale"] = scale
            details["scaled_value"] = rechecked * scale
        return PositivityVerdict(
            VIOLATED, rechecked, samples, tol, seed, "dinew",
            witness=witness, witness_kind="quadric", details=details,
        )
    logger.warning("Quadric candidate did not survive independent recheck",
                   search_value=best_value, recheck_value=rechecked)
    return PositivityVerdict(NO_VIOLATION, rechecked, samples, tol, seed, "dinew",
                             details={"residual": residual, "unconfirmed_recheck": rechecked})
