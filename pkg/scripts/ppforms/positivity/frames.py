"""Positivity by sampling decomposable frames.

For a real (p,p)-form ``alpha`` on C^n and covectors ``gamma_1..gamma_q``
(``q = n - p``) the pairing ``alpha ∧ i γ_1∧γ̄_1 ∧ ... ∧ i γ_q∧γ̄_q`` equals
``sum a_JK y_J conj(y_K)`` where ``y_J`` is the signed complementary minor of
the frame (see :func:`ppforms.ppmatrix.frame_coordinates`). The sampler
evaluates that hermitian form in batches with numpy; any negative candidate is
re-evaluated with the exterior engine before it is reported.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

import numpy as np
from loguru import logger

from ..errors import BidegreeError, NonRealFormError
from ..exterior import CoVector, Form, is_real, positivity_pairing
from ..linalg import to_numpy
from ..ppmatrix import coefficient_matrix
from ..sampling import chunk_rngs, gaussian_frames
from ..scalars import from_complex
from .verdict import NO_VIOLATION, VIOLATED, PositivityVerdict, merge_verdicts

CHUNK_SIZE = 4096


def _degree(alpha: Form) -> int:
    degree = alpha.bidegree()
    if degree is None:
        if alpha.is_zero():
            return 0
        raise BidegreeError(f"expected a (p,p)-form, found {sorted(alpha.bidegrees())}")
    if degree[0] != degree[1]:
        raise BidegreeError(f"expected a (p,p)-form, got {degree}")
    return degree[0]


class FramePairing:
    """Vectorized evaluation of ``alpha``'s pairing against batches of frames."""

    def __init__(self, alpha: Form) -> None:
        self.alpha = alpha
        self.n = alpha.n
        self.p = _degree(alpha)
        self.q = self.n - self.p
        table, matrix = coefficient_matrix(alpha, self.p)
        self.table = table
        self.matrix = to_numpy(matrix)
        self.columns = [np.array([j - 1 for j in Jc.entries], dtype=int) for Jc in table.complements]
        self.signs = np.array(table.signs, dtype=float)

    def coordinates(self, frames: np.ndarray) -> np.ndarray:
        """``y`` coordinates, shape ``(count, N)``, for frames of shape ``(count, q, n)``."""
        count = frames.shape[0]
        if self.q == 0:
            return np.ones((count, 1), dtype=np.complex128)
        out = np.empty((count, len(self.columns)), dtype=np.complex128)
        for k, cols in enumerate(self.columns):
            out[:, k] = np.linalg.det(frames[:, :, cols])
        return out * self.signs

    def values(self, frames: np.ndarray) -> np.ndarray:
        y = self.coordinates(frames)
        return np.einsum("bj,jk,bk->b", y, self.matrix, y.conj()).real

    def recheck(self, frame: np.ndarray) -> float:
        """Pairing of one frame through the exterior engine in float mode."""
        gammas = [CoVector(tuple(from_complex(complex(x)) for x in row)) for row in frame]
        return float(positivity_pairing(self.alpha.to_float(), gammas).re)


def coordinate_frames(n: int, q: int) -> np.ndarray:
    """All ``binomial(n, q)`` frames made of standard covectors."""
    eye = np.eye(n, dtype=np.complex128)
    frames = [eye[list(rows)] for rows in combinations(range(n), q)]
    return np.array(frames, dtype=np.complex128).reshape(len(frames), q, n)


def _search_chunk(pairing: FramePairing, frames: np.ndarray, tol: float, seed: int,
                  method: str) -> PositivityVerdict:
    values = pairing.values(frames)
    best = int(np.argmin(values))
    value = float(values[best])
    if value > -tol:
        return PositivityVerdict(NO_VIOLATION, value, len(frames), tol, seed, method)
    rechecked = pairing.recheck(frames[best])
    witness = [[complex(x) for x in row] for row in frames[best]]
    if rechecked <= -tol:
        return PositivityVerdict(
            VIOLATED, rechecked, len(frames), tol, seed, method,
            witness=witness, witness_kind="frame",
            details={"search_value": value, "recheck_value": rechecked},
        )
    logger.warning(
        "Frame candidate did not survive independent recheck",
        search_value=value, recheck_value=rechecked,
    )
    return PositivityVerdict(NO_VIOLATION, max(value, rechecked), len(frames), tol, seed, method,
                             details={"unconfirmed_recheck": rechecked})


def sample_frames_test(
    alpha: Form,
    samples: int = 20_000,
    seed: int = 0,
    tol: float = 1e-6,
    extra_frames: Sequence[Sequence[CoVector]] | None = None,
    workers: int = 1,
) -> PositivityVerdict:
    """Search for a frame with negative pairing against a real (p,p)-form.

    Random frames have unit-norm covector rows; ``extra_frames`` (for instance a
    constructed witness) and the coordinate frames are evaluated as given.

    Args:
        alpha: Real pure (p,p)-form on C^n
        samples: Number of random Gaussian frames
        seed: Master seed; partitions use ``SeedSequence(seed).spawn``
        tol: Values ``<= -tol`` count as violations
        extra_frames: Additional frames to evaluate exactly as given
        workers: Threads used for the random partitions

    Raises:
        NonRealFormError: If ``alpha`` is not real
    """
    if not is_real(alpha):
        raise NonRealFormError("positivity is only defined for real forms")
    pairing = FramePairing(alpha)
    logger.debug("Frame search", n=pairing.n, p=pairing.p, samples=samples, seed=seed)

    verdict = _search_chunk(pairing, coordinate_frames(pairing.n, pairing.q), tol, seed, "frames")
    if extra_frames:
        given = np.array(
            [[[complex(c) for c in g.coefficients] for g in frame] for frame in extra_frames],
            dtype=np.complex128,
        ).reshape(len(extra_frames), pairing.q, pairing.n)
        verdict = merge_verdicts(verdict, _search_chunk(pairing, given, tol, seed, "frames"))

    chunks = max(1, -(-samples // CHUNK_SIZE))
    sizes = [min(CHUNK_SIZE, samples - k * CHUNK_SIZE) for k in range(chunks)]
    rngs = chunk_rngs(seed, chunks)

    def run(k: int) -> PositivityVerdict:
        frames = gaussian_frames(rngs[k], sizes[k], pairing.q, pairing.n)
        return _search_chunk(pairing, frames, tol, seed, "frames")

    if samples > 0:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(run, range(chunks)))
        else:
            parts = [run(k) for k in range(chunks)]
        for part in parts:
            verdict = merge_verdicts(verdict, part)

    logger.debug("Frame search finished", status=verdict.status, value=verdict.value)
    return verdict

