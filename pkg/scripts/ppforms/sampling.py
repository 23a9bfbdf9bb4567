"""Seeded random generators.

Every randomized routine takes a master ``seed``; instance ``k`` of a suite
draws from ``numpy.random.default_rng([seed, k])`` so any single instance can be
replayed without regenerating the ones before it.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import SearchFailureError
from .exterior import CoVector
from .linalg import Matrix, det
from .scalars import ComplexScalar, exact, floating

DENOMINATORS = (1, 1, 1, 2, 3, 4)


def instance_rng(seed: int, index: int | None = None) -> np.random.Generator:
    """Generator for ``(seed, index)``; ``index=None`` gives the master stream."""
    return np.random.default_rng(seed if index is None else [seed, index])


def chunk_rngs(seed: int, chunks: int) -> list[np.random.Generator]:
    """Independent child generators for parallel partitions of one search."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(chunks)]


def random_rational(rng: np.random.Generator, bound: int = 4) -> Fraction:
    den = int(rng.choice(DENOMINATORS))
    return Fraction(int(rng.integers(-bound * den, bound * den + 1)), den)


def random_exact_scalar(rng: np.random.Generator, bound: int = 4,
                        real: bool = False) -> ComplexScalar:
    """Gaussian rational with components in ``[-bound, bound]`` and small denominators."""
    re = random_rational(rng, bound)
    im = Fraction(0) if real else random_rational(rng, bound)
    return exact(re, im)


def random_float_scalar(rng: np.random.Generator) -> ComplexScalar:
    re, im = rng.standard_normal(2)
    return floating(float(re), float(im))


def random_covector(rng: np.random.Generator, n: int, exact_mode: bool = True,
                    bound: int = 3) -> CoVector:
    if exact_mode:
        return CoVector(tuple(random_exact_scalar(rng, bound) for _ in range(n)))
    return CoVector(tuple(random_float_scalar(rng) for _ in range(n)))


def random_hermitian(rng: np.random.Generator, size: int, exact_mode: bool = True,
                     density: float = 1.0, bound: int = 4) -> Matrix:
    """Random hermitian matrix; entries above the diagonal kept with probability ``density``."""
    make = (lambda real: random_exact_scalar(rng, bound, real)) if exact_mode else (
        lambda real: floating(float(rng.standard_normal()), 0.0 if real else float(rng.standard_normal()))
    )
    zero_value = exact(0) if exact_mode else floating(0.0)
    out: Matrix = [[zero_value] * size for _ in range(size)]
    for j in range(size):
        if rng.random() < density:
            out[j][j] = make(True)
        for k in range(j + 1, size):
            if rng.random() < density:
                value = make(False)
                out[j][k] = value
                out[k][j] = value.conjugate()
    return out


def random_invertible(rng: np.random.Generator, n: int, bound: int = 2,
                      max_tries: int = 100) -> Matrix:
    """Random exact Gaussian-integer matrix with nonzero determinant."""
    for _ in range(max_tries):
        M = [
            [exact(int(rng.integers(-bound, bound + 1)), int(rng.integers(-bound, bound + 1)))
             for _ in range(n)]
            for _ in range(n)
        ]
        if not det(M).is_zero():
            return M
    raise SearchFailureError(f"no invertible {n}x{n} matrix found in {max_tries} draws")


def gaussian_frames(rng: np.random.Generator, count: int, rows: int, n: int) -> np.ndarray:
    """``count`` complex Gaussian ``rows x n`` frames with unit-norm rows."""
    frames = rng.standard_normal((count, rows, n)) + 1j * rng.standard_normal((count, rows, n))
    if rows:
        frames /= np.linalg.norm(frames, axis=2, keepdims=True)
    return frames
