"""The central 4x4 block of a reduced (2,2)-form.

After reduction the Omega rows and columns 2..5 form the hermitian matrix

    ( λ1   a    b    α  )
    ( ā    λ2   β   -c  )
    ( b̄    β̄    λ3  -d  )
    ( ᾱ   -c̄   -d̄    λ4 )

restricted to the quadric ``z1 z4 + z2 z3 = 0``. Every point of that quadric
with ``z1 != 0`` is a multiple of ``(1, ζ, w, -ζw)``, on which

    z̄ A z = P + 2 Re(w Q) + S |w|^2,
    P = λ1 + 2Re(aζ) + λ2|ζ|^2,  Q = b - αζ + βζ̄ + c|ζ|^2,  S = λ3 + 2Re(dζ) + λ4|ζ|^2,

and the remaining points lie on the four coordinate 2x2 blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from loguru import logger
from scipy.optimize import minimize

from ..config import ZetaSettings
from ..errors import HermitianViolationError, PreconditionError, TheoremViolationError
from ..linalg import Matrix, to_numpy
from ..ppmatrix import Omega6Form, quadratic_value
from ..sampling import instance_rng
from ..scalars import ComplexScalar, Real, as_scalar, exact_sqrt
from .verdict import NO_VIOLATION, VIOLATED, PositivityVerdict

# coordinate pairs (0-based) of the 2x2 blocks and the entry each one bounds
WAR1_BLOCKS: tuple[tuple[str, int, int], ...] = (
    ("a", 0, 1),
    ("b", 0, 2),
    ("c", 1, 3),
    ("d", 2, 3),
)


@dataclass(frozen=True)
class Reduced44:
    """Entries of the central block, named as in the layout above."""

    lam1: ComplexScalar
    lam2: ComplexScalar
    lam3: ComplexScalar
    lam4: ComplexScalar
    a: ComplexScalar
    b: ComplexScalar
    alpha: ComplexScalar
    beta: ComplexScalar
    c: ComplexScalar
    d: ComplexScalar

    def __post_init__(self) -> None:
        for name in ("lam1", "lam2", "lam3", "lam4"):
            if not getattr(self, name).is_real():
                raise HermitianViolationError(f"{name} must be real")

    @classmethod
    def from_values(cls, lam: tuple[object, object, object, object], a: object = 0,
                    b: object = 0, alpha: object = 0, beta: object = 0, c: object = 0,
                    d: object = 0, exact_mode: bool | None = None) -> Reduced44:
        def s(x: object) -> ComplexScalar:
            return as_scalar(x, exact_mode)  # type: ignore[arg-type]

        return cls(s(lam[0]), s(lam[1]), s(lam[2]), s(lam[3]),
                   s(a), s(b), s(alpha), s(beta), s(c), s(d))

    @property
    def exact(self) -> bool:
        return self.lam1.exact

    def matrix(self) -> Matrix:
        conj = ComplexScalar.conjugate
        return [
            [self.lam1, self.a, self.b, self.alpha],
            [conj(self.a), self.lam2, self.beta, -self.c],
            [conj(self.b), conj(self.beta), self.lam3, -self.d],
            [conj(self.alpha), -conj(self.c), -conj(self.d), self.lam4],
        ]

    def lambdas(self) -> tuple[Real, Real, Real, Real]:
        return (self.lam1.re, self.lam2.re, self.lam3.re, self.lam4.re)

    def to_json(self) -> dict[str, list[str]]:
        return {
            name: list(getattr(self, name).to_strings())
            for name in ("lam1", "lam2", "lam3", "lam4", "a", "b", "alpha", "beta", "c", "d")
        }


def to_reduced44(W: Omega6Form) -> Reduced44:
    """Read the central block of an Omega matrix."""
    return Reduced44(
        lam1=W.at(2, 2), lam2=W.at(3, 3), lam3=W.at(4, 4), lam4=W.at(5, 5),
        a=W.at(2, 3), b=W.at(2, 4), alpha=W.at(2, 5), beta=W.at(3, 4),
        c=-W.at(3, 5), d=-W.at(4, 5),
    )


def embed_reduced_point(z: list[complex]) -> list[complex]:
    """Quadric point of the central block as an Omega quadric point (z1 = z6 = 0)."""
    return [0j, *z, 0j]


def _zeta_blocks(R: Reduced44, zeta: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    lam1, lam2, lam3, lam4 = (float(x) for x in R.lambdas())
    a, b, al, be, c, d = (complex(x) for x in (R.a, R.b, R.alpha, R.beta, R.c, R.d))
    r2 = np.abs(zeta) ** 2
    P = lam1 + 2 * np.real(a * zeta) + lam2 * r2
    S = lam3 + 2 * np.real(d * zeta) + lam4 * r2
    Q = b - al * zeta + be * np.conj(zeta) + c * r2
    return P, Q, S


def war2_values(R: Reduced44, zeta: np.ndarray) -> np.ndarray:
    """Smallest eigenvalue of ``[[P, Q], [Q̄, S]]`` divided by ``1 + |ζ|^2``.

    This is the minimum of ``z̄Az / |z|^2`` over ``z = (u, uζ, w, -ζw)``.
    """
    P, Q, S = _zeta_blocks(R, np.atleast_1d(zeta))
    half_trace = (P + S) / 2
    radius = np.sqrt(((P - S) / 2) ** 2 + np.abs(Q) ** 2)
    return (half_trace - radius) / (1 + np.abs(np.atleast_1d(zeta)) ** 2)


def war2_residual(R: Reduced44, zeta: complex) -> float:
    """``PS - |Q|^2`` normalized by ``(1 + |ζ|^2)^2`` and the largest entry squared."""
    P, Q, S = _zeta_blocks(R, np.array([zeta]))
    scale = max(1.0, max(abs(complex(x)) for row in R.matrix() for x in row)) ** 2
    return float((P[0] * S[0] - abs(Q[0]) ** 2) / ((1 + abs(zeta) ** 2) ** 2 * scale))


def war2_witness(R: Reduced44, zeta: complex) -> tuple[list[complex], float]:
    """Unit quadric point ``(u, uζ, w, -ζw)`` minimizing ``z̄Az`` at this ``ζ``.

    When ``S > 0`` the minimizing ``w/u`` is ``-conj(Q)/S``; in general ``(u, w)``
    is the bottom eigenvector of ``[[P, Q], [Q̄, S]]``.
    """
    P, Q, S = _zeta_blocks(R, np.array([zeta]))
    H = np.array([[P[0], Q[0]], [np.conj(Q[0]), S[0]]], dtype=np.complex128)
    w, v = np.linalg.eigh(H)
    u, ww = v[0, 0], v[1, 0]
    z = np.array([u, u * zeta, ww, -zeta * ww], dtype=np.complex128)
    z /= np.linalg.norm(z)
    value = float(np.vdot(z, to_numpy(R.matrix()) @ z).real)
    return [complex(x) for x in z], value


def _evaluate(R: Reduced44, z: list[complex]) -> float:
    """Independent re-evaluation through the scalar quadratic form."""
    value = quadratic_value(_float_matrix(R), z)
    norm2 = sum(abs(x) ** 2 for x in z)
    return float(value.re) / norm2


def _float_matrix(R: Reduced44) -> Matrix:
    return [[x.to_float() for x in row] for row in R.matrix()]


def reduced44_check(
    R: Reduced44,
    zeta_samples: int | None = None,
    seed: int = 0,
    tol: float = 1e-6,
    settings: ZetaSettings | None = None,
) -> PositivityVerdict:
    """Check the central block is nonnegative on its quadric.

    Runs, in order: the diagonal signs, the four 2x2 block bounds
    (``|a|^2 <= λ1λ2``, ``|b|^2 <= λ1λ3``, ``|c|^2 <= λ2λ4``, ``|d|^2 <= λ3λ4``),
    the ``w``-at-infinity chart ``S(ζ) >= 0`` and the ``ζ`` condition
    ``|Q|^2 <= PS`` on a grid, random samples and Nelder-Mead refinements.
    The first failing condition yields a witness on the quadric.
    """
    settings = settings or ZetaSettings()
    samples = settings.samples if zeta_samples is None else zeta_samples
    A = to_numpy(R.matrix())
    evaluated = 0

    def violated(z: list[complex], condition: str, search_value: float) -> PositivityVerdict | None:
        rechecked = _evaluate(R, z)
        if rechecked <= -tol:
            logger.debug("Reduced block violation", condition=condition, value=rechecked)
            return PositivityVerdict(
                VIOLATED, rechecked, evaluated, tol, seed, "reduced44",
                witness=z, witness_kind="reduced",
                details={"condition": condition, "search_value": search_value},
            )
        return None

    for j, lam in enumerate(R.lambdas()):
        evaluated += 1
        if float(lam) <= -tol:
            z = [0j] * 4
            z[j] = 1 + 0j
            hit = violated(z, f"lambda{j + 1}", float(lam))
            if hit:
                return hit

    for name, j, k in WAR1_BLOCKS:
        evaluated += 1
        block = A[np.ix_([j, k], [j, k])]
        w, v = np.linalg.eigh(block)
        if w[0] <= -tol:
            z = [0j] * 4
            z[j], z[k] = complex(v[0, 0]), complex(v[1, 0])
            hit = violated(z, f"war1:{name}", float(w[0]))
            if hit:
                return hit

    radii = np.array(settings.radii)
    angles = np.exp(2j * np.pi * np.arange(settings.angles) / settings.angles)
    grid = (radii[:, None] * angles[None, :]).ravel()
    rng = instance_rng(seed)
    scale = rng.exponential(2.0, samples)
    random_zeta = scale * np.exp(2j * np.pi * rng.random(samples))
    zetas = np.concatenate([grid, random_zeta])
    evaluated += len(zetas)

    _, _, S = _zeta_blocks(R, zetas)
    S_norm = S / (1 + np.abs(zetas) ** 2)
    worst_s = int(np.argmin(S_norm))
    if S_norm[worst_s] <= -tol:
        zeta = zetas[worst_s]
        z = [0j, 0j, 1 + 0j, -zeta]
        hit = violated(z, "war2:infinity", float(S_norm[worst_s]))
        if hit:
            return hit

    values = war2_values(R, zetas)
    order = np.argsort(values)
    best_value, best_zeta = float(values[order[0]]), complex(zetas[order[0]])
    for k in order[: settings.restarts]:
        result = minimize(
            lambda x: float(war2_values(R, np.array([x[0] + 1j * x[1]]))[0]),
            x0=[zetas[k].real, zetas[k].imag],
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400},
        )
        evaluated += int(result.nfev)
        if float(result.fun) < best_value:
            best_value, best_zeta = float(result.fun), complex(result.x[0] + 1j * result.x[1])

    if best_value <= -tol:
        z, value = war2_witness(R, best_zeta)
        hit = violated(z, "war2", value)
        if hit:
            hit.details["zeta"] = [repr(best_zeta.real), repr(best_zeta.imag)]
            return hit

    return PositivityVerdict(NO_VIOLATION, best_value, evaluated, tol, seed, "reduced44",
                             details={"zeta": [repr(best_zeta.real), repr(best_zeta.imag)]})


def aa_sum(R: Reduced44) -> ComplexScalar:
    """``sum_{j,k} a_jk a_{5-j,5-k}`` over the central block."""
    M = R.matrix()
    acc = M[0][0] * 0
    for j in range(4):
        for k in range(4):
            acc = acc + M[j][k] * M[3 - j][3 - k]
    return acc


def aa_closed_form(R: Reduced44) -> ComplexScalar:
    """``2(λ1λ4 + λ2λ3) + 2(|α|^2 + |β|^2) - 4Re(a d̄ + b c̄)``."""
    cross = R.a * R.d.conjugate() + R.b * R.c.conjugate()
    return (
        (R.lam1 * R.lam4 + R.lam2 * R.lam3) * 2
        + ComplexScalar(R.alpha.abs2() + R.beta.abs2(), 0, exact=R.exact) * 2
        - ComplexScalar(cross.re, 0, exact=R.exact) * 4
    )


@dataclass(frozen=True)
class InequalityReport:
    """Both sides of the strengthened inequality and the weaker sum condition."""

    lhs: float
    rhs: float
    holds: bool
    aa_value: float
    aa_holds: bool
    exact_comparison: bool

    def to_json(self) -> dict[str, object]:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "aa": self.aa_value,
            "aa_holds": self.aa_holds,
            "exact": self.exact_comparison,
        }


def inequality_aa2(R: Reduced44, tol: float = 1e-9) -> InequalityReport:
    """Evaluate ``4Re(a d̄ + b c̄) <= (√(λ1λ4) + √(λ2λ3))^2 + (|α| + |β|)^2``.

    The comparison is exact when every square root involved is rational, and
    absolute within ``tol`` (scaled by the right-hand side) otherwise. Because
    the right-hand side never exceeds ``2(λ1λ4+λ2λ3) + 2(|α|^2+|β|^2)``, this
    inequality implies ``aa_sum(R) >= 0``; a case where it holds but the sum is
    negative raises :class:`TheoremViolationError`.
    """
    lam1, lam2, lam3, lam4 = R.lambdas()
    lhs_exact = (R.a * R.d.conjugate() + R.b * R.c.conjugate()).re * 4
    aa = aa_sum(R)

    roots = None
    if R.exact:
        candidates = [exact_sqrt(Fraction(x)) if x >= 0 else None for x in
                      (lam1 * lam4, lam2 * lam3, R.alpha.abs2(), R.beta.abs2())]
        if all(c is not None for c in candidates):
            roots = candidates

    if roots is not None:
        s14, s23, abs_al, abs_be = roots
        rhs_exact = (s14 + s23) ** 2 + (abs_al + abs_be) ** 2  # type: ignore[operator]
        holds = lhs_exact <= rhs_exact
        aa_holds = aa.re >= 0
        lhs, rhs = float(lhs_exact), float(rhs_exact)
        exact_cmp = True
    else:
        lhs = float(lhs_exact)
        rhs = (
            (math.sqrt(max(float(lam1 * lam4), 0.0)) + math.sqrt(max(float(lam2 * lam3), 0.0))) ** 2
            + (abs(R.alpha) + abs(R.beta)) ** 2
        )
        holds = lhs <= rhs + tol * max(1.0, abs(rhs))
        aa_holds = float(aa.re) >= -tol * max(1.0, abs(rhs))
        exact_cmp = False

    if holds and not aa_holds:
        raise TheoremViolationError(
            "strengthened inequality holds but the sum condition fails",
            payload={"reduced": R.to_json(), "lhs": lhs, "rhs": rhs, "aa": float(aa.re)},
        )
    return InequalityReport(lhs, rhs, holds, float(aa.re), aa_holds, exact_cmp)


def elementary_fact(a1: float | Fraction, a2: float | Fraction, x: float | Fraction,
                    y: float | Fraction) -> bool:
    """``a1^2 + a2^2 <= x^2 + y^2`` given ``0 <= a1, a2 <= x`` and ``a1 + a2 <= x + y``.

    Raises:
        PreconditionError: If the hypotheses do not hold
    """
    if min(a1, a2, x, y) < 0:
        raise PreconditionError("all arguments must be nonnegative")
    if a1 > x or a2 > x:
        raise PreconditionError(f"need a1, a2 <= x, got {a1}, {a2} > {x}")
    if a1 + a2 > x + y:
        raise PreconditionError(f"need a1 + a2 <= x + y, got {a1 + a2} > {x + y}")
    return a1 * a1 + a2 * a2 <= x * x + y * y
