"""Exterior algebra of complex forms on C^n.

A :class:`Form` is a sparse map from ``(J, K)`` to a coefficient, meaning
``sum c_JK dz_J ∧ dz̄_K`` with ``J`` and ``K`` strictly increasing 1-based
tuples. The holomorphic block always precedes the antiholomorphic block and
signs from reordering are absorbed into the coefficient, so two forms are equal
exactly when their term maps are equal. Zero coefficients are never stored.

Examples:
    >>> dz1, dz2 = covector([1, 0]).as_form(), covector([0, 1]).as_form()
    >>> wedge(dz1, dz2) == -wedge(dz2, dz1)
    True
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from loguru import logger

from .combinatorics import MultiIndex, merge_sign
from .errors import BidegreeError, DimensionMismatchError, NonRealFormError, ScalarModeError
from .linalg import Matrix, minor
from .scalars import ComplexScalar, Operand, as_scalar, i_power, one, zero

Key = tuple[tuple[int, ...], tuple[int, ...]]


class Form:
    """Immutable sparse complex form on C^n."""

    __slots__ = ("n", "terms", "exact")

    n: int
    terms: dict[Key, ComplexScalar]
    exact: bool

    def __init__(
        self,
        n: int,
        terms: Mapping[Key, Operand] | Iterable[tuple[Key, Operand]] = (),
        exact: bool = True,
    ) -> None:
        if n < 0:
            raise DimensionMismatchError(f"ambient dimension must be >= 0, got {n}")
        self.n = n
        self.exact = exact
        acc: dict[Key, ComplexScalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (J, K), value in items:
            c = as_scalar(value, exact)
            if c.exact != exact:
                raise ScalarModeError(f"{c.mode} coefficient in a {'exact' if exact else 'float'} form")
            sign_j, J_sorted = _canonical(tuple(J), n)
            sign_k, K_sorted = _canonical(tuple(K), n)
            sign = sign_j * sign_k
            if sign == 0:
                continue
            key = (J_sorted, K_sorted)
            acc[key] = acc[key] + c * sign if key in acc else c * sign
        self.terms = {k: v for k, v in acc.items() if not v.is_zero()}

    @classmethod
    def _from_clean(cls, n: int, terms: dict[Key, ComplexScalar], exact: bool) -> Form:
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        obj.exact = exact
        return obj

    @classmethod
    def zero(cls, n: int, exact: bool = True) -> Form:
        return cls._from_clean(n, {}, exact)

    @classmethod
    def constant(cls, n: int, value: Operand = 1, exact: bool = True) -> Form:
        return cls(n, {((), ()): value}, exact)

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(J), len(K)) for J, K in self.terms}

    def bidegree(self) -> tuple[int, int] | None:
        """The common ``(p, q)`` of every term, or ``None`` for zero or mixed forms."""
        degrees = self.bidegrees()
        return next(iter(degrees)) if len(degrees) == 1 else None

    def is_pure(self) -> bool:
        return len(self.bidegrees()) <= 1

    def require_bidegree(self, p: int, q: int) -> None:
        """Raise :class:`BidegreeError` unless every term has bidegree ``(p, q)``."""
        bad = self.bidegrees() - {(p, q)}
        if bad:
            raise BidegreeError(f"expected a ({p},{q})-form, found bidegrees {sorted(bad)}")

    def coefficient(self, J: Sequence[int] | MultiIndex, K: Sequence[int] | MultiIndex) -> ComplexScalar:
        j = J.entries if isinstance(J, MultiIndex) else tuple(J)
        k = K.entries if isinstance(K, MultiIndex) else tuple(K)
        return self.terms.get((j, k), zero(self.exact))

    def items(self) -> Iterator[tuple[MultiIndex, MultiIndex, ComplexScalar]]:
        for (J, K), c in sorted(self.terms.items()):
            yield MultiIndex(J, self.n), MultiIndex(K, self.n), c

    def _check(self, other: Form) -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"forms live on C^{self.n} and C^{other.n}")
        if self.exact != other.exact:
            raise ScalarModeError(f"cannot combine {self.mode} and {other.mode} forms")

    def __add__(self, other: Form) -> Form:
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return Form._from_clean(self.n, out, self.exact)

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def __neg__(self) -> Form:
        return Form._from_clean(self.n, {k: -v for k, v in self.terms.items()}, self.exact)

    def scale(self, c: Operand) -> Form:
        s = as_scalar(c, self.exact)
        return Form._from_clean(self.n, {k: v * s for k, v in self.terms.items()}, self.exact)

    def __mul__(self, c: Operand) -> Form:
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other: Form) -> Form:
        return wedge(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self.exact == other.exact and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"Form(n={self.n}, terms={len(self.terms)}, mode={self.mode})"

    def to_float(self) -> Form:
        if not self.exact:
            return self
        return Form._from_clean(self.n, {k: v.to_float() for k, v in self.terms.items()}, False)

    def max_abs(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def is_close(self, other: Form, tol: float = 1e-9) -> bool:
        return (self - other).max_abs() <= tol


def _canonical(indices: tuple[int, ...], n: int) -> tuple[int, tuple[int, ...]]:
    if any(j < 1 or j > n for j in indices):
        raise DimensionMismatchError(f"indices {indices} not within [1, {n}]")
    if len(set(indices)) != len(indices):
        return 0, ()
    inversions = sum(1 for a, b in combinations(indices, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


def wedge(f: Form, g: Form) -> Form:
    """Exterior product ``f ∧ g``.

    For basis terms the sign is the product of the holomorphic merge sign, the
    antiholomorphic merge sign, and ``(-1)^(q_f * p_g)`` from moving ``dz_{J_g}``
    past ``dz̄_{K_f}``. Repeated indices annihilate the term.
    """
    f._check(g)
    out: dict[Key, ComplexScalar] = {}
    for (Jf, Kf), cf in f.terms.items():
        for (Jg, Kg), cg in g.terms.items():
            s1, J = merge_sign(Jf, Jg)
            if s1 == 0:
                continue
            s2, K = merge_sign(Kf, Kg)
            if s2 == 0:
                continue
            sign = s1 * s2 * (-1 if (len(Kf) * len(Jg)) % 2 else 1)
            c = cf * cg
            if sign < 0:
                c = -c
            key = (J, K)
            out[key] = out[key] + c if key in out else c
    return Form._from_clean(f.n, out, f.exact)


def wedge_all(forms: Iterable[Form], n: int | None = None, exact: bool = True) -> Form:
    """Left-to-right wedge of ``forms``; the empty product is the constant 1 on C^n."""
    result: Form | None = None
    for form in forms:
        result = form if result is None else wedge(result, form)
    if result is None:
        if n is None:
            raise DimensionMismatchError("empty wedge product needs an ambient dimension")
        return Form.constant(n, 1, exact)
    return result


def power(f: Form, k: int) -> Form:
    """``f ∧ ... ∧ f`` (``k`` factors); ``k = 0`` is the constant form 1."""
    if k < 0:
        raise ValueError(f"power must be >= 0, got {k}")
    result = Form.constant(f.n, 1, f.exact)
    for _ in range(k):
        result = wedge(result, f)
    return result


def conjugate(f: Form) -> Form:
    """Complex conjugate: ``c dz_J ∧ dz̄_K`` goes to ``(-1)^(|J||K|) c̄ dz_K ∧ dz̄_J``."""
    out: dict[Key, ComplexScalar] = {}
    for (J, K), c in f.terms.items():
        cc = c.conjugate()
        out[(K, J)] = -cc if (len(J) * len(K)) % 2 else cc
    return Form._from_clean(f.n, out, f.exact)


def is_real(f: Form, tol: float = 1e-9) -> bool:
    """``conjugate(f) == f`` exactly in exact mode, within ``tol`` in float mode."""
    if f.exact:
        return conjugate(f) == f
    return conjugate(f).is_close(f, tol)


def full_index(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


@lru_cache(maxsize=64)
def _volume_form(n: int, exact: bool) -> Form:
    factors = [
        Form(n, {((j,), (j,)): i_power(1, exact)}, exact) for j in range(1, n + 1)
    ]
    return wedge_all(factors, n, exact)


def volume_form(n: int, exact: bool = True) -> Form:
    """``dV = i dz_1∧dz̄_1 ∧ ... ∧ i dz_n∧dz̄_n`` built through :func:`wedge`.

    Its single coefficient on ``dz_1..n ∧ dz̄_1..n`` is ``i^(n^2)``, which is
    1 for every even ``n``.
    """
    vol = _volume_form(n, exact)
    full = full_index(n)
    expected = i_power(n * n, exact)
    if vol.terms.get((full, full), zero(exact)) != expected:
        raise AssertionError(f"volume form normalization broken for n={n}")
    return vol


def volume_coefficient(f: Form) -> ComplexScalar:
    """Scalar ``c`` with ``f = c dV``.

    Raises:
        BidegreeError: If ``f`` is nonzero and not of bidegree ``(n, n)``
    """
    f.require_bidegree(f.n, f.n)
    full = full_index(f.n)
    top = f.terms.get((full, full))
    if top is None:
        return zero(f.exact)
    return top / volume_form(f.n, f.exact).terms[(full, full)]


@dataclass(frozen=True)
class CoVector:
    """A (1,0)-covector ``gamma = sum c_j dz_j`` on C^n."""

    coefficients: tuple[ComplexScalar, ...]

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @property
    def exact(self) -> bool:
        return self.coefficients[0].exact if self.coefficients else True

    def as_form(self) -> Form:
        return Form._from_clean(
            self.n, {((j + 1,), ()): c for j, c in enumerate(self.coefficients)}, self.exact
        )

    def conjugate_form(self) -> Form:
        """``gamma-bar = sum c̄_j dz̄_j``."""
        return Form._from_clean(
            self.n,
            {((), (j + 1,)): c.conjugate() for j, c in enumerate(self.coefficients)},
            self.exact,
        )

    def to_float(self) -> CoVector:
        return CoVector(tuple(c.to_float() for c in self.coefficients))

    def to_json(self) -> list[list[str]]:
        return [list(c.to_strings()) for c in self.coefficients]


def covector(values: Sequence[Operand], exact_mode: bool | None = None) -> CoVector:
    """Build a covector from Python numbers or scalars."""
    return CoVector(tuple(as_scalar(v, exact_mode) for v in values))


def standard_covector(j: int, n: int, exact_mode: bool = True) -> CoVector:
    """``dz_j`` on C^n (1-based)."""
    return CoVector(tuple(one(exact_mode) if k == j else zero(exact_mode) for k in range(1, n + 1)))


def _check_frame(gammas: Sequence[CoVector], n: int | None = None) -> int:
    dims = {g.n for g in gammas}
    if n is not None:
        dims.add(n)
    if len(dims) > 1:
        raise DimensionMismatchError(f"covectors of mixed dimensions {sorted(dims)}")
    modes = {g.exact for g in gammas}
    if len(modes) > 1:
        raise ScalarModeError("covectors of mixed scalar modes")
    return dims.pop() if dims else 0


def decomposable_pp(gammas: Sequence[CoVector], n: int | None = None) -> Form:
    """``i γ_1∧γ̄_1 ∧ ... ∧ i γ_k∧γ̄_k``; real and positive for any covectors."""
    dim = _check_frame(gammas, n)
    exact = gammas[0].exact if gammas else True
    factors = [
        wedge(g.as_form(), g.conjugate_form()).scale(i_power(1, exact)) for g in gammas
    ]
    return wedge_all(factors, dim, exact)


def positivity_pairing(alpha: Form, gammas: Sequence[CoVector], tol: float = 1e-9) -> ComplexScalar:
    """Real volume coefficient of ``alpha ∧ i γ_1∧γ̄_1 ∧ ... ∧ i γ_q∧γ̄_q``.

    ``alpha`` must be a ``(p, p)``-form and exactly ``n - p`` covectors are
    expected. A nonvanishing imaginary part (exact mode) or one larger than
    ``tol`` relative to the magnitude (float mode) raises
    :class:`NonRealFormError`.
    """
    n = _check_frame(gammas, alpha.n)
    degree = alpha.bidegree()
    if degree is None:
        if not alpha.is_zero():
            raise BidegreeError(f"pairing needs a pure (p,p)-form, got {sorted(alpha.bidegrees())}")
        return zero(alpha.exact)
    p, q = degree
    if p != q:
        raise BidegreeError(f"pairing needs a (p,p)-form, got ({p},{q})")
    if len(gammas) != n - p:
        raise DimensionMismatchError(f"expected {n - p} covectors for a ({p},{p})-form on C^{n}")
    value = volume_coefficient(wedge(alpha, decomposable_pp(gammas, n)))
    if value.exact:
        if value.im != 0:
            raise NonRealFormError(f"pairing has imaginary part {value.im}; form is not real")
    elif abs(value.im) > tol * max(1.0, abs(value)):
        raise NonRealFormError(f"pairing has imaginary part {value.im:.3e}; form is not real")
    return ComplexScalar(value.re, 0, exact=value.exact)


def pullback(f: Form, M: Matrix) -> Form:
    """Substitute ``dz_j -> sum_k M[j][k] dz_k`` (and conjugates) in ``f``.

    Each ``dz_J`` maps to ``sum_L det(M[J, L]) dz_L``, so one term expands into
    products of ``|J| x |J|`` minors of ``M``.
    """
    if len(M) != f.n or any(len(row) != f.n for row in M):
        raise DimensionMismatchError(f"pullback needs a {f.n}x{f.n} matrix")
    cache: dict[tuple[tuple[int, ...], tuple[int, ...]], ComplexScalar] = {}

    def image(J: tuple[int, ...]) -> list[tuple[tuple[int, ...], ComplexScalar]]:
        rows = [j - 1 for j in J]
        result = []
        for cols in combinations(range(f.n), len(J)):
            key = (J, cols)
            if key not in cache:
                cache[key] = minor(M, rows, cols)
            m = cache[key]
            if not m.is_zero():
                result.append((tuple(c + 1 for c in cols), m))
        return result

    out: dict[Key, ComplexScalar] = {}
    for (J, K), c in f.terms.items():
        for L, mj in image(J):
            for Lp, mk in image(K):
                key = (L, Lp)
                val = c * mj * mk.conjugate()
                out[key] = out[key] + val if key in out else val
    logger.trace("pullback expanded {terms} terms into {out}", terms=len(f.terms), out=len(out))
    return Form._from_clean(f.n, out, f.exact)


def embed(f: Form, n: int) -> Form:
    """View a form on C^m as a form on C^n (``n >= m``) with the same terms."""
    if n < f.n:
        raise DimensionMismatchError(f"cannot embed a form on C^{f.n} into C^{n}")
    return Form._from_clean(n, dict(f.terms), f.exact)


def monomial(J: Sequence[int], K: Sequence[int], n: int, value: Operand = 1,
             exact: bool = True) -> Form:
    """Single term ``value * dz_J ∧ dz̄_K`` (indices in any order; sign absorbed)."""
    return Form(n, {(tuple(J), tuple(K)): value}, exact)
