"""Named forms with closed-form expected values.

Families:

- ``alpha_a``: ``sum Omega_j∧Omega-bar_j + a Omega_1∧Omega-bar_6 + conj(a) Omega_6∧Omega-bar_1``
  on C^4, positive iff ``|a| <= 2``, with ``α_a ∧ α_b = 2(3 + Re(a conj(b))) dV``
- ``thmp_p3``: a positive (3,3)-form on C^6 whose square is ``2(λ² + 3μ² - a²) dV``,
  negative for ``(λ, μ, a) = (2, 1, 3)``
- ``thmp_lift``: ``α ∧ β^(p-3)`` on C^{2p}, which keeps the negative square

Every entry is exact by default and :func:`verify_entry` recomputes each
expected value through the matrix formulas and the exterior engine.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .combinatorics import enumerate_multiindices
from .errors import DimensionMismatchError, OffQuadricError, PPFormsError, PreconditionError
from .exterior import Form, embed, monomial, power, volume_coefficient, volume_form, wedge
from .linalg import identity, to_numpy, zeros
from .positivity.dinew import dinew_residual
from .positivity.plucker import plucker_quadric_residual
from .ppmatrix import (
    Omega6Form,
    PPMatrixForm,
    from_exterior,
    from_omega6,
    product22_coefficient,
    product_coefficient,
    quadratic_value,
    square_coefficient,
    to_exterior,
)
from .scalars import ComplexScalar, I, Operand, as_scalar, exact_sqrt, zero
from .serialization import to_document

# 1-based lexicographic positions in the p=3 table
LAMBDA_POSITIONS: tuple[int, ...] = (1, 20)
MU_POSITIONS: tuple[int, ...] = (2, 5, 10, 11, 16, 19)

GalleryForm = Form | PPMatrixForm | Omega6Form


def alpha_a(a: Operand) -> Omega6Form:
    """Omega identity with ``a`` at (1,6) and ``conj(a)`` at (6,1)."""
    value = as_scalar(a)
    entries = identity(6, value.exact)
    entries[0][5] = value
    entries[5][0] = value.conjugate()
    return Omega6Form(entries)


def alpha_product_expected(a: Operand, b: Operand) -> ComplexScalar:
    """``2(3 + Re(a conj(b)))``."""
    x, y = as_scalar(a), as_scalar(b)
    return ComplexScalar((x * y.conjugate()).re * 2 + 6, 0, exact=x.exact)


def _modulus(a: ComplexScalar) -> ComplexScalar:
    """``|a|`` as a scalar; exact only when it is rational."""
    if a.exact:
        root = exact_sqrt(a.abs2())
        if root is not None:
            return ComplexScalar(root, 0, exact=True)
    return ComplexScalar(abs(a), 0.0, exact=False)


def prop_witness(a: Operand) -> list[ComplexScalar]:
    """Quadric point ``z`` with ``z̄ A_a z^T = 2|a|(2 - |a|)``.

    ``z1 = z2 = sqrt|a|``, ``z6 = -conj(a)/sqrt|a|``, ``z5 = conj(a)/sqrt|a|``,
    ``z3 = z4 = 0``. Exact when ``sqrt|a|`` is rational, float otherwise.

    Raises:
        PreconditionError: ``a == 0``
    """
    value = as_scalar(a)
    if value.is_zero():
        raise PreconditionError("the witness needs a != 0")
    modulus = _modulus(value)
    root = exact_sqrt(modulus.re) if modulus.exact else None
    if root is not None:
        s = ComplexScalar(root, 0, exact=True)
    else:
        value = value.to_float()
        s = ComplexScalar(math.sqrt(abs(value)), 0.0, exact=False)
    conj = value.conjugate()
    nil = zero(s.exact)
    return [s, s, nil, nil, conj / s, -conj / s]


def prop_witness_value(a: Operand) -> ComplexScalar:
    """``2|a|(2 - |a|)``."""
    modulus = _modulus(as_scalar(a))
    return modulus * (2 - modulus) * 2


def prop_bound_check(a: Operand, z: Sequence[complex], tol: float = 1e-9) -> bool:
    """``z̄ A_a z ≥ 2|z1 z6| + 2|z2 z5 + z3 z4| + 2 Re(a z̄1 z6)`` in float arithmetic."""
    w = np.asarray([complex(x) for x in z], dtype=np.complex128)
    if w.shape != (6,):
        raise DimensionMismatchError(f"expected 6 coordinates, got {w.shape}")
    A = to_numpy(alpha_a(a).to_float().entries)
    value = float(np.real(np.vdot(w, A @ w)))
    av = complex(as_scalar(a))
    bound = (
        2 * abs(w[0] * w[5])
        + 2 * abs(w[1] * w[4] + w[2] * w[3])
        + 2 * (av * np.conj(w[0]) * w[5]).real
    )
    return value >= bound - tol * max(1.0, float(np.vdot(w, w).real))


def _positive_parameters(**params: Operand) -> dict[str, ComplexScalar]:
    values = {name: as_scalar(v) for name, v in params.items()}
    for name, v in values.items():
        if not v.is_real() or v.re <= 0:
            raise PreconditionError(f"{name} must be a positive real number, got {v}")
    if not all(v.exact for v in values.values()):
        values = {name: v.to_float() for name, v in values.items()}
    return values


def _check_p3_positions() -> None:
    table = enumerate_multiindices(3, 6)
    for positions in ((1, 20), (2, 19), (5, 16), (10, 11)):
        j, k = positions
        if table.complement_position(j - 1) != k - 1:
            raise PPFormsError(f"p=3 table does not pair positions {j} and {k}")


def thmp_form_p3(lam: Operand, mu: Operand, a: Operand) -> PPMatrixForm:
    """20x20 matrix with ``λ`` at positions 1, 20, ``μ`` at 2, 5, 10, 11, 16, 19 and ``a`` at (1,20), (20,1).

    Through :func:`~ppforms.ppmatrix.to_exterior` this is
    ``λ i(dz_J1∧dz̄_J1 + dz_J20∧dz̄_J20) + μ i sum dz_Jk∧dz̄_Jk + i a (dz_J1∧dz̄_J20 + dz_J20∧dz̄_J1)``.

    Raises:
        PreconditionError: A parameter is not a positive real
    """
    values = _positive_parameters(lam=lam, mu=mu, a=a)
    _check_p3_positions()
    exact_mode = values["lam"].exact
    entries = zeros(20, 20, exact_mode)
    for k in LAMBDA_POSITIONS:
        entries[k - 1][k - 1] = values["lam"]
    for k in MU_POSITIONS:
        entries[k - 1][k - 1] = values["mu"]
    entries[0][19] = values["a"]
    entries[19][0] = values["a"]
    return PPMatrixForm(3, entries)


def thmp_displayed_form(lam: Operand, mu: Operand, a: Operand, absorb_i: bool = True) -> Form:
    """The p=3 form written term by term in exterior notation.

    With ``absorb_i`` the off-diagonal pair carries ``i a``, which makes the
    form real and equal to ``to_exterior(thmp_form_p3(λ, μ, a))``. Without it
    the pair carries the bare ``a`` and the result is not a real form.
    """
    values = _positive_parameters(lam=lam, mu=mu, a=a)
    exact_mode = values["lam"].exact
    table = enumerate_multiindices(3, 6)
    unit = I if exact_mode else I.to_float()
    off = values["a"] * unit if absorb_i else values["a"]
    J = {k: entry.entries for k, entry in enumerate(table.entries, start=1)}
    total = Form.zero(6, exact_mode)
    for k in LAMBDA_POSITIONS:
        total = total + monomial(J[k], J[k], 6, values["lam"] * unit, exact_mode)
    for k in MU_POSITIONS:
        total = total + monomial(J[k], J[k], 6, values["mu"] * unit, exact_mode)
    total = total + monomial(J[1], J[20], 6, off, exact_mode)
    return total + monomial(J[20], J[1], 6, off, exact_mode)


def thmp_square_expected(lam: Operand, mu: Operand, a: Operand) -> ComplexScalar:
    """``2(λ² + 3μ² - a²)``."""
    values = _positive_parameters(lam=lam, mu=mu, a=a)
    lam_, mu_, a_ = values["lam"], values["mu"], values["a"]
    return (lam_ * lam_ + mu_ * mu_ * 3 - a_ * a_) * 2


def beta_padding(p: int, exact_mode: bool = True) -> Form:
    """``i dz_7∧dz̄_7 + ... + i dz_2p∧dz̄_2p`` on C^{2p}.

    Raises:
        PreconditionError: ``p < 4``
    """
    if p < 4:
        raise PreconditionError(f"padding is defined for p >= 4, got p={p}")
    n = 2 * p
    unit = I if exact_mode else I.to_float()
    total = Form.zero(n, exact_mode)
    for j in range(7, n + 1):
        total = total + monomial((j,), (j,), n, unit, exact_mode)
    return total


def thmp_lift(p: int, lam: Operand, mu: Operand, a: Operand) -> Form:
    """``α ∧ β^(p-3)`` on C^{2p}; for ``p = 3`` this is the p=3 form itself."""
    if p < 3:
        raise PreconditionError(f"the lift needs p >= 3, got p={p}")
    alpha = to_exterior(thmp_form_p3(lam, mu, a))
    if p == 3:
        return alpha
    return wedge(embed(alpha, 2 * p), power(beta_padding(p, alpha.exact), p - 3))


def thmp_lift_expected(p: int, lam: Operand, mu: Operand, a: Operand) -> ComplexScalar:
    """``(2p-6)! * 2(λ² + 3μ² - a²)``."""
    return thmp_square_expected(lam, mu, a) * math.factorial(2 * p - 6)


def thmp_bound_margins(lam: float, mu: float, a: float, Z: np.ndarray) -> np.ndarray:
    """``z̄Az - 2(λ+μ-a)|z1 z20|`` for each row of ``Z``; no quadric check."""
    A = to_numpy(thmp_form_p3(lam, mu, a).to_float().entries)
    values = np.real(np.einsum("ij,jk,ik->i", Z.conj(), A, Z))
    bounds = 2 * (float(lam) + float(mu) - float(a)) * np.abs(Z[:, 0] * Z[:, 19])
    return values - bounds


def thmp_lower_bound_check(lam: Operand, mu: Operand, a: Operand, z: Sequence[complex],
                           tol: float = 1e-6) -> bool:
    """``z̄Az ≥ 2(λ+μ-a)|z1 z20| - tol`` for a point on the p=3 Plücker quadric.

    Raises:
        OffQuadricError: ``z`` violates ``z1 z20 - z10 z11 + z5 z16 - z2 z19 = 0``
    """
    w = np.asarray([complex(x) for x in z], dtype=np.complex128)
    if w.shape != (20,):
        raise DimensionMismatchError(f"expected 20 coordinates, got {w.shape}")
    scale = max(1.0, float(np.vdot(w, w).real))
    residual = plucker_quadric_residual(list(w))
    if abs(residual) > tol * scale:
        raise OffQuadricError(f"point is off the p=3 quadric (residual {abs(residual):.3e})")
    params = [float(as_scalar(v).re) for v in (lam, mu, a)]
    margin = thmp_bound_margins(*params, w[None, :])[0]
    return bool(margin >= -tol * scale)


# --- registry ---------------------------------------------------------------


@dataclass(frozen=True)
class GalleryEntry:
    """A named form, its parameters and the values it must reproduce."""

    name: str
    parameters: dict[str, ComplexScalar]
    form: GalleryForm
    expected: dict[str, ComplexScalar]
    notes: dict[str, str] = field(default_factory=dict)
    partner: Omega6Form | None = None
    witness: list[ComplexScalar] | None = None

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
            "expected": {k: str(v) for k, v in self.expected.items()},
            "notes": dict(self.notes),
            "form": to_document(self.form),
        }
        if self.partner is not None:
            data["partner"] = to_document(self.partner)
        if self.witness is not None:
            data["witness"] = [list(x.to_strings()) for x in self.witness]
        return data


@dataclass(frozen=True)
class EntryCheck:
    key: str
    expected: ComplexScalar
    computed: ComplexScalar
    holds: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "key": self.key,
            "expected": str(self.expected),
            "computed": str(self.computed),
            "holds": self.holds,
        }


def _square(f: Form) -> ComplexScalar:
    return volume_coefficient(wedge(f, f))


def _build_alpha(params: dict[str, ComplexScalar]) -> GalleryEntry:
    W = alpha_a(params["a"])
    expected = alpha_product_expected(params["a"], params["a"])
    return GalleryEntry(
        "alpha_a", params, W,
        {"square_omega": expected, "square_lex": expected, "square_exterior": expected},
        {"square": "2(3 + |a|^2); positive iff |a| <= 2"},
    )


def _eval_alpha(entry: GalleryEntry) -> dict[str, ComplexScalar]:
    W = entry.form
    assert isinstance(W, Omega6Form)
    return {
        "square_omega": product22_coefficient(W, W),
        "square_lex": square_coefficient(from_omega6(W)),
        "square_exterior": _square(to_exterior(from_omega6(W))),
    }


def _build_alpha_product(params: dict[str, ComplexScalar]) -> GalleryEntry:
    expected = alpha_product_expected(params["a"], params["b"])
    return GalleryEntry(
        "alpha_product", params, alpha_a(params["a"]),
        {"product_omega": expected, "product_lex": expected, "product_exterior": expected},
        {"product": "2(3 + Re(a conj(b))); negative for a = 2, b = -2"},
        partner=alpha_a(params["b"]),
    )


def _eval_alpha_product(entry: GalleryEntry) -> dict[str, ComplexScalar]:
    W, V = entry.form, entry.partner
    assert isinstance(W, Omega6Form) and V is not None
    return {
        "product_omega": product22_coefficient(W, V),
        "product_lex": product_coefficient(from_omega6(W), from_omega6(V)),
        "product_exterior": volume_coefficient(
            wedge(to_exterior(from_omega6(W)), to_exterior(from_omega6(V)))
        ),
    }


def _build_thmp(params: dict[str, ComplexScalar]) -> GalleryEntry:
    A = thmp_form_p3(params["lam"], params["mu"], params["a"])
    expected = thmp_square_expected(params["lam"], params["mu"], params["a"])
    return GalleryEntry(
        "thmp_p3", params, A,
        {"square_lex": expected, "square_exterior": expected},
        {
            "square": "2(lam^2 + 3 mu^2 - a^2)",
            "positivity": "positive whenever a <= lam + mu",
        },
    )


def _eval_thmp(entry: GalleryEntry) -> dict[str, ComplexScalar]:
    A = entry.form
    assert isinstance(A, PPMatrixForm)
    return {"square_lex": square_coefficient(A), "square_exterior": _square(to_exterior(A))}


def _build_lift(params: dict[str, ComplexScalar]) -> GalleryEntry:
    p = _integer(params["p"], "p")
    f = thmp_lift(p, params["lam"], params["mu"], params["a"])
    expected = thmp_lift_expected(p, params["lam"], params["mu"], params["a"])
    return GalleryEntry(
        "thmp_lift", params, f,
        {"square_exterior": expected, "square_lex": expected, "alpha2_beta2": expected},
        {"square": "(2p-6)! * 2(lam^2 + 3 mu^2 - a^2)"},
    )


def _eval_lift(entry: GalleryEntry) -> dict[str, ComplexScalar]:
    f = entry.form
    assert isinstance(f, Form)
    p = _integer(entry.parameters["p"], "p")
    alpha = to_exterior(thmp_form_p3(entry.parameters["lam"], entry.parameters["mu"],
                                     entry.parameters["a"]))
    if p == 3:
        tail = Form.constant(6, 1, alpha.exact)
    else:
        tail = power(beta_padding(p, alpha.exact), 2 * p - 6)
    return {
        "square_exterior": _square(f),
        "square_lex": square_coefficient(from_exterior(f)),
        "alpha2_beta2": volume_coefficient(wedge(power(embed(alpha, 2 * p), 2), tail)),
    }


def _build_beta(params: dict[str, ComplexScalar]) -> GalleryEntry:
    p = _integer(params["p"], "p")
    expected = as_scalar(math.factorial(2 * p - 6))
    return GalleryEntry(
        "beta_padding", params, beta_padding(p),
        {"top_power": expected},
        {"top_power": "dV_6 ∧ beta^(2p-6) = (2p-6)! dV"},
    )


def _eval_beta(entry: GalleryEntry) -> dict[str, ComplexScalar]:
    f = entry.form
    assert isinstance(f, Form)
    p = f.n // 2
    head = embed(volume_form(6, f.exact), f.n)
    return {"top_power": volume_coefficient(wedge(head, power(f, 2 * p - 6)))}


def _build_witness(params: dict[str, ComplexScalar]) -> GalleryEntry:
    z = prop_witness(params["a"])
    expected = prop_witness_value(params["a"])
    exact_mode = z[0].exact and expected.exact
    if not exact_mode:
        expected = expected.to_float()
    return GalleryEntry(
        "prop_witness", params, alpha_a(params["a"]),
        {"witness_value": expected, "quadric_residual": zero(exact_mode)},
        {"witness_value": "2|a|(2 - |a|); negative when |a| > 2"},
        witness=z,
    )


def _eval_witness(entry: GalleryEntry) -> dict[str, ComplexScalar]:
    W = entry.form
    assert isinstance(W, Omega6Form) and entry.witness is not None
    z = entry.witness
    if not z[0].exact:
        W = W.to_float()
    return {"witness_value": quadratic_value(W, z), "quadric_residual": dinew_residual(z)}


@dataclass(frozen=True)
class _Recipe:
    description: str
    defaults: dict[str, str]
    build: Callable[[dict[str, ComplexScalar]], GalleryEntry]
    evaluate: Callable[[GalleryEntry], dict[str, ComplexScalar]]


_REGISTRY: dict[str, _Recipe] = {
    "alpha_a": _Recipe(
        "Omega identity plus a at (1,6); positive iff |a| <= 2",
        {"a": "2", "a_im": "0"}, _build_alpha, _eval_alpha,
    ),
    "alpha_product": _Recipe(
        "alpha_a ∧ alpha_b with closed form 2(3 + Re(a conj(b)))",
        {"a": "2", "a_im": "0", "b": "-2", "b_im": "0"}, _build_alpha_product, _eval_alpha_product,
    ),
    "thmp_p3": _Recipe(
        "positive (3,3)-form on C^6 with square 2(lam^2 + 3 mu^2 - a^2)",
        {"lam": "2", "mu": "1", "a": "3"}, _build_thmp, _eval_thmp,
    ),
    "thmp_lift": _Recipe(
        "alpha ∧ beta^(p-3) on C^{2p} with a negative square",
        {"p": "4", "lam": "2", "mu": "1", "a": "3"}, _build_lift, _eval_lift,
    ),
    "beta_padding": _Recipe(
        "i dz_7∧dz̄_7 + ... + i dz_2p∧dz̄_2p on C^{2p}",
        {"p": "4"}, _build_beta, _eval_beta,
    ),
    "prop_witness": _Recipe(
        "quadric point where alpha_a evaluates to 2|a|(2 - |a|)",
        {"a": "3", "a_im": "0"}, _build_witness, _eval_witness,
    ),
}


def _integer(value: ComplexScalar, name: str) -> int:
    if not value.exact or not value.is_real() or Fraction(value.re).denominator != 1:
        raise PreconditionError(f"{name} must be an integer, got {value}")
    return int(value.re)


def _parse_parameters(name: str, params: Mapping[str, object] | None) -> dict[str, ComplexScalar]:
    recipe = _REGISTRY[name]
    raw = dict(recipe.defaults)
    for key, value in (params or {}).items():
        if key not in recipe.defaults:
            raise PreconditionError(f"unknown parameter {key!r} for {name}; "
                                    f"expected one of {sorted(recipe.defaults)}")
        raw[key] = str(value)
    try:
        parsed = {key: Fraction(value) for key, value in raw.items()}
    except (ValueError, ZeroDivisionError) as e:
        raise PreconditionError(f"invalid parameter for {name}: {e}") from None
    out: dict[str, ComplexScalar] = {}
    for key, value in parsed.items():
        if key.endswith("_im"):
            continue
        out[key] = ComplexScalar(value, parsed.get(f"{key}_im", 0), exact=True)
    return out


def list_entries() -> list[dict[str, Any]]:
    """Names, descriptions and default parameters of every gallery entry."""
    return [
        {"name": name, "description": r.description, "defaults": dict(r.defaults)}
        for name, r in _REGISTRY.items()
    ]


def build_entry(name: str, params: Mapping[str, object] | None = None) -> GalleryEntry:
    """Build entry ``name``; parameters are rational strings, ``<x>_im`` sets an imaginary part.

    Raises:
        PreconditionError: Unknown entry, unknown parameter, or invalid value
    """
    if name not in _REGISTRY:
        raise PreconditionError(f"unknown gallery entry {name!r}; expected one of {sorted(_REGISTRY)}")
    return _REGISTRY[name].build(_parse_parameters(name, params))


def verify_entry(entry: GalleryEntry, tol: float = 1e-9) -> list[EntryCheck]:
    """Recompute every expected value of ``entry``."""
    computed = _REGISTRY[entry.name].evaluate(entry)
    checks = []
    for key, expected in entry.expected.items():
        value = computed[key]
        if expected.exact and value.exact:
            holds = value == expected
        else:
            holds = value.to_float().is_close(expected.to_float(), tol * max(1.0, abs(expected)))
        checks.append(EntryCheck(key, expected, value, holds))
    return checks
