"""Complex scalars over the Gaussian rationals or IEEE doubles.

A :class:`ComplexScalar` is either *exact* (real and imaginary parts are
``fractions.Fraction``) or *float* (two Python floats). Arithmetic between the
two modes raises :class:`~ppforms.errors.ScalarModeError`; plain ``int`` operands
are mode-neutral and ``Fraction`` operands are exact-only. Conversion is always
explicit through :meth:`ComplexScalar.to_float`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Literal, Union

from .errors import ScalarModeError

Mode = Literal["exact", "float"]
Real = Union[Fraction, float]
Operand = Union["ComplexScalar", int, Fraction, float, complex]


class ComplexScalar:
    """An immutable complex number in exact or float mode."""

    __slots__ = ("re", "im", "exact")

    re: Real
    im: Real
    exact: bool

    def __init__(self, re: int | Fraction | float = 0, im: int | Fraction | float = 0,
                 exact: bool | None = None) -> None:
        if exact is None:
            exact = not (isinstance(re, float) or isinstance(im, float))
        if exact:
            if isinstance(re, float) or isinstance(im, float):
                raise ScalarModeError("float component given for an exact scalar")
            self.re = Fraction(re)
            self.im = Fraction(im)
        else:
            self.re = float(re)
            self.im = float(im)
        self.exact = exact

    @classmethod
    def _raw(cls, re: Real, im: Real, exact: bool) -> ComplexScalar:
        obj = cls.__new__(cls)
        obj.re = re
        obj.im = im
        obj.exact = exact
        return obj

    @property
    def mode(self) -> Mode:
        return "exact" if self.exact else "float"

    def _coerce(self, other: Operand) -> ComplexScalar:
        if isinstance(other, ComplexScalar):
            if other.exact != self.exact:
                raise ScalarModeError(f"cannot combine {self.mode} and {other.mode} scalars")
            return other
        if isinstance(other, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(other, int):
            if self.exact:
                return ComplexScalar._raw(Fraction(other), Fraction(0), True)
            return ComplexScalar._raw(float(other), 0.0, False)
        if isinstance(other, Fraction):
            if not self.exact:
                raise ScalarModeError("cannot combine a float scalar with a Fraction")
            return ComplexScalar._raw(other, Fraction(0), True)
        if isinstance(other, float):
            if self.exact:
                raise ScalarModeError("cannot combine an exact scalar with a float")
            return ComplexScalar._raw(other, 0.0, False)
        if isinstance(other, complex):
            if self.exact:
                raise ScalarModeError("cannot combine an exact scalar with a complex")
            return ComplexScalar._raw(other.real, other.imag, False)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Operand) -> ComplexScalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar._raw(self.re + o.re, self.im + o.im, self.exact)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> ComplexScalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar._raw(self.re - o.re, self.im - o.im, self.exact)

    def __rsub__(self, other: Operand) -> ComplexScalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar._raw(o.re - self.re, o.im - self.im, self.exact)

    def __mul__(self, other: Operand) -> ComplexScalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar._raw(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re, self.exact
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> ComplexScalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("complex division by zero")
        return ComplexScalar._raw(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
            self.exact,
        )

    def __rtruediv__(self, other: Operand) -> ComplexScalar:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self) -> ComplexScalar:
        return ComplexScalar._raw(-self.re, -self.im, self.exact)

    def __pos__(self) -> ComplexScalar:
        return self

    def conjugate(self) -> ComplexScalar:
        return ComplexScalar._raw(self.re, -self.im, self.exact)

    def abs2(self) -> Real:
        """Squared modulus, exact in exact mode."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_close(self, other: Operand, tol: float = 1e-9) -> bool:
        """Absolute closeness; exact scalars compare with ``==`` when ``tol`` is 0."""
        o = self._coerce(other)
        return math.hypot(float(self.re - o.re), float(self.im - o.im)) <= tol

    def to_float(self) -> ComplexScalar:
        if not self.exact:
            return self
        return ComplexScalar._raw(float(self.re), float(self.im), False)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ComplexScalar):
            return self.exact == other.exact and self.re == other.re and self.im == other.im
        if isinstance(other, int | Fraction | float):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"ComplexScalar({self.re!s}, {self.im!s}, {self.mode})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_strings(self) -> tuple[str, str]:
        """Serialize as a ``(re, im)`` string pair ("num/den" in exact mode)."""
        if self.exact:
            return str(self.re), str(self.im)
        return repr(float(self.re)), repr(float(self.im))


def exact(re: int | Fraction | str = 0, im: int | Fraction | str = 0) -> ComplexScalar:
    """Exact scalar from integers, fractions, or rational strings."""
    return ComplexScalar(Fraction(re), Fraction(im), exact=True)


def floating(re: float | int = 0.0, im: float | int = 0.0) -> ComplexScalar:
    """Float-mode scalar."""
    return ComplexScalar(float(re), float(im), exact=False)


def from_complex(z: complex) -> ComplexScalar:
    return ComplexScalar._raw(float(z.real), float(z.imag), False)


def parse(re: str, im: str = "0", mode: Mode = "exact") -> ComplexScalar:
    """Parse a serialized ``(re, im)`` string pair.

    Raises:
        ValueError: If a component is not a valid rational (exact) or float
    """
    if mode == "exact":
        return ComplexScalar(Fraction(re), Fraction(im), exact=True)
    return ComplexScalar(float(re), float(im), exact=False)


def zero(exact_mode: bool = True) -> ComplexScalar:
    return ComplexScalar._raw(Fraction(0), Fraction(0), True) if exact_mode else \
        ComplexScalar._raw(0.0, 0.0, False)


def one(exact_mode: bool = True) -> ComplexScalar:
    return ComplexScalar._raw(Fraction(1), Fraction(0), True) if exact_mode else \
        ComplexScalar._raw(1.0, 0.0, False)


def i_power(k: int, exact_mode: bool = True) -> ComplexScalar:
    """Return ``i**k`` for any integer ``k``."""
    re, im = ((1, 0), (0, 1), (-1, 0), (0, -1))[k % 4]
    if exact_mode:
        return ComplexScalar._raw(Fraction(re), Fraction(im), True)
    return ComplexScalar._raw(float(re), float(im), False)


def as_scalar(value: Operand, exact_mode: bool | None = None) -> ComplexScalar:
    """Lift a Python number to a scalar; ints follow ``exact_mode`` (default exact)."""
    if isinstance(value, ComplexScalar):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return ComplexScalar(value, 0, exact=True if exact_mode is None else exact_mode)
    if isinstance(value, Fraction):
        return ComplexScalar(value, 0, exact=True)
    if isinstance(value, float):
        return ComplexScalar(value, 0.0, exact=False)
    if isinstance(value, complex):
        return from_complex(value)
    raise TypeError(f"not a scalar: {value!r}")


def magnitude2(value: ComplexScalar | complex | float | int | Fraction) -> Real:
    """Squared modulus of a scalar or plain Python number."""
    if isinstance(value, ComplexScalar):
        return value.abs2()
    if isinstance(value, complex):
        return value.real * value.real + value.imag * value.imag
    return value * value


def exact_sqrt(q: Fraction | int) -> Fraction | None:
    """Square root of a nonnegative rational when it is itself rational."""
    q = Fraction(q)
    if q < 0:
        return None
    num_root = math.isqrt(q.numerator)
    den_root = math.isqrt(q.denominator)
    if num_root * num_root == q.numerator and den_root * den_root == q.denominator:
        return Fraction(num_root, den_root)
    return None


I = i_power(1)
ZERO = zero()
ONE = one()
