"""
Unit tests for exact and float complex scalars.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppforms.errors import ScalarModeError
from ppforms.scalars import (
    ComplexScalar,
    as_scalar,
    exact,
    exact_sqrt,
    floating,
    i_power,
    parse,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussian = st.builds(exact, fractions, fractions)


@pytest.mark.unit
class TestExactArithmetic:
    """Gaussian-rational arithmetic is exact."""

    def test_multiplication(self) -> None:
        assert exact(1, 2) * exact(3, -1) == exact(5, 5)

    def test_division_is_exact(self) -> None:
        q = exact(1) / exact(3)
        assert q.re == Fraction(1, 3)
        assert q * 3 == exact(1)

    def test_division_by_zero(self) -> None:
        with pytest.raises(ZeroDivisionError):
            exact(1) / exact(0)

    def test_integers_are_mode_neutral(self) -> None:
        assert exact(1) + 1 == exact(2)
        assert floating(1.0) + 1 == floating(2.0)
        assert 3 - exact(1) == exact(2)

    def test_powers_of_i_cycle(self) -> None:
        assert i_power(2) == exact(-1)
        assert i_power(-1) == exact(0, -1)
        for k in range(-4, 8):
            assert i_power(k) == i_power(k + 4)

    @given(gaussian, gaussian)
    def test_conjugation_is_multiplicative(self, x: ComplexScalar, y: ComplexScalar) -> None:
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()

    @given(gaussian, gaussian)
    def test_modulus_is_multiplicative(self, x: ComplexScalar, y: ComplexScalar) -> None:
        assert (x * y).abs2() == x.abs2() * y.abs2()


@pytest.mark.unit
class TestModeSeparation:
    """Exact and float scalars never mix silently."""

    def test_mixed_addition_raises(self) -> None:
        with pytest.raises(ScalarModeError):
            exact(1) + floating(1.0)

    def test_float_operand_on_exact_raises(self) -> None:
        with pytest.raises(ScalarModeError):
            exact(1) * 0.5

    def test_fraction_operand_on_float_raises(self) -> None:
        with pytest.raises(ScalarModeError):
            floating(1.0) + Fraction(1, 2)

    def test_float_component_for_exact_scalar_raises(self) -> None:
        with pytest.raises(ScalarModeError):
            ComplexScalar(0.5, 0, exact=True)

    def test_bool_is_rejected(self) -> None:
        with pytest.raises(TypeError):
            exact(1) + True

    def test_equal_values_in_different_modes_differ(self) -> None:
        assert exact(1) != floating(1.0)
        assert exact(1).to_float() == floating(1.0)

    def test_as_scalar_follows_requested_mode(self) -> None:
        assert as_scalar(2).exact
        assert not as_scalar(2, exact_mode=False).exact
        assert not as_scalar(0.5).exact
        assert as_scalar(1j) == floating(0.0, 1.0)


@pytest.mark.unit
class TestSerializationHelpers:
    """String forms used by the JSON files."""

    def test_exact_strings(self) -> None:
        assert exact(Fraction(1, 2), -3).to_strings() == ("1/2", "-3")

    def test_parse_exact(self) -> None:
        assert parse("1/3", "2") == exact(Fraction(1, 3), 2)

    def test_parse_float(self) -> None:
        value = parse("0.25", "-1.5", "float")
        assert not value.exact
        assert complex(value) == complex(0.25, -1.5)

    def test_parse_rejects_garbage(self) -> None:
        with pytest.raises(ValueError):
            parse("one")

    def test_str(self) -> None:
        assert str(exact(-4)) == "-4"
        assert str(exact(0, 2)) == "2i"
        assert str(exact(1, -2)) == "1-2i"


@pytest.mark.unit
class TestExactSqrt:
    """Rational square roots."""

    @pytest.mark.parametrize(
        "q,root",
        [(Fraction(9, 4), Fraction(3, 2)), (0, Fraction(0)), (16, Fraction(4))],
    )
    def test_perfect_squares(self, q: Fraction, root: Fraction) -> None:
        assert exact_sqrt(q) == root

    @pytest.mark.parametrize("q", [2, Fraction(1, 3), -1])
    def test_irrational_or_negative(self, q: Fraction) -> None:
        assert exact_sqrt(q) is None
