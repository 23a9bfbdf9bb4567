"""
Unit tests for matrix representations and product formulas.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppforms.errors import (
    DimensionMismatchError,
    HermitianViolationError,
    InvalidDegreeError,
    SingularBasisError,
)
from ppforms.exterior import covector, is_real, positivity_pairing, pullback, volume_coefficient, wedge
from ppforms.linalg import from_rows, identity
from ppforms.ppmatrix import (
    BasisChange,
    Omega6Form,
    PPMatrixForm,
    change_basis,
    frame_coordinates,
    from_exterior,
    from_omega6,
    product22_coefficient,
    product_coefficient,
    quadratic_value,
    square_coefficient,
    to_exterior,
    to_omega6,
)
from ppforms.sampling import instance_rng, random_covector, random_hermitian, random_invertible
from ppforms.scalars import exact

seeds = st.integers(min_value=0, max_value=10_000)


def random_pp(seed: int, p: int = 2, density: float = 1.0) -> PPMatrixForm:
    rng = instance_rng(seed)
    size = len(PPMatrixForm.zero(p).table)
    return PPMatrixForm(p, random_hermitian(rng, size, density=density, bound=3))


@pytest.mark.unit
class TestValidation:
    """Matrix shape and hermitian symmetry."""

    def test_non_hermitian_rejected(self) -> None:
        with pytest.raises(HermitianViolationError):
            PPMatrixForm.from_values(1, [[1, 2], [3, 4]])

    def test_complex_diagonal_rejected(self) -> None:
        with pytest.raises(HermitianViolationError):
            PPMatrixForm.from_values(1, [[exact(1, 1), 0], [0, 1]])

    def test_wrong_size_rejected(self) -> None:
        with pytest.raises(DimensionMismatchError):
            PPMatrixForm(2, identity(5))

    def test_mixed_modes_rejected(self) -> None:
        rows = identity(2)
        rows[1][1] = rows[1][1].to_float()
        with pytest.raises(HermitianViolationError):
            PPMatrixForm(1, rows)

    def test_omega_only_for_p2(self) -> None:
        with pytest.raises(InvalidDegreeError):
            to_omega6(PPMatrixForm.identity(3))


@pytest.mark.unit
class TestProducts:
    """Closed-form products against the exterior engine."""

    def test_p1_square_is_twice_the_determinant(self) -> None:
        A = PPMatrixForm.from_values(1, [[2, 1], [1, 3]])
        assert square_coefficient(A) == exact(10)
        f = to_exterior(A)
        assert volume_coefficient(wedge(f, f)) == exact(10)

    def test_identity22_square(self, identity22: PPMatrixForm) -> None:
        assert square_coefficient(identity22) == exact(6)
        W = to_omega6(identity22)
        assert product22_coefficient(W, W) == exact(6)

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_lex_formula_matches_exterior(self, seed: int) -> None:
        A, B = random_pp(seed), random_pp(seed + 1)
        expected = volume_coefficient(wedge(to_exterior(A), to_exterior(B)))
        assert product_coefficient(A, B) == expected
        assert product22_coefficient(to_omega6(A), to_omega6(B)) == expected

    @settings(max_examples=5, deadline=None)
    @given(seeds)
    def test_p3_formula_matches_exterior(self, seed: int) -> None:
        A = random_pp(seed, p=3, density=0.1)
        f = to_exterior(A)
        assert square_coefficient(A) == volume_coefficient(wedge(f, f))

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_square_is_real(self, seed: int) -> None:
        assert square_coefficient(random_pp(seed)).is_real()

    def test_mismatched_degrees(self) -> None:
        with pytest.raises(DimensionMismatchError):
            product_coefficient(PPMatrixForm.identity(1), PPMatrixForm.identity(2))


@pytest.mark.unit
class TestConversions:
    """Lex, Omega and exterior views of one form."""

    def test_to_exterior_is_real(self) -> None:
        assert is_real(to_exterior(random_pp(3)))

    def test_exterior_round_trip(self) -> None:
        A = random_pp(11)
        assert from_exterior(to_exterior(A)) == A

    def test_omega_round_trip(self) -> None:
        A = random_pp(12)
        assert from_omega6(to_omega6(A)) == A

    def test_omega_signs_applied(self) -> None:
        A = PPMatrixForm.from_values(2, [[1 if j == k else 0 for k in range(6)] for j in range(6)])
        rows = [[0] * 6 for _ in range(6)]
        rows[1][4] = 1
        rows[4][1] = 1
        B = PPMatrixForm.from_values(2, rows)
        assert to_omega6(A) == Omega6Form.identity()
        assert to_omega6(B).at(2, 5) == exact(-1)


@pytest.mark.unit
class TestBasisChange:
    """Change of coordinates."""

    def test_singular_rejected(self) -> None:
        with pytest.raises(SingularBasisError):
            BasisChange(from_rows([[1, 2], [2, 4]]))

    def test_scaled_identity(self, identity22: PPMatrixForm) -> None:
        M = from_rows([[2 if j == k else 0 for k in range(4)] for j in range(4)])
        changed = change_basis(identity22, M)
        assert square_coefficient(changed) * 256 == square_coefficient(identity22)
        assert pullback(to_exterior(changed), M) == to_exterior(identity22)

    @settings(max_examples=8, deadline=None)
    @given(seeds)
    def test_random_change(self, seed: int) -> None:
        A = random_pp(seed)
        M = BasisChange(random_invertible(instance_rng(seed, 1), 4))
        changed = change_basis(A, M)
        assert pullback(to_exterior(changed), M.matrix) == to_exterior(A)
        assert square_coefficient(changed) * M.determinant().abs2() == square_coefficient(A)

    def test_dimension_mismatch(self, identity22: PPMatrixForm) -> None:
        with pytest.raises(DimensionMismatchError):
            change_basis(identity22, identity(3))


@pytest.mark.unit
class TestFrameCoordinates:
    """Pairing as a hermitian form in the frame minors."""

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_pairing_matches_coordinates(self, seed: int) -> None:
        A = random_pp(seed)
        rng = instance_rng(seed, 2)
        gammas = [random_covector(rng, 4), random_covector(rng, 4)]
        y = frame_coordinates(gammas, 2)
        expected = quadratic_value(A, [x.conjugate() for x in y])
        assert positivity_pairing(to_exterior(A), gammas) == expected

    def test_p1_coordinates(self) -> None:
        y = frame_coordinates([covector([3, 5])], 1)
        assert y == [exact(5), exact(-3)]

    def test_wrong_count(self) -> None:
        with pytest.raises(DimensionMismatchError):
            frame_coordinates([covector([1, 0, 0, 0])], 2)


@pytest.mark.unit
class TestQuadraticValue:
    def test_hermitian_value_is_real(self) -> None:
        A = random_pp(5)
        z = [exact(1, 2), 0, exact(-1), exact(0, 3), 1, exact(2, -1)]
        assert quadratic_value(A, z).is_real()

    def test_wrong_length(self) -> None:
        with pytest.raises(DimensionMismatchError):
            quadratic_value(Omega6Form.identity(), [1, 2, 3])
