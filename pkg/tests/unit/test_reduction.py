"""
Unit tests for the (2,2) basis reduction and the central 4x4 block.

Test Markers:
  - unit: Fast unit tests without external dependencies
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ppforms.config import ReductionSettings, ZetaSettings
from ppforms.errors import (
    BidegreeError,
    HermitianViolationError,
    NonRealFormError,
    PreconditionError,
)
from ppforms.exterior import Form, monomial
from ppforms.gallery import alpha_a
from ppforms.positivity.generators import trusted_positive
from ppforms.positivity.reduced44 import (
    Reduced44,
    aa_closed_form,
    aa_sum,
    elementary_fact,
    inequality_aa2,
    reduced44_check,
    to_reduced44,
)
from ppforms.positivity.reduction import is_reduced, reduce_basis_22, square_split
from ppforms.ppmatrix import (
    Omega6Form,
    PPMatrixForm,
    from_exterior,
    product22_coefficient,
    square_coefficient,
    to_exterior,
)
from ppforms.scalars import exact

ZETA = ZetaSettings(samples=64, restarts=2)
small = st.integers(min_value=-4, max_value=4)
nonneg = st.fractions(min_value=0, max_value=10, max_denominator=6)


@pytest.mark.unit
class TestReduceBasis:
    """Reduction zeros and the square split."""

    def test_identity(self, identity22: PPMatrixForm) -> None:
        reduction = reduce_basis_22(to_exterior(identity22))
        assert is_reduced(reduction.omega)
        assert reduction.attempts == 1
        assert square_split(reduction.omega).holds

    @pytest.mark.parametrize("index", range(6))
    def test_trusted_forms(self, index: int) -> None:
        form = trusted_positive(5, index).form
        reduction = reduce_basis_22(form, seed=5)
        W = reduction.omega
        assert is_reduced(W)
        assert square_split(W).holds
        scale = reduction.basis.determinant().abs2()
        assert product22_coefficient(W, W) * scale == square_coefficient(from_exterior(form))

    def test_zero_form(self) -> None:
        reduction = reduce_basis_22(Form.zero(4))
        assert reduction.attempts == 0
        assert reduction.pair is None

    def test_wrong_dimension(self) -> None:
        with pytest.raises(BidegreeError):
            reduce_basis_22(monomial((1, 2), (1, 2), 6))

    def test_wrong_bidegree(self) -> None:
        with pytest.raises(BidegreeError):
            reduce_basis_22(monomial((1,), (1,), 4, exact(0, 1)))

    def test_non_real(self) -> None:
        with pytest.raises(NonRealFormError):
            reduce_basis_22(monomial((1, 2), (1, 2), 4, exact(0, 1)))

    def test_attempt_budget_is_validated(self) -> None:
        with pytest.raises(ValueError):
            ReductionSettings(max_attempts=2)


@pytest.mark.unit
class TestSquareSplit:
    def test_split_of_alpha(self) -> None:
        split = square_split(alpha_a(exact(1, 1)))
        assert split.core == exact(4)
        assert split.corner == exact(6)
        assert split.total == exact(10)
        assert split.holds

    def test_split_fails_off_reduced_matrices(self) -> None:
        rows = [[1 if j == k else 0 for k in range(6)] for j in range(6)]
        rows[0][1] = rows[1][0] = 1
        rows[4][5] = rows[5][4] = 1
        W = Omega6Form.from_values(rows)
        assert not is_reduced(W)
        assert not square_split(W).holds


@pytest.mark.unit
class TestReduced44:
    """Central block conditions."""

    def test_reads_central_block(self) -> None:
        R = to_reduced44(alpha_a(3))
        assert R.lambdas() == (1, 1, 1, 1)
        assert R.a.is_zero() and R.alpha.is_zero()

    def test_complex_lambda_rejected(self) -> None:
        with pytest.raises(HermitianViolationError):
            Reduced44.from_values((exact(1, 1), 1, 1, 1))

    def test_identity_block(self) -> None:
        verdict = reduced44_check(Reduced44.from_values((1, 1, 1, 1)), settings=ZETA)
        assert not verdict.violated
        assert verdict.value == pytest.approx(1.0, abs=1e-9)

    def test_negative_lambda(self) -> None:
        verdict = reduced44_check(Reduced44.from_values((1, -1, 1, 1)), settings=ZETA)
        assert verdict.violated
        assert verdict.details["condition"] == "lambda2"
        assert verdict.value == pytest.approx(-1.0)

    def test_two_by_two_block(self) -> None:
        verdict = reduced44_check(Reduced44.from_values((1, 1, 1, 1), a=2), settings=ZETA)
        assert verdict.violated
        assert verdict.details["condition"] == "war1:a"
        assert verdict.value == pytest.approx(-1.0)

    def test_zeta_condition(self) -> None:
        """alpha = 3 passes every 2x2 block but fails at |zeta| = 1"""
        verdict = reduced44_check(Reduced44.from_values((1, 1, 1, 1), alpha=3), settings=ZETA)
        assert verdict.violated
        assert verdict.details["condition"] == "war2"
        assert verdict.value == pytest.approx(-0.5, abs=1e-6)
        z = verdict.witness
        assert abs(z[0] * z[3] + z[1] * z[2]) < 1e-9


@pytest.mark.unit
class TestSumInequalities:
    """The sum condition and its strengthened form."""

    @settings(max_examples=50, deadline=None)
    @given(st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=12, max_size=12))
    def test_closed_form(self, lams: list[int], parts: list[int]) -> None:
        values = [exact(parts[2 * k], parts[2 * k + 1]) for k in range(6)]
        R = Reduced44.from_values(tuple(lams), *values)
        assert aa_sum(R) == aa_closed_form(R)

    def test_identity(self) -> None:
        report = inequality_aa2(Reduced44.from_values((1, 1, 1, 1)))
        assert report.holds
        assert report.exact_comparison
        assert report.lhs == 0
        assert report.rhs == 4
        assert report.aa_value == 4

    def test_irrational_roots_fall_back_to_floats(self) -> None:
        report = inequality_aa2(Reduced44.from_values((2, 1, 1, 1)))
        assert not report.exact_comparison
        assert report.holds

    def test_equality_boundary(self) -> None:
        report = inequality_aa2(Reduced44.from_values((1, 1, 1, 1), a=1, d=1))
        assert report.exact_comparison
        assert report.lhs == report.rhs == 4
        assert report.holds
        assert report.aa_value == 0
        assert report.aa_holds

    def test_failure_is_reported(self) -> None:
        report = inequality_aa2(Reduced44.from_values((1, 1, 1, 1), a=2, d=2))
        assert not report.holds
        assert report.lhs == 16


@pytest.mark.unit
class TestElementaryFact:
    def test_example(self) -> None:
        assert elementary_fact(1, 1, 1, 1)

    @pytest.mark.parametrize("args", [(-1, 0, 1, 1), (2, 0, 1, 5), (1, 1, 1, 0.5)])
    def test_preconditions(self, args: tuple[float, float, float, float]) -> None:
        with pytest.raises(PreconditionError):
            elementary_fact(*args)

    @settings(max_examples=100)
    @given(nonneg, nonneg, nonneg, nonneg)
    def test_holds_under_hypotheses(self, a1: Fraction, a2: Fraction, x: Fraction,
                                    y: Fraction) -> None:
        assume(a1 <= x and a2 <= x and a1 + a2 <= x + y)
        assert elementary_fact(a1, a2, x, y)
