"""Executable checks of the square-positivity results for (2,2)-forms.

:func:`verify_theorem1` computes the square of a positive (2,2)-form on C^4 by
two matrix formulas and the exterior engine, and fails loudly if it is negative.
:func:`verify_reduced_pipeline` runs the reduction, the central-block
conditions and both sum inequalities on one form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from loguru import logger

from ..config import PPFormsSettings
from ..errors import BidegreeError, TheoremViolationError
from ..exterior import Form, volume_coefficient, wedge
from ..ppmatrix import (
    Omega6Form,
    PPMatrixForm,
    from_exterior,
    from_omega6,
    product22_coefficient,
    square_coefficient,
    to_exterior,
    to_omega6,
)
from ..scalars import ComplexScalar
from ..serialization import form_to_json
from .reduced44 import InequalityReport, inequality_aa2, reduced44_check, to_reduced44
from .reduction import SquareSplit, reduce_basis_22, square_split
from .verdict import PositivityVerdict


def _payload(alpha: Form, **extra: Any) -> dict[str, Any]:
    return {"form": form_to_json(alpha), **extra}


def verify_theorem1(alpha: Form | PPMatrixForm | Omega6Form, tol: float = 1e-9) -> ComplexScalar:
    """Square coefficient of a positive (2,2)-form, required to be nonnegative.

    The Omega-basis product, the lex-basis signed sum and the volume
    coefficient of ``alpha ∧ alpha`` must agree; in exact mode the result must be
    ``>= 0`` exactly, in float mode ``>= -tol``.

    Raises:
        BidegreeError: Input is not a (2,2)-form on C^4
        TheoremViolationError: The three paths disagree or the square is negative
    """
    if isinstance(alpha, Omega6Form):
        lex = from_omega6(alpha)
    elif isinstance(alpha, PPMatrixForm):
        lex = alpha
    else:
        if alpha.n != 4:
            raise BidegreeError(f"expected a form on C^4, got C^{alpha.n}")
        lex = from_exterior(alpha)
    if lex.p != 2:
        raise BidegreeError(f"expected p=2, got p={lex.p}")
    form = alpha if isinstance(alpha, Form) else to_exterior(lex)

    omega = to_omega6(lex)
    via_omega = product22_coefficient(omega, omega)
    via_lex = square_coefficient(lex)
    via_exterior = volume_coefficient(wedge(form, form))
    if lex.exact:
        agree = via_omega == via_lex == via_exterior
        negative = via_omega.re < 0 or via_omega.im != 0
    else:
        scale = tol * max(1.0, abs(via_lex))
        agree = via_omega.is_close(via_lex, scale) and via_exterior.is_close(via_lex, scale)
        negative = via_omega.re < -tol
    if not agree or negative:
        raise TheoremViolationError(
            "square of a positive (2,2)-form is negative" if agree
            else "square formulas disagree",
            payload=_payload(form, omega=str(via_omega), lex=str(via_lex),
                            exterior=str(via_exterior)),
        )
    return via_omega


@dataclass(frozen=True)
class PipelineReport:
    """Outcome of the reduced pipeline on one positive form."""

    attempts: int
    split: SquareSplit
    verdict: PositivityVerdict
    inequality: InequalityReport

    def to_json(self) -> dict[str, Any]:
        return {
            "attempts": self.attempts,
            "split": self.split.to_json(),
            "verdict": self.verdict.to_json(),
            "inequality": self.inequality.to_json(),
        }


def verify_reduced_pipeline(
    alpha: Form, seed: int = 0, settings: PPFormsSettings | None = None
) -> PipelineReport:
    """Reduce ``alpha`` and check the central-block conditions and inequalities.

    ``alpha`` must be positive; any failed condition is reported as a
    :class:`TheoremViolationError` carrying the instance.
    """
    settings = settings or PPFormsSettings()
    reduction = reduce_basis_22(alpha, seed=seed, settings=settings.reduction)
    split = square_split(reduction.omega)
    if not split.holds:
        raise TheoremViolationError("square split identity failed", payload=_payload(alpha))

    R = to_reduced44(reduction.omega)
    verdict = reduced44_check(R, seed=seed, tol=settings.tolerances.decision, settings=settings.zeta)
    if verdict.violated:
        raise TheoremViolationError(
            "central block of a positive form fails its quadric conditions",
            payload=_payload(alpha, reduced=R.to_json(), verdict=verdict.to_json()),
        )
    report = inequality_aa2(R, tol=settings.tolerances.residual)
    if not report.holds:
        raise TheoremViolationError(
            "strengthened inequality fails on a reduced positive form",
            payload=_payload(alpha, reduced=R.to_json(), inequality=report.to_json()),
        )
    logger.trace("Reduced pipeline passed", seed=seed, lhs=report.lhs, rhs=report.rhs)
    return PipelineReport(reduction.attempts, split, verdict, report)
