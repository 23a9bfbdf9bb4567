"""Acceptance suites behind ``ppforms verify``.

Each suite checks one family of identities or theorems. Randomized suites run
``instances`` independent instances drawn from ``(seed, index)``; the first
failure stops the suite and is reported as a replay document that
``ppforms verify --replay FILE`` reruns bit-exactly.
"""

from __future__ import annotations

import time
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from loguru import logger

from .combinatorics import enumerate_multiindices, epsilon, section1_basis
from .common import log_success
from .config import PPFormsSettings
from .errors import PPFormsError, TheoremViolationError
from .exterior import Form, pullback, volume_coefficient, wedge
from .gallery import (
    alpha_a,
    alpha_product_expected,
    build_entry,
    list_entries,
    prop_bound_check,
    prop_witness,
    thmp_bound_margins,
    thmp_form_p3,
    verify_entry,
)
from .linalg import to_numpy
from .positivity.dinew import dinew_residual, dinew_test, minors_map, quadric_sample
from .positivity.frames import sample_frames_test
from .positivity.generators import TrustedPositive, trusted_positive
from .positivity.plucker import (
    plucker_embed,
    plucker_quadric_residual,
    plucker_quadric_sample,
    plucker_to_omega,
)
from .positivity.reduction import is_reduced, reduce_basis_22, square_split
from .positivity.theorems import verify_reduced_pipeline, verify_theorem1
from .ppmatrix import (
    BasisChange,
    PPMatrixForm,
    change_basis,
    from_exterior,
    product22_coefficient,
    product_coefficient,
    square_coefficient,
    to_exterior,
    to_omega6,
)
from .sampling import (
    instance_rng,
    random_covector,
    random_exact_scalar,
    random_hermitian,
    random_invertible,
)
from .scalars import exact
from .schemas import ReplayFile
from .serialization import form_from_json, form_to_json

PROP_NONNEGATIVE = (0, 1, 2)
PROP_NEGATIVE = (2.5, 3.0)
THMP_PARAMETERS = (2, 1, 3)


@dataclass
class SuiteContext:
    settings: PPFormsSettings
    seed: int

    @property
    def tol(self) -> float:
        return self.settings.tolerances.decision


@dataclass(frozen=True)
class Suite:
    """One acceptance suite.

    Suites with ``generate`` draw a trusted positive form per instance and
    check it with ``check_form``; the others run ``run_instance``.
    """

    name: str
    description: str
    counted: bool
    run_instance: Callable[[SuiteContext, int], None] | None = None
    generate: Callable[[SuiteContext, int], TrustedPositive] | None = None
    check_form: Callable[[SuiteContext, Form], None] | None = None


@dataclass
class SuiteResult:
    name: str
    passed: bool
    instances: int
    seconds: float
    failure: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "suite": self.name,
            "passed": self.passed,
            "instances": self.instances,
            "seconds": round(self.seconds, 3),
        }
        if self.details:
            data["details"] = self.details
        if self.failure is not None:
            data["failure"] = self.failure
        return data


def _fail(message: str, **payload: Any) -> None:
    raise TheoremViolationError(message, payload=payload)


# --- suites ----------------------------------------------------------------


def _eps(ctx: SuiteContext, index: int) -> None:
    for p in range(1, 6):
        table = enumerate_multiindices(p, 2 * p)
        for k, J in enumerate(table.entries):
            partner = table.complement_position(k)
            assert partner is not None
            if table.signs[k] * table.signs[partner] != (-1) ** p:
                _fail("sign law broken", p=p, J=J.to_json())
            if epsilon(J.entries, 2 * p) != table.signs[k]:
                _fail("table sign disagrees with epsilon", p=p, J=J.to_json())


def _omega(ctx: SuiteContext, index: int) -> None:
    basis = [Form(4, {(e.multiindex.entries, ()): e.sign}) for e in section1_basis()]
    volume = Form(4, {((1, 2, 3, 4), ()): 1})
    for j, Oj in enumerate(basis, start=1):
        for k, Ok in enumerate(basis, start=1):
            product = wedge(Oj, Ok)
            expected = volume if k == 7 - j else Form.zero(4)
            if product != expected:
                _fail("Omega product table broken", j=j, k=k, product=form_to_json(product))


def _oracle(ctx: SuiteContext, index: int) -> None:
    rng = instance_rng(ctx.seed, index)
    p = 2 if index % 2 == 0 else 3
    size = len(enumerate_multiindices(p, 2 * p))
    density = 1.0 if p == 2 else 0.15
    A = PPMatrixForm(p, random_hermitian(rng, size, density=density, bound=3))
    B = PPMatrixForm(p, random_hermitian(rng, size, density=density, bound=3))
    fa, fb = to_exterior(A), to_exterior(B)
    via_matrix = product_coefficient(A, B)
    via_exterior = volume_coefficient(wedge(fa, fb))
    if via_matrix != via_exterior:
        _fail("matrix product disagrees with the exterior engine", p=p, index=index,
              matrix=str(via_matrix), exterior=str(via_exterior))
    if square_coefficient(A) != volume_coefficient(wedge(fa, fa)):
        _fail("square formula disagrees with the exterior engine", p=p, index=index)
    if p != 2:
        return
    if product22_coefficient(to_omega6(A), to_omega6(B)) != via_matrix:
        _fail("Omega-basis product disagrees with the lex formula", index=index)
    M = BasisChange(random_invertible(rng, 4))
    changed = change_basis(A, M)
    if pullback(to_exterior(changed), M.matrix) != fa:
        _fail("basis change disagrees with coordinate substitution", index=index)
    scale = M.determinant().abs2()
    if square_coefficient(changed) * scale != square_coefficient(A):
        _fail("square does not scale by |det M|^2", index=index)


def _alpha(ctx: SuiteContext, index: int) -> None:
    if index == 0:
        value = product22_coefficient(alpha_a(2), alpha_a(-2))
        if value != exact(-2):
            _fail("alpha_2 ∧ alpha_-2 is not -2 dV", value=str(value))
    rng = instance_rng(ctx.seed, index)
    a, b = random_exact_scalar(rng), random_exact_scalar(rng)
    value = product22_coefficient(alpha_a(a), alpha_a(b))
    expected = alpha_product_expected(a, b)
    if value != expected:
        _fail("alpha product formula broken", a=str(a), b=str(b), value=str(value),
              expected=str(expected))


def _unit_witness(a: float) -> list[complex]:
    z = np.array([complex(x) for x in prop_witness(a)])
    return list(z / np.linalg.norm(z))


def _prop(ctx: SuiteContext, index: int) -> None:
    samples = ctx.settings.samples
    for a in PROP_NONNEGATIVE:
        verdict = dinew_test(alpha_a(a), samples=samples, seed=ctx.seed, tol=ctx.tol,
                             settings=ctx.settings.dinew)
        if verdict.violated or verdict.value < -ctx.tol:
            _fail("positive alpha_a reported as violated", a=a, verdict=verdict.to_json())
    for a in PROP_NEGATIVE:
        verdict = dinew_test(alpha_a(a), samples=samples, seed=ctx.seed, tol=ctx.tol,
                             settings=ctx.settings.dinew, extra_points=[_unit_witness(a)])
        expected = 2 * a * (2 - a)
        scaled = verdict.details.get("scaled_value", float("inf"))
        if not verdict.violated or abs(scaled - expected) > ctx.tol * max(1.0, abs(expected)):
            _fail("negative alpha_a not certified at the expected value", a=a,
                  expected=expected, verdict=verdict.to_json())
    points = quadric_sample(ctx.seed, min(samples, 2000))
    for a in PROP_NONNEGATIVE + PROP_NEGATIVE:
        for z in points:
            if not prop_bound_check(a, list(z)):
                _fail("lower bound for alpha_a fails", a=a, z=[repr(complex(x)) for x in z])


def _plucker(ctx: SuiteContext, index: int) -> None:
    rng = instance_rng(ctx.seed, index)
    b, c = random_covector(rng, 4), random_covector(rng, 4)
    z = minors_map(list(b.coefficients), list(c.coefficients))
    if not dinew_residual(z).is_zero():
        _fail("minors map leaves the quadric", index=index)
    if plucker_to_omega(plucker_embed([b, c])) != z:
        _fail("Plücker relabeling disagrees with the minors map", index=index)
    frame = [random_covector(rng, 6) for _ in range(3)]
    if not plucker_quadric_residual(plucker_embed(frame)).is_zero():
        _fail("p=3 Plücker coordinates leave the quadric", index=index,
              frame=[g.to_json() for g in frame])


def _thmp(ctx: SuiteContext, index: int) -> None:
    lam, mu, a = THMP_PARAMETERS
    A = thmp_form_p3(lam, mu, a)
    square = square_coefficient(A)
    if square != exact(-4):
        _fail("p=3 square is not -4", square=str(square))
    samples = ctx.settings.samples
    verdict = sample_frames_test(to_exterior(A), samples=samples, seed=ctx.seed, tol=ctx.tol)
    if verdict.violated:
        _fail("frame search found a negative pairing for the p=3 form", verdict=verdict.to_json())
    Z = plucker_quadric_sample(samples, seed=ctx.seed)
    margins = thmp_bound_margins(lam, mu, a, Z)
    if margins.min() < -ctx.tol:
        k = int(np.argmin(margins))
        _fail("p=3 lower bound fails on the quadric", margin=float(margins[k]),
              z=[repr(complex(x)) for x in Z[k]])
    values = np.real(np.einsum("ij,jk,ik->i", Z.conj(), to_numpy(A.entries), Z))
    if values.min() < -ctx.tol:
        _fail("p=3 form is negative on the quadric", value=float(values.min()))


def _lift(ctx: SuiteContext, index: int) -> None:
    entry = build_entry("thmp_lift", {"p": "4"})
    for check in verify_entry(entry):
        if not check.holds:
            _fail("lifted square disagrees with its closed form", check=check.to_json())
    square = entry.expected["square_exterior"]
    if square.re >= 0:
        _fail("lifted square is not negative", square=str(square))


def _gallery(ctx: SuiteContext, index: int) -> None:
    for info in list_entries():
        entry = build_entry(info["name"])
        for check in verify_entry(entry):
            if not check.holds:
                _fail("gallery value not reproduced", entry=info["name"], check=check.to_json())


def _check_thm1(ctx: SuiteContext, form: Form) -> None:
    verify_theorem1(form)


def _check_lemma(ctx: SuiteContext, form: Form) -> None:
    reduction = reduce_basis_22(form, seed=ctx.seed, settings=ctx.settings.reduction)
    if not is_reduced(reduction.omega):
        _fail("reduced matrix misses a required zero", form=form_to_json(form))
    if not square_split(reduction.omega).holds:
        _fail("square split identity fails", form=form_to_json(form))
    if form.exact:
        before = square_coefficient(from_exterior(form))
        after = product22_coefficient(reduction.omega, reduction.omega)
        if after * reduction.basis.determinant().abs2() != before:
            _fail("reduced square does not match the original", form=form_to_json(form))


def _check_thm4(ctx: SuiteContext, form: Form) -> None:
    verify_reduced_pipeline(form, seed=ctx.seed, settings=ctx.settings)


def _trusted(ctx: SuiteContext, index: int) -> TrustedPositive:
    return trusted_positive(ctx.seed, index)


SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("eps", "sign law eps_J eps_J' = (-1)^p for p <= 5", False, run_instance=_eps),
        Suite("omega", "Omega_j ∧ Omega_k is the volume iff k = 7-j", False, run_instance=_omega),
        Suite("oracle", "matrix formulas against the exterior engine", True, run_instance=_oracle),
        Suite("alpha", "alpha_a ∧ alpha_b = 2(3 + Re(a conj(b))) dV", True, run_instance=_alpha),
        Suite("prop", "alpha_a positive iff |a| <= 2, with certified witnesses", False,
              run_instance=_prop),
        Suite("lemma", "basis reduction zeros and square split", True,
              generate=_trusted, check_form=_check_lemma),
        Suite("thm4", "central block conditions and sum inequalities", True,
              generate=_trusted, check_form=_check_thm4),
        Suite("thm1", "squares of positive (2,2)-forms are nonnegative", True,
              generate=_trusted, check_form=_check_thm1),
        Suite("thmp", "positive (3,3)-form with square -4", False, run_instance=_thmp),
        Suite("lift", "negative square survives the lift to p = 4", False, run_instance=_lift),
        Suite("plucker", "minors and Plücker coordinates satisfy their quadrics", True,
              run_instance=_plucker),
        Suite("gallery", "every gallery entry reproduces its expected values", False,
              run_instance=_gallery),
    )
}
SUITE_NAMES: tuple[str, ...] = (*SUITES, "all")


def _replay_document(suite: Suite, ctx: SuiteContext, index: int | None, error: Exception,
                     trusted: TrustedPositive | None) -> dict[str, Any]:
    payload = dict(getattr(error, "payload", {}) or {})
    payload.pop("form", None)
    replay = ReplayFile(
        suite=suite.name,
        seed=ctx.seed,
        index=index,
        recipe=trusted.recipe if trusted else None,
        message=str(error),
        form=form_to_json(trusted.form) if trusted else None,  # type: ignore[arg-type]
        payload=payload,
    )
    return replay.model_dump(mode="json", exclude_none=True)


def _check(suite: Suite, ctx: SuiteContext, index: int, trusted: TrustedPositive | None) -> None:
    if trusted is not None:
        assert suite.check_form is not None
        suite.check_form(ctx, trusted.form)
    else:
        assert suite.run_instance is not None
        suite.run_instance(ctx, index)


def run_suite(name: str, settings: PPFormsSettings, seed: int | None = None,
              instances: int | None = None) -> SuiteResult:
    """Run one suite; the first failing instance ends it.

    Raises:
        PPFormsError: Unknown suite name
    """
    if name not in SUITES:
        raise PPFormsError(f"unknown suite {name!r}; expected one of {list(SUITE_NAMES)}")
    suite = SUITES[name]
    ctx = SuiteContext(settings, settings.seed if seed is None else seed)
    count = 1
    if suite.counted:
        count = instances or settings.suites.instances.get(name, 1)
    logger.info(f"Running suite {name}", instances=count, seed=ctx.seed)

    start = time.perf_counter()
    for index in range(count):
        trusted = None
        try:
            if suite.generate is not None:
                trusted = suite.generate(ctx, index)
            _check(suite, ctx, index, trusted)
        except PPFormsError as e:
            elapsed = time.perf_counter() - start
            logger.error(f"Suite {name} failed at instance {index}: {e}")
            failure = _replay_document(suite, ctx, index if suite.counted else None, e, trusted)
            return SuiteResult(name, False, index + 1, elapsed, failure)

    elapsed = time.perf_counter() - start
    log_success(f"Suite {name} passed ({count} instances, {elapsed:.1f}s)")
    return SuiteResult(name, True, count, elapsed)


def run_suites(name: str, settings: PPFormsSettings, seed: int | None = None,
               instances: int | None = None) -> list[SuiteResult]:
    """Run ``name``, or every suite in order for ``"all"``."""
    names = list(SUITES) if name == "all" else [name]
    return [run_suite(n, settings, seed, instances) for n in names]


def run_replay(replay: ReplayFile, settings: PPFormsSettings) -> SuiteResult:
    """Rerun the instance stored in a replay document.

    Form-based suites check the stored form; the others regenerate instance
    ``index`` from the stored seed.
    """
    if replay.suite not in SUITES:
        raise PPFormsError(f"replay names unknown suite {replay.suite!r}")
    suite = SUITES[replay.suite]
    ctx = SuiteContext(settings, replay.seed)
    logger.info(f"Replaying suite {suite.name}", seed=replay.seed, index=replay.index)
    start = time.perf_counter()
    index = replay.index or 0
    trusted = None
    try:
        if replay.form is not None and suite.check_form is not None:
            form = form_from_json(replay.form.model_dump())
            trusted = TrustedPositive(form, replay.recipe or "decomposable",  # type: ignore[arg-type]
                                      replay.seed, index)
        elif suite.generate is not None:
            trusted = suite.generate(ctx, index)
        _check(suite, ctx, index, trusted)
    except PPFormsError as e:
        failure = _replay_document(suite, ctx, replay.index, e, trusted)
        return SuiteResult(suite.name, False, 1, time.perf_counter() - start, failure)
    return SuiteResult(suite.name, True, 1, time.perf_counter() - start)


def describe_suites() -> list[dict[str, Any]]:
    return [{"suite": s.name, "description": s.description, "counted": s.counted}
            for s in SUITES.values()]

