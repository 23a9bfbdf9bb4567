"""Command-line interface for ppforms.

Usage:
    ppforms square FILE
    ppforms wedge FILE_A FILE_B [--ambient N] [--output FILE]
    ppforms check FILE [--method frames|dinew|reduced] [--samples N] [--seed S] [--tol T]
    ppforms reduce FILE [--seed S]
    ppforms verify [--suite NAME] [--instances N] [--seed S] [--replay FILE]
    ppforms gallery list
    ppforms gallery build NAME [--param key=value ...] [--output FILE]

Every command prints a JSON payload on stdout and logs to stderr.

Exit codes:
    0: Success, or no violation found
    1: Violation found, or a theorem check failed (payload carries the witness)
    2: Invalid input or usage
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import yaml
from loguru import logger
from pydantic import ValidationError

from .common import configure_logging
from .config import PPFormsSettings, load_settings
from .errors import BidegreeError, PPFormsError, SearchFailureError, TheoremViolationError
from .exterior import Form, embed, volume_coefficient, wedge
from .gallery import build_entry, list_entries
from .positivity.dinew import dinew_test
from .positivity.frames import sample_frames_test
from .positivity.reduced44 import reduced44_check, to_reduced44
from .positivity.reduction import REDUCED_ZEROS, is_reduced, reduce_basis_22, square_split
from .ppmatrix import (
    Omega6Form,
    PPMatrixForm,
    from_exterior,
    from_omega6,
    product22_coefficient,
    product_coefficient,
    square_coefficient,
    to_exterior,
    to_omega6,
)
from .scalars import ComplexScalar
from .serialization import (
    Document,
    dumps,
    form_to_json,
    load_document,
    load_replay,
    matrix_to_json,
    save_document,
)
from .suites import SUITE_NAMES, run_replay, run_suites

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2

# forms with more terms skip the generic exterior square in ``square``
EXTERIOR_TERM_LIMIT = 600


@dataclass
class CommandResult:
    """Exit code plus the JSON payload printed on stdout."""

    exit_code: int
    payload: dict[str, Any]


def _scalar(value: ComplexScalar) -> dict[str, Any]:
    data: dict[str, Any] = {"coefficient": str(value), "float": float(value.re)}
    if not value.is_zero() and value.im != 0:
        data["imag"] = float(value.im)
    return data


def _load(path: str, float_mode: bool) -> Document:
    doc = load_document(path)
    return doc.to_float() if float_mode else doc


def _as_form(doc: Document) -> Form:
    if isinstance(doc, Omega6Form):
        return to_exterior(from_omega6(doc))
    if isinstance(doc, PPMatrixForm):
        return to_exterior(doc)
    return doc


def _as_lex(doc: Document) -> PPMatrixForm:
    if isinstance(doc, Omega6Form):
        return from_omega6(doc)
    if isinstance(doc, PPMatrixForm):
        return doc
    return from_exterior(doc)


def _as_omega(doc: Document) -> Omega6Form:
    if isinstance(doc, Omega6Form):
        return doc
    lex = _as_lex(doc)
    if lex.p != 2:
        raise BidegreeError(f"this method needs a (2,2)-form on C^4, got p={lex.p}")
    return to_omega6(lex)


def _agree(values: list[ComplexScalar]) -> bool:
    first = values[0]
    if all(v.exact for v in values):
        return all(v == first for v in values)
    return all(v.to_float().is_close(first.to_float(), 1e-9 * max(1.0, abs(first))) for v in values)


def cmd_square(args: argparse.Namespace, settings: PPFormsSettings) -> CommandResult:
    """Square coefficient by the matrix formula and, when cheap, the exterior engine."""
    doc = _load(args.file, args.float)
    lex = _as_lex(doc)
    paths: dict[str, ComplexScalar] = {"matrix": square_coefficient(lex)}
    if lex.p == 2:
        omega = _as_omega(doc)
        paths["omega"] = product22_coefficient(omega, omega)
    form = _as_form(doc)
    if len(form) <= EXTERIOR_TERM_LIMIT:
        paths["exterior"] = volume_coefficient(wedge(form, form))
    value = paths["matrix"]
    payload = {
        "p": lex.p,
        "n": lex.n,
        "coefficient": str(value),
        "float": float(value.re),
        "paths": {name: str(v) for name, v in paths.items()},
        "agree": _agree(list(paths.values())),
    }
    return CommandResult(EXIT_OK if payload["agree"] else EXIT_VIOLATION, payload)


def cmd_wedge(args: argparse.Namespace, settings: PPFormsSettings) -> CommandResult:
    """Wedge two forms; top-degree results are reported as a volume coefficient."""
    first, second = _load(args.file_a, args.float), _load(args.file_b, args.float)
    if isinstance(first, Omega6Form) and isinstance(second, Omega6Form) and args.ambient is None:
        value = product22_coefficient(first, second)
        return CommandResult(EXIT_OK, {**_scalar(value), "path": "omega"})

    fa, fb = _as_form(first), _as_form(second)
    if args.ambient is not None:
        fa, fb = embed(fa, args.ambient), embed(fb, args.ambient)
    product = wedge(fa, fb)
    payload: dict[str, Any] = {"n": product.n}
    degree = product.bidegree()
    if degree == (product.n, product.n) or (product.is_zero() and not args.output):
        value = volume_coefficient(product)
        payload.update({**_scalar(value), "path": "exterior"})
        if (isinstance(first, PPMatrixForm) and isinstance(second, PPMatrixForm)
                and first.p == second.p and args.ambient is None):
            payload["matrix"] = str(product_coefficient(first, second))
    else:
        payload["bidegree"] = list(degree) if degree else None
        payload["form"] = form_to_json(product)
    if args.output:
        payload["output"] = str(save_document(product, args.output))
    return CommandResult(EXIT_OK, payload)


def cmd_check(args: argparse.Namespace, settings: PPFormsSettings) -> CommandResult:
    """Search for a positivity violation with the chosen method."""
    doc = _load(args.file, args.float)
    tol = settings.tolerances.decision
    logger.info(f"Checking positivity with method {args.method}, seed {settings.seed}")
    if args.method == "frames":
        verdict = sample_frames_test(_as_form(doc), samples=settings.samples, seed=settings.seed,
                                     tol=tol, workers=args.workers)
    elif args.method == "dinew":
        verdict = dinew_test(_as_omega(doc), samples=settings.samples, seed=settings.seed,
                             tol=tol, settings=settings.dinew)
    else:
        form = _as_form(doc)
        if form.n != 4:
            raise BidegreeError(f"the reduced method needs a (2,2)-form on C^4, got C^{form.n}")
        reduction = reduce_basis_22(form, seed=settings.seed, settings=settings.reduction)
        verdict = reduced44_check(to_reduced44(reduction.omega), seed=settings.seed, tol=tol,
                                  settings=settings.zeta)
    if verdict.violated:
        logger.warning(f"Violation found: value {verdict.value:.6g}")
        if "scaled_value" in verdict.details:
            logger.warning(f"Value at the witness scale: {verdict.details['scaled_value']:.6g}")
    return CommandResult(EXIT_VIOLATION if verdict.violated else EXIT_OK, verdict.to_json())


def cmd_reduce(args: argparse.Namespace, settings: PPFormsSettings) -> CommandResult:
    """Reduce a (2,2)-form on C^4 and report the zeros and the square split."""
    form = _as_form(_load(args.file, args.float))
    logger.info(f"Reducing basis, seed {settings.seed}")
    reduction = reduce_basis_22(form, seed=settings.seed, settings=settings.reduction)
    W = reduction.omega
    split = square_split(W)
    payload = {
        "attempts": reduction.attempts,
        "basis": [[list(x.to_strings()) for x in row] for row in reduction.basis.matrix],
        "omega": matrix_to_json(W),
        "zeros": {f"a{j}{k}": str(W.at(j, k)) for j, k in REDUCED_ZEROS},
        "reduced": is_reduced(W),
        "split": split.to_json(),
        "split_holds": split.holds,
    }
    ok = payload["split_holds"] and (payload["reduced"] or not W.exact)
    return CommandResult(EXIT_OK if ok else EXIT_VIOLATION, payload)


def cmd_verify(args: argparse.Namespace, settings: PPFormsSettings) -> CommandResult:
    """Run acceptance suites, or replay a recorded failure."""
    logger.info(f"Verifying with seed {settings.seed}")
    if args.replay:
        results = [run_replay(load_replay(args.replay), settings)]
    else:
        results = run_suites(args.suite, settings, seed=settings.seed, instances=args.instances)
    passed = all(r.passed for r in results)
    payload = {
        "seed": settings.seed,
        "passed": passed,
        "results": [r.to_json() for r in results],
    }
    return CommandResult(EXIT_OK if passed else EXIT_VIOLATION, payload)


def _parse_params(items: Sequence[str] | None) -> dict[str, str]:
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ValueError(f"--param expects key=value, got {item!r}")
        params[key.strip()] = value.strip()
    return params


def cmd_gallery(args: argparse.Namespace, settings: PPFormsSettings) -> CommandResult:
    if args.gallery_command == "list":
        return CommandResult(EXIT_OK, {"entries": list_entries()})
    entry = build_entry(args.name, _parse_params(args.param))
    payload = entry.to_json()
    if args.output:
        payload["output"] = str(save_document(entry.form, args.output))
    return CommandResult(EXIT_OK, payload)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Settings YAML (default: config/ppforms.yaml)")
    common.add_argument("--log-level", help="Loguru level for stderr output")
    common.add_argument("--float", action="store_true", help="Convert inputs to double precision")
    common.add_argument("--samples", type=int, help="Random samples (default 20000)")
    common.add_argument("--seed", type=int, help="Master seed (default 0)")
    common.add_argument("--tol", type=float, help="Decision tolerance (default 1e-6)")

    parser = argparse.ArgumentParser(
        prog="ppforms", description="Exact and numeric tools for positive (p,p)-forms"
    )
    subparsers = parser.add_subparsers(dest="command", required=True, help="Commands")

    square = subparsers.add_parser("square", parents=[common], help="Square coefficient of a form")
    square.add_argument("file", help="Form or matrix JSON file")
    square.set_defaults(handler=cmd_square)

    wedge_p = subparsers.add_parser("wedge", parents=[common], help="Wedge two forms")
    wedge_p.add_argument("file_a")
    wedge_p.add_argument("file_b")
    wedge_p.add_argument("--ambient", type=int, help="Embed both forms into C^N first")
    wedge_p.add_argument("--output", help="Write the product form to this file")
    wedge_p.set_defaults(handler=cmd_wedge)

    check = subparsers.add_parser("check", parents=[common], help="Search for a negative pairing")
    check.add_argument("file")
    check.add_argument("--method", choices=["frames", "dinew", "reduced"], default="frames")
    check.add_argument("--workers", type=int, default=1, help="Threads for frame sampling")
    check.set_defaults(handler=cmd_check)

    reduce_p = subparsers.add_parser("reduce", parents=[common], help="Reduce a (2,2)-form basis")
    reduce_p.add_argument("file")
    reduce_p.set_defaults(handler=cmd_reduce)

    verify = subparsers.add_parser("verify", parents=[common], help="Run acceptance suites")
    verify.add_argument("--suite", choices=SUITE_NAMES, default="all")
    verify.add_argument("--instances", type=int, help="Instances per randomized suite")
    verify.add_argument("--replay", help="Rerun a failure document")
    verify.set_defaults(handler=cmd_verify)

    gallery = subparsers.add_parser("gallery", parents=[common], help="Named forms")
    gallery_sub = gallery.add_subparsers(dest="gallery_command", required=True)
    gallery_sub.add_parser("list", help="List gallery entries")
    build = gallery_sub.add_parser("build", help="Build one entry")
    build.add_argument("name")
    build.add_argument("--param", action="append", help="Parameter as key=value (repeatable)")
    build.add_argument("--output", help="Write the entry's form document to this file")
    gallery.set_defaults(handler=cmd_gallery)

    return parser


def run(argv: Sequence[str] | None = None) -> CommandResult:
    """Parse ``argv`` and execute the command, mapping errors to exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(args.config).with_overrides(
            samples=args.samples, seed=args.seed, tol=args.tol,
            log_level=args.log_level.upper() if args.log_level else None,
        )
        configure_logging(settings.log_level)
        return args.handler(args, settings)
    except TheoremViolationError as e:
        logger.error(f"Theorem check failed: {e}")
        return CommandResult(EXIT_VIOLATION, {"error": str(e), "payload": e.payload})
    except SearchFailureError as e:
        logger.error(f"Search failed: {e}")
        return CommandResult(EXIT_INVALID, {"error": str(e), "kind": "search_failure"})
    except (PPFormsError, ValueError, ValidationError, OSError, yaml.YAMLError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return CommandResult(EXIT_INVALID, {"error": str(e), "kind": type(e).__name__})


def main(argv: Sequence[str] | None = None) -> int:
    configure_logging()
    result = run(argv)
    print(dumps(result.payload))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
