"""
One function per user-facing command.

The CLI and the HTTP API both call these and only differ in how they render
the returned documents and map exceptions to exit codes or status codes.
"""

import logging
from typing import Any, Dict, Optional

from hecke_series.core.arith import ONE, parse_scalar
from hecke_series.core.errors import InvalidParameter, NotClosedForm
from hecke_series.core.hecke import u_closed_form
from hecke_series.core.hyper import normalize, to_series
from hecke_series.core.series import (
    evaluate_inner,
    first_mismatch,
    inner_product,
)
from hecke_series.core.spectral import eigen_check_numeric, eigen_classify, multiplicative_classify
from hecke_series.lang.evaluator import eval_series, eval_symbolic
from hecke_series.lang.expr import UOp, format_expr, to_dict
from hecke_series.lang.parser import parse
from hecke_series.services import codec, verification
from hecke_series.utils.list_helpers import Utl

log = logging.getLogger(__name__)

TRANSFORM_MODES = ("closed", "termwise", "both")
VERIFY_SUITES = tuple(verification.SUITES) + ("all",)


class ClosedFormUnavailable(Exception):
    """A closed-form transform was requested but cannot be produced."""


def _check_order(order: int) -> None:
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")


def _check_index(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise ValueError(f"n must be >= {minimum}, got {n}")


def expand(expr: str, order: int) -> Dict[str, Any]:
    _check_order(order)
    e = parse(expr)
    series = eval_series(e, order)
    log.debug(f"Expanded '{format_expr(e)}' to x^{order}")
    return {
        "expr": format_expr(e),
        "ast": to_dict(e),
        "series": codec.encode_series(series),
    }


def _closed_form(e, n: int):
    try:
        return u_closed_form(n, eval_symbolic(e))
    except (NotClosedForm, InvalidParameter) as err:
        raise ClosedFormUnavailable(str(err)) from err


def transform(expr: str, n: int, mode: str, order: int) -> Dict[str, Any]:
    """
    Applies U_n in closed form, termwise, or both with a cross-check.

    Raises:
        ClosedFormUnavailable: In closed/both mode when the expression has no
            closed form or a transformed lower parameter is invalid.
    """
    _check_order(order)
    _check_index(n)
    if mode not in TRANSFORM_MODES:
        raise ValueError(f"mode must be one of {', '.join(TRANSFORM_MODES)}, got '{mode}'")
    e = parse(expr)
    document: Dict[str, Any] = {"expr": format_expr(e), "n": n, "mode": mode}

    closed_series = termwise_series = None
    if mode in ("closed", "both"):
        report = _closed_form(e, n)
        closed_series = to_series(report.output, order)
        document["transform"] = codec.encode_transform(report)
        document["normalized"] = codec.encode_term(normalize(report.output))
        document["closed_series"] = codec.encode_series(closed_series)
    if mode in ("termwise", "both"):
        # U(n) widens its child to n * order coefficients.
        termwise_series = eval_series(UOp(n, e), order)
        document["termwise_series"] = codec.encode_series(termwise_series)
    if mode == "both":
        mismatch = first_mismatch(closed_series, termwise_series, order)
        document["agree"] = mismatch is None
        document["first_mismatch"] = mismatch
        if mismatch is not None:
            log.warning(f"Closed form and termwise U_{n} disagree at x^{mismatch}")
    return document


def eigen(expr: str, n: int, order: int) -> Dict[str, Any]:
    """
    Numeric eigen check on ``order`` coefficients, plus the structural class
    when the expression has a closed form.
    """
    _check_order(order)
    _check_index(n, minimum=2)
    e = parse(expr)
    numeric = eigen_check_numeric(eval_series(e, n * order), n)
    document: Dict[str, Any] = {
        "expr": format_expr(e),
        "n": n,
        "numeric": codec.encode_eigen(numeric),
        "class": None,
        "structural": None,
    }
    try:
        term = eval_symbolic(e)
    except NotClosedForm:
        log.debug("No closed form; reporting the numeric check only")
        return document
    eigen_class, report = eigen_classify(term, n)
    document["class"] = codec.encode_eigen_class(eigen_class)
    document["structural"] = codec.encode_eigen(report)
    return document


def classify_cm(a: Any, b: Any, bound: int) -> Dict[str, Any]:
    """
    Classifies prod (a)_{m-1} / prod (b)_{m-1} with the k! slot appended to b.

    ``a`` and ``b`` are comma-separated scalar strings or lists of scalars.
    """
    upper = _scalar_list(a)
    lower_full = _scalar_list(b) + [ONE]
    report = multiplicative_classify(upper, lower_full, bound)
    return {
        "a": codec.encode_scalars(upper),
        "b": codec.encode_scalars(lower_full[:-1]),
        **codec.encode_multiplicative(report),
    }


def _scalar_list(value: Any):
    if isinstance(value, str):
        return Utl.parse_scalar_list(value)
    return [parse_scalar(str(v)) for v in Utl.to_list(value) if str(v).strip()]


def inner(f_expr: str, g_expr: str, order: int, radius: Optional[str] = None) -> Dict[str, Any]:
    """R^2-coefficients of <f, g>_R / (2 pi i), optionally folded at a rational R."""
    _check_order(order)
    f_ast, g_ast = parse(f_expr), parse(g_expr)
    sequence = inner_product(eval_series(f_ast, order), eval_series(g_ast, order))
    document: Dict[str, Any] = {
        "f": format_expr(f_ast),
        "g": format_expr(g_ast),
        "unit": "2*pi*i",
        "sequence": codec.encode_scalars(sequence),
    }
    if radius is not None:
        r = parse_scalar(radius)
        document["radius"] = codec.encode_scalar(r)
        document["value"] = codec.encode_scalar(evaluate_inner(sequence, r))
    return document


def verify(
    suite: str,
    trials: int,
    seed: int,
    order: Optional[int] = None,
    workers: Optional[int] = None,
) -> Dict[str, Any]:
    if suite not in VERIFY_SUITES:
        raise ValueError(f"suite must be one of {', '.join(VERIFY_SUITES)}, got '{suite}'")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if suite != "all":
        return verification.run_suite(suite, trials, seed, order, workers).to_dict()
    runs = verification.run_all(trials, seed, order, workers)
    return {
        "suite": "all",
        "seed": seed,
        "trials": trials,
        "passed": all(run.passed for run in runs),
        "runs": [run.to_dict() for run in runs],
    }
