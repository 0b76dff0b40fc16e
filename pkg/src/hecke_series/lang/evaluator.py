import logging
from dataclasses import replace

from hecke_series.core.errors import NotClosedForm
from hecke_series.core.hecke import u_closed_form_normalized
from hecke_series.core.hyper import (
    HypergeometricTerm,
    geometric_term,
    polylog_term,
    to_series,
)
from hecke_series.core.series import (
    PowerSeries,
    add,
    euler_apply,
    geometric,
    hadamard,
    polylog_series,
    scale,
    shift_by,
    truncate,
    u_apply,
    v_apply,
)
from hecke_series.lang.expr import (
    Euler,
    Expr,
    Geom,
    Hadamard,
    HypLit,
    PolyLog,
    Scale,
    Shift,
    Sum,
    UOp,
    VOp,
)

log = logging.getLogger(__name__)


def _series(e: Expr, need: int) -> PowerSeries:
    """A series for e known to at least ``need`` exponents."""
    if isinstance(e, HypLit):
        return to_series(e.term(), max(need - e.shift, 1))
    if isinstance(e, PolyLog):
        return polylog_series(e.i, need)
    if isinstance(e, Geom):
        return geometric(need)
    if isinstance(e, UOp):
        # U_n reads exponent n*m, so the child must be n times deeper.
        return u_apply(e.n, _series(e.arg, e.n * need))
    if isinstance(e, VOp):
        child_need = -(-(need - 1) // e.n) + 1
        return v_apply(e.n, _series(e.arg, child_need))
    if isinstance(e, Euler):
        f = _series(e.arg, need)
        for _ in range(e.count):
            f = euler_apply(f)
        return f
    if isinstance(e, Hadamard):
        return hadamard(_series(e.left, need), _series(e.right, need))
    if isinstance(e, Sum):
        return add(_series(e.left, need), _series(e.right, need))
    if isinstance(e, Scale):
        return scale(e.scalar, _series(e.arg, need))
    if isinstance(e, Shift):
        return shift_by(e.j, _series(e.arg, max(need - e.j, 1)))
    raise TypeError(f"Not an expression node: {e!r}")


def eval_series(e: Expr, order: int) -> PowerSeries:
    """
    Evaluates e to an exact series known to exactly ``order`` exponents.

    Inner truncations are widened as needed (U(n) asks its child for n times
    as many coefficients), then the result is cut back to ``order``.
    """
    if order < 1:
        raise ValueError(f"Series order must be >= 1, got {order}")
    return truncate(_series(e, order), order)


def eval_symbolic(e: Expr) -> HypergeometricTerm:
    """
    Closed form of e as a single hypergeometric term.

    Raises:
        NotClosedForm: If e contains a Sum, Hadamard, VOp or Euler node.
    """
    if isinstance(e, HypLit):
        return e.term()
    if isinstance(e, PolyLog):
        return polylog_term(e.i)
    if isinstance(e, Geom):
        return geometric_term()
    if isinstance(e, UOp):
        return u_closed_form_normalized(e.n, eval_symbolic(e.arg))
    if isinstance(e, Scale):
        inner = eval_symbolic(e.arg)
        return replace(inner, c0=e.scalar * inner.c0)
    if isinstance(e, Shift):
        inner = eval_symbolic(e.arg)
        return replace(inner, shift=inner.shift + e.j)
    log.debug(f"{type(e).__name__} node has no closed form")
    raise NotClosedForm(f"{type(e).__name__} expressions have no hypergeometric closed form")
