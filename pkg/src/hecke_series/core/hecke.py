"""
Closed-form action of U_n on x^j * pFq.

When n | j the coefficient (a)_{kn} splits into n Pochhammer symbols of step
1/n; when n does not divide j the index is N = nk + r + 1 and the leading
(a)_{r+1} factor is pulled into the constant. Either way the new parameters
are arithmetic progressions (a + shift + l)/n and the variable picks up the
factor n^{n(p-q-1)}.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from hecke_series.core.arith import (
    ONE,
    GaussianRational,
    int_pow,
    is_nonpositive_integer,
)
from hecke_series.core.errors import InvalidOperator, InvalidParameter
from hecke_series.core.hyper import (
    HypergeometricTerm,
    Params,
    normalize,
    offset_r,
    param_sum_delta,
    pochhammer,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransformReport:
    input: HypergeometricTerm
    n: int
    case_divides: bool
    r: int
    output: HypergeometricTerm

    @property
    def expected_shape(self) -> Tuple[int, int]:
        """(np, n(q+1)-1): parameter counts claimed for the output class."""
        return (self.n * self.input.p, self.n * (self.input.q + 1) - 1)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.output.p, self.output.q)


def _progression(value: GaussianRational, n: int, offset: int) -> List[GaussianRational]:
    # (value + offset + step)/n for step = 1..n
    return [(value + offset + step) / n for step in range(1, n + 1)]


def _slot_index(lower_full: Sequence[GaussianRational]) -> int:
    return len(lower_full) - 1 - list(lower_full)[::-1].index(ONE)


def _map_parameters(
    upper: Sequence[GaussianRational],
    lower_full: Sequence[GaussianRational],
    n: int,
    offset: int,
) -> Tuple[Params, Params]:
    new_upper: List[GaussianRational] = []
    for a in upper:
        new_upper.extend(_progression(a, n, offset))

    slot = _slot_index(lower_full)
    new_lower: List[GaussianRational] = []
    slot_images: List[GaussianRational] = []
    for index, b in enumerate(lower_full):
        images = _progression(b, n, offset)
        for step, d in enumerate(images, start=1):
            if is_nonpositive_integer(d):
                raise InvalidParameter(
                    f"Transformed lower parameter ({b} + {offset + step})/{n} = {d} "
                    f"is a nonpositive integer (b={b}, l={step})"
                )
        if index == slot:
            slot_images = images
        else:
            new_lower.extend(images)

    # One image of the k! slot equals 1; it becomes the new k! slot, last.
    slot_images.remove(ONE)
    new_lower.extend(slot_images)
    new_lower.append(ONE)
    return tuple(new_upper), tuple(new_lower)


def parameter_map_divides(
    upper: Sequence[GaussianRational], lower_full: Sequence[GaussianRational], n: int
) -> Tuple[Params, Params]:
    """
    Parameters for n | j: c = (a + l - 1)/n, d = (b + l - 1)/n, l = 1..n.

    The k! slot b = 1 maps to 1/n, ..., (n-1)/n, 1 and the final 1 is kept as
    the new k! slot, so the output carries n(q+1) - 1 ordinary lower
    parameters.
    """
    if n < 1:
        raise InvalidOperator(f"U_{n} is undefined")
    return _map_parameters(upper, lower_full, n, -1)


def parameter_map_nondivides(
    upper: Sequence[GaussianRational],
    lower_full: Sequence[GaussianRational],
    n: int,
    j: int,
) -> Tuple[Params, Params, int]:
    """Parameters for n not dividing j: c = (a + r + l)/n with r = n - 1 - (j mod n)."""
    if n < 1 or j % n == 0:
        raise InvalidOperator(f"Non-divisible case needs n not dividing j (n={n}, j={j})")
    r = offset_r(n, j)
    new_upper, new_lower = _map_parameters(upper, lower_full, n, r)
    return new_upper, new_lower, r


def _reinstated_constant(t: HypergeometricTerm, r: int) -> GaussianRational:
    # s^{r+1} prod (a_i)_{r+1} / prod (b_i)_{r+1}
    value = int_pow(t.arg_scale, r + 1)
    for a in t.upper:
        value = value * pochhammer(a, r + 1)
    for b in t.lower_full:
        value = value / pochhammer(b, r + 1)
    return value


def u_closed_form(n: int, t: HypergeometricTerm) -> TransformReport:
    """
    Applies U_n to x^j * pFq in closed form.

    Args:
        n: Operator index, n >= 1.
        t: The input term.

    Returns:
        A TransformReport whose output term is un-normalized and generates
        exactly U_n of the input series.

    Raises:
        InvalidParameter: If a mapped lower parameter is a nonpositive integer.
    """
    if n < 1:
        raise InvalidOperator(f"U_{n} is undefined")
    p, q_full = len(t.upper), len(t.lower_full)
    scale = int_pow(t.arg_scale, n) * int_pow(GaussianRational(n), n * (p - q_full))

    if t.shift % n == 0:
        upper, lower = parameter_map_divides(t.upper, t.lower_full, n)
        output = HypergeometricTerm(t.c0, t.shift // n, upper, lower, scale)
        report = TransformReport(t, n, True, 0, output)
    else:
        upper, lower, r = parameter_map_nondivides(t.upper, t.lower_full, n, t.shift)
        c0 = t.c0 * _reinstated_constant(t, r)
        output = HypergeometricTerm(c0, 1 + t.shift // n, upper, lower, scale)
        report = TransformReport(t, n, False, r, output)

    log.debug(
        f"U_{n} closed form: shift {t.shift} -> {report.output.shift}, "
        f"shape ({p}, {q_full - 1}) -> {report.shape}"
    )
    return report


def u_closed_form_normalized(n: int, t: HypergeometricTerm) -> HypergeometricTerm:
    return normalize(u_closed_form(n, t).output)


def sum_invariant_check(t: HypergeometricTerm, n: int) -> bool:
    """
    Checks sum(c) - sum(d) = sum(a) - sum(b) + (n-1)(p-q-1)/2 in the n | j case.

    Sums run over the textbook lists (the k! slot excluded on both sides).

    Raises:
        InvalidOperator: If n does not divide the term's shift.
    """
    if n < 1 or t.shift % n != 0:
        raise InvalidOperator(f"Parameter-sum identity is stated for n | j (n={n}, j={t.shift})")
    report = u_closed_form(n, t)
    before = param_sum_delta(t) + ONE
    after = param_sum_delta(report.output) + ONE
    correction = GaussianRational(Fraction((n - 1) * (t.p - t.q - 1), 2))
    return after == before + correction
