"""
Truncated shifted formal power series and the operators acting on them.

A PowerSeries stores x^shift * (c_0 + c_1 x + ... + c_{L-1} x^{L-1}); every
exponent below ``known_to = shift + L`` is determined, nothing beyond it is.
Operators never fabricate coefficients past that boundary.

The inner product <f, g>_R = 2*pi*i * sum c_k conj(d_k) R^{2k} is represented
by its R^2-coefficient sequence; the 2*pi*i unit is a convention, not data.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from hecke_series.core.arith import ONE, ZERO, GaussianRational, int_pow
from hecke_series.core.errors import InvalidOperator, TruncationTooShort

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerSeries:
    shift: int
    coeffs: Tuple[GaussianRational, ...]

    def __post_init__(self):
        if self.shift < 0:
            raise ValueError(f"Series shift must be non-negative, got {self.shift}")
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def known_to(self) -> int:
        return self.shift + len(self.coeffs)

    def coefficient(self, exponent: int) -> GaussianRational:
        """
        Coefficient of x^exponent.

        Raises:
            TruncationTooShort: If exponent is at or past the known range.
        """
        if exponent < self.shift:
            return ZERO
        if exponent >= self.known_to:
            raise TruncationTooShort(
                f"Coefficient of x^{exponent} requested; series known to {self.known_to}"
            )
        return self.coeffs[exponent - self.shift]

    def coefficients_to(self, limit: int) -> List[GaussianRational]:
        """Dense list of coefficients for exponents 0..limit-1."""
        return [self.coefficient(e) for e in range(limit)]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def leading_exponent(self) -> Optional[int]:
        """First exponent with a nonzero coefficient, or None."""
        for t, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.shift + t
        return None

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        return add(self, other)

    def __neg__(self) -> "PowerSeries":
        return scale(-ONE, self)


# --- Constructors ---
def from_dense(coeffs: Iterable[GaussianRational]) -> PowerSeries:
    """Series from coefficients of x^0, x^1, ...; known_to = len(coeffs)."""
    return PowerSeries(0, tuple(coeffs))


def zero(known_to: int) -> PowerSeries:
    return PowerSeries(0, (ZERO,) * known_to)


def geometric(known_to: int) -> PowerSeries:
    """1/(1-x) = 1 + x + x^2 + ...; the Hadamard identity."""
    return PowerSeries(0, (ONE,) * known_to)


def _window(shift: int, known_to: int, coefficient) -> PowerSeries:
    # Clamp so the invariant known_to >= shift survives empty overlaps.
    shift = min(shift, known_to)
    return PowerSeries(shift, tuple(coefficient(e) for e in range(shift, known_to)))


def normalized(f: PowerSeries) -> PowerSeries:
    """
    Moves the shift to the true vanishing order.

    The zero series normalizes to shift 0 with an all-zero window over the
    same known range.
    """
    lead = f.leading_exponent()
    if lead is None:
        return zero(f.known_to)
    return PowerSeries(lead, f.coeffs[lead - f.shift :])


def truncate(f: PowerSeries, known_to: int) -> PowerSeries:
    """Forgets every coefficient at exponent >= known_to."""
    if known_to > f.known_to:
        raise TruncationTooShort(
            f"Cannot extend a series known to {f.known_to} up to {known_to}"
        )
    if known_to <= f.shift:
        return PowerSeries(known_to, ())
    return PowerSeries(f.shift, f.coeffs[: known_to - f.shift])


# --- Hecke operators ---
def _check_index(n: int, name: str) -> None:
    if n < 1:
        raise InvalidOperator(f"{name}_{n} is undefined; the index must be >= 1")


def u_apply(n: int, f: PowerSeries) -> PowerSeries:
    """
    (U_n f)(x) = sum c_{nk} x^k.

    The output shift follows the two cases of the shifted-series action:
    j/n when n | j, and 1 + floor(j/n) otherwise; both equal ceil(j/n).

    Args:
        n: Operator index, n >= 1.
        f: Input series.

    Returns:
        A series known to ceil(f.known_to / n).
    """
    _check_index(n, "U")
    if n == 1:
        return f
    known_to = -(-f.known_to // n)
    shift = -(-f.shift // n)
    return PowerSeries(
        shift, tuple(f.coefficient(n * m) for m in range(shift, known_to))
    )


def v_apply(n: int, f: PowerSeries) -> PowerSeries:
    """(V_n f)(x) = f(x^n)."""
    _check_index(n, "V")
    if n == 1:
        return f
    shift = n * f.shift
    if not f.coeffs:
        return PowerSeries(shift, ())
    known_to = n * (f.known_to - 1) + 1
    coeffs = []
    for e in range(shift, known_to):
        q, rem = divmod(e, n)
        coeffs.append(f.coeffs[q - f.shift] if rem == 0 else ZERO)
    return PowerSeries(shift, tuple(coeffs))


def vnun_projection(n: int, f: PowerSeries) -> PowerSeries:
    """V_n(U_n f): keeps exponents divisible by n, zeroes the rest."""
    return v_apply(n, u_apply(n, f))


def euler_apply(f: PowerSeries) -> PowerSeries:
    """(x d/dx) f, normalized to its new vanishing order."""
    shifted = PowerSeries(
        f.shift, tuple(c * (f.shift + t) for t, c in enumerate(f.coeffs))
    )
    return normalized(shifted)


# --- Products ---
def hadamard(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """(f * g)(x) = sum c_k d_k x^k."""
    known_to = min(f.known_to, g.known_to)
    return _window(
        max(f.shift, g.shift),
        known_to,
        lambda e: f.coefficient(e) * g.coefficient(e),
    )


def inner_product(f: PowerSeries, g: PowerSeries) -> Tuple[GaussianRational, ...]:
    """R^2-coefficients s_k = c_k conj(d_k) of <f, g>_R / (2 pi i)."""
    known_to = min(f.known_to, g.known_to)
    return tuple(
        f.coefficient(k) * g.coefficient(k).conjugate() for k in range(known_to)
    )


def evaluate_inner(
    sequence: Sequence[GaussianRational], radius: GaussianRational
) -> GaussianRational:
    """Folds an R^2-sequence at a rational radius (still divided by 2 pi i)."""
    r_squared = radius * radius
    total = ZERO
    for s in reversed(sequence):
        total = total * r_squared + s
    return total


def adjoint_check(n: int, f: PowerSeries, g: PowerSeries) -> bool:
    """
    Checks <f, V_n g>_R = <U_n f, g>_{R^n} as formal identities in R.

    The right side's R^2-coefficient k is moved to index n*k (R -> R^n)
    before comparing on the range both sides know.
    """
    _check_index(n, "U")
    left = inner_product(f, v_apply(n, g))
    right = inner_product(u_apply(n, f), g)
    right_known = n * (len(right) - 1) + 1 if right else 0
    limit = min(len(left), right_known)
    for e in range(limit):
        q, rem = divmod(e, n)
        expected = right[q] if rem == 0 else ZERO
        if left[e] != expected:
            log.debug(f"Adjoint identity fails at R^{2 * e} for n={n}")
            return False
    return True


# --- Linear structure ---
def add(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    known_to = min(f.known_to, g.known_to)
    return _window(
        min(f.shift, g.shift),
        known_to,
        lambda e: f.coefficient(e) + g.coefficient(e),
    )


def scale(c: GaussianRational, f: PowerSeries) -> PowerSeries:
    return PowerSeries(f.shift, tuple(c * x for x in f.coeffs))


def shift_by(j: int, f: PowerSeries) -> PowerSeries:
    """x^j * f."""
    return PowerSeries(f.shift + j, f.coeffs)


def first_mismatch(f: PowerSeries, g: PowerSeries, limit: int) -> Optional[int]:
    """Smallest exponent below limit where f and g differ, or None."""
    if limit > min(f.known_to, g.known_to):
        raise TruncationTooShort(
            f"Comparison to order {limit} exceeds known ranges "
            f"({f.known_to}, {g.known_to})"
        )
    for e in range(limit):
        if f.coefficient(e) != g.coefficient(e):
            return e
    return None


def equal_to_order(f: PowerSeries, g: PowerSeries, limit: int) -> bool:
    """True iff every coefficient at an exponent below limit matches."""
    return first_mismatch(f, g, limit) is None


def common_order(*series: PowerSeries) -> int:
    return min(s.known_to for s in series)


# --- Named series ---
def polylog_series(i: int, order: int) -> PowerSeries:
    """
    f_i(x) = sum_{k>=1} k^i x^k, known to x^(order-1).

    Negative i gives the polylogarithms (i = -2 is the dilogarithm),
    non-negative i gives (x d/dx)^i applied to x/(1-x).
    """
    if order < 1:
        raise ValueError(f"polylog order must be >= 1, got {order}")
    return PowerSeries(
        1, tuple(int_pow(GaussianRational(k), i) for k in range(1, order))
    )


def commutation_index(n: int, m: int) -> Tuple[int, int]:
    """(m/g, n/g) with g = gcd(m, n), for U_n V_m = V_{m/g} U_{n/g}."""
    g = gcd(m, n)
    return m // g, n // g
