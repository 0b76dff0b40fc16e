"""
Pochhammer arithmetic and the symbolic hypergeometric term.

A HypergeometricTerm stands for

    x^shift * c0 * sum_k prod_i (a_i)_k / prod_i (b_i)_k * (s x)^k

where ``lower_full`` always carries the conventional trailing parameter 1 that
absorbs the k! of the textbook pFq normalization.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from hecke_series.core.arith import (
    ONE,
    GaussianRational,
    int_pow,
    is_nonpositive_integer,
)
from hecke_series.core.errors import InvalidOperator, InvalidParameter
from hecke_series.core.series import PowerSeries

log = logging.getLogger(__name__)

Params = Tuple[GaussianRational, ...]


# --- Pochhammer symbols ---
def pochhammer(a: GaussianRational, k: int) -> GaussianRational:
    """Ascending factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1."""
    result = ONE
    for i in range(k):
        result = result * (a + i)
    return result


def pochhammer_split(a: GaussianRational, n: int, k: int) -> GaussianRational:
    """Right side of (a)_{kn} = n^{kn} prod_{j=0}^{n-1} ((a+j)/n)_k."""
    if n < 1:
        raise InvalidOperator(f"Split modulus must be >= 1, got {n}")
    result = int_pow(GaussianRational(n), k * n)
    for j in range(n):
        result = result * pochhammer((a + j) / n, k)
    return result


def offset_r(n: int, j: int) -> int:
    """r = n(1 - {j/n}) - 1 = n - 1 - (j mod n), defined when n does not divide j."""
    return n - 1 - (j % n)


def pochhammer_offset(a: GaussianRational, n: int, k: int, j: int) -> GaussianRational:
    """
    Right side of (a)_N = n^{nk} (a)_{r+1} prod_{i=r+1}^{r+n} ((a+i)/n)_k.

    Here N = n(k + 1 - {j/n}) = n(k+1) - (j mod n).

    Raises:
        InvalidOperator: If n divides j (the offset form does not apply).
    """
    if n < 1 or j % n == 0:
        raise InvalidOperator(f"Offset split needs n not dividing j (n={n}, j={j})")
    r = offset_r(n, j)
    result = int_pow(GaussianRational(n), n * k) * pochhammer(a, r + 1)
    for i in range(r + 1, r + n + 1):
        result = result * pochhammer((a + i) / n, k)
    return result


def offset_length(n: int, k: int, j: int) -> int:
    """N = n(k+1) - (j mod n)."""
    return n * (k + 1) - (j % n)


# --- Terms ---
@dataclass(frozen=True)
class GammaCounts:
    gamma_a: int
    gamma_b: int


def _params(values: Sequence) -> Params:
    return tuple(GaussianRational.of(v) for v in values)


def check_lower(lower: Sequence[GaussianRational]) -> None:
    for b in lower:
        if is_nonpositive_integer(b):
            raise InvalidParameter(f"Lower parameter {b} is a nonpositive integer")


@dataclass(frozen=True)
class HypergeometricTerm:
    c0: GaussianRational
    shift: int
    upper: Params
    lower_full: Params
    arg_scale: GaussianRational = ONE

    def __post_init__(self):
        object.__setattr__(self, "c0", GaussianRational.of(self.c0))
        object.__setattr__(self, "arg_scale", GaussianRational.of(self.arg_scale))
        object.__setattr__(self, "upper", _params(self.upper))
        object.__setattr__(self, "lower_full", _params(self.lower_full))
        if self.shift < 0:
            raise ValueError(f"Term shift must be non-negative, got {self.shift}")
        if ONE not in self.lower_full:
            raise InvalidParameter("lower_full must contain the k! slot (a parameter 1)")
        if self.arg_scale.is_zero():
            raise InvalidParameter("arg_scale must be nonzero")
        check_lower(self.lower_full)

    @classmethod
    def from_pfq(
        cls,
        upper: Sequence,
        lower: Sequence,
        shift: int = 0,
        c0=ONE,
        arg_scale=ONE,
    ) -> "HypergeometricTerm":
        """Builds a term from textbook pFq lists, appending the k! slot."""
        return cls(c0, shift, _params(upper), _params(lower) + (ONE,), arg_scale)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        """Lower parameters besides the k! slot."""
        return len(self.lower_full) - 1

    @property
    def lower(self) -> Params:
        """Textbook b-list: lower_full without one trailing 1."""
        return _without_slot(self.lower_full)


def _without_slot(lower_full: Params) -> Params:
    index = len(lower_full) - 1 - lower_full[::-1].index(ONE)
    return lower_full[:index] + lower_full[index + 1 :]


def coefficient(t: HypergeometricTerm, k: int) -> GaussianRational:
    """Coefficient of x^(shift+k): c0 s^k prod (a_i)_k / prod (b_i)_k."""
    value = t.c0 * int_pow(t.arg_scale, k)
    for a in t.upper:
        value = value * pochhammer(a, k)
    for b in t.lower_full:
        value = value / pochhammer(b, k)
    return value


def coefficients(t: HypergeometricTerm, order: int) -> List[GaussianRational]:
    """First ``order`` coefficients via the ratio recurrence (a+k)/(b+k)."""
    values: List[GaussianRational] = []
    current = t.c0
    for k in range(order):
        values.append(current)
        if current.is_zero():
            # A vanished upper Pochhammer keeps every later term at zero.
            values.extend([current] * (order - k - 1))
            break
        ratio = t.arg_scale
        for a in t.upper:
            ratio = ratio * (a + k)
        for b in t.lower_full:
            ratio = ratio / (b + k)
        current = current * ratio
    return values


def to_series(t: HypergeometricTerm, order: int) -> PowerSeries:
    """The term's series with coefficients 0..order-1 (known to shift + order)."""
    if order < 1:
        raise ValueError(f"Series order must be >= 1, got {order}")
    return PowerSeries(t.shift, tuple(coefficients(t, order)))


def _sorted(params: Sequence[GaussianRational]) -> Params:
    return tuple(sorted(params, key=GaussianRational.sort_key))


def normalize(t: HypergeometricTerm) -> HypergeometricTerm:
    """
    Cancels equal upper/lower pairs and sorts both lists.

    One lower 1 always survives as the k! slot, so the generated series is
    unchanged.
    """
    remaining = Counter(t.lower_full)
    kept_upper: List[GaussianRational] = []
    for a in t.upper:
        available = remaining[a] - (1 if a == ONE else 0)
        if available > 0:
            remaining[a] -= 1
        else:
            kept_upper.append(a)
    kept_lower = [b for b, count in remaining.items() for _ in range(count)]
    return HypergeometricTerm(
        t.c0, t.shift, _sorted(kept_upper), _sorted(kept_lower), t.arg_scale
    )


def gamma_counts(t: HypergeometricTerm) -> GammaCounts:
    """Counts of parameters equal to 1 (gamma_b counted over lower_full)."""
    return GammaCounts(
        gamma_a=sum(1 for a in t.upper if a == ONE),
        gamma_b=sum(1 for b in t.lower_full if b == ONE),
    )


def param_sum_delta(t: HypergeometricTerm) -> GaussianRational:
    """sum(upper) - sum(lower_full)."""
    total = GaussianRational(0)
    for a in t.upper:
        total = total + a
    for b in t.lower_full:
        total = total - b
    return total


def is_balanced(t: HypergeometricTerm) -> bool:
    """p = q + 1, i.e. as many upper parameters as lower_full entries."""
    return len(t.upper) == len(t.lower_full)


def terminating_degree(t: HypergeometricTerm) -> Optional[int]:
    """
    Highest exponent a terminating term can reach, or None if it does not terminate.

    An upper parameter -m (m >= 0) makes (a)_k vanish for every k > m, so the
    series is a polynomial of degree at most shift + m.
    """
    stops = [-int(a.re) for a in t.upper if is_nonpositive_integer(a)]
    if not stops:
        return None
    return t.shift + min(stops)


# --- Named terms ---
def geometric_term() -> HypergeometricTerm:
    """1/(1-x) = 1F0(1;;x)."""
    return HypergeometricTerm(ONE, 0, (ONE,), (ONE,))


def polylog_term(i: int) -> HypergeometricTerm:
    """
    sum_{k>=1} k^i x^k as x * pFq.

    i < 0: upper = (1,)*(|i|+1), lower_full = (2,)*|i| + (1,)
    i > 0: upper = (2,)*i, lower_full = (1,)*i
    i = 0: upper = (1,), lower_full = (1,)  (x/(1-x))
    """
    two = GaussianRational(2)
    if i < 0:
        a = -i
        return HypergeometricTerm(ONE, 1, (ONE,) * (a + 1), (two,) * a + (ONE,))
    if i > 0:
        return HypergeometricTerm(ONE, 1, (two,) * i, (ONE,) * i)
    return HypergeometricTerm(ONE, 1, (ONE,), (ONE,))
