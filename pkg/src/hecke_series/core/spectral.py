"""
Eigenfunction analysis of U_n on hypergeometric terms.

Three derivations of an eigenvalue are kept apart on purpose: the structural
n^(gamma_b - gamma_a), the explicit ratio s^(n-1) prod (a)_{n-1} / prod (b)_{n-1},
and the numerically observed coefficient ratio. eigen_classify insists they
agree.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from hecke_series.core.arith import ONE, ZERO, GaussianRational, int_pow
from hecke_series.core.errors import (
    ConsistencyError,
    InsufficientOrder,
    InvalidOperator,
    InvalidParameter,
    ZeroSeries,
)
from hecke_series.core.hyper import (
    GammaCounts,
    HypergeometricTerm,
    gamma_counts,
    is_balanced,
    normalize,
    pochhammer,
    terminating_degree,
    to_series,
)
from hecke_series.core.series import (
    PowerSeries,
    common_order,
    first_mismatch,
    polylog_series,
    scale,
    u_apply,
)
from hecke_series.utils.list_helpers import Utl

log = logging.getLogger(__name__)

TWO = GaussianRational(2)

# Coefficients compared by the numeric leg of eigen_classify.
CLASSIFY_ORDER = 64
SPECTRUM_ORDER = 128


@dataclass(frozen=True)
class EigenReport:
    is_eigen: bool
    eigenvalue: Optional[GaussianRational]
    gamma: Optional[GammaCounts]
    witness: Optional[int]
    checked_to: int


class EigenKind(Enum):
    RATIONAL_EULER = "RationalEuler"
    POLYLOG = "Polylog"
    GEOMETRIC = "Geometric"
    POLYNOMIAL = "Polynomial"
    NOT_EIGEN = "NotEigen"


@dataclass(frozen=True)
class EigenClass:
    kind: EigenKind
    a: Optional[int] = None

    def __str__(self) -> str:
        if self.a is None:
            return self.kind.value
        return f"{self.kind.value}({self.a})"


NOT_EIGEN = EigenClass(EigenKind.NOT_EIGEN)
POLYNOMIAL = EigenClass(EigenKind.POLYNOMIAL)


def _require_index(n: int) -> None:
    if n < 2:
        raise InvalidOperator(f"Eigen analysis needs n >= 2, got {n}")


# --- Numeric check ---
def eigen_check_numeric(f: PowerSeries, n: int) -> EigenReport:
    """
    Tests U_n f = lambda f coefficientwise.

    lambda is read off the first nonzero exponent e0 of f as
    (U_n f)[e0] / f[e0], then the relation is checked on the range both
    U_n f and f know.

    Raises:
        ZeroSeries: If f has no nonzero known coefficient.
        InsufficientOrder: If fewer than two coefficients can be compared.
    """
    _require_index(n)
    e0 = f.leading_exponent()
    if e0 is None:
        raise ZeroSeries(f"Series known to {f.known_to} has no nonzero coefficient")

    image = u_apply(n, f)
    limit = common_order(image, f)
    if limit < 2 or e0 >= limit:
        raise InsufficientOrder(
            f"Only {limit} comparable coefficients for U_{n} (first nonzero at x^{e0})"
        )

    candidate = image.coefficient(e0) / f.coefficient(e0)
    witness = first_mismatch(image, scale(candidate, f), limit)
    if witness is not None:
        log.debug(f"U_{n} eigen relation fails at x^{witness} (candidate {candidate})")
        return EigenReport(False, None, None, witness, limit)
    return EigenReport(True, candidate, None, None, limit)


# --- Structure ---
def _shape(upper: Sequence[GaussianRational], lower_full: Sequence[GaussianRational]):
    """Matches normalized lists against the Polylog / RationalEuler shapes."""
    count = len(upper)
    lower_sorted = tuple(sorted(lower_full, key=GaussianRational.sort_key))
    if count and all(a == TWO for a in upper) and lower_sorted == (ONE,) * count:
        return EigenClass(EigenKind.RATIONAL_EULER, count)
    if (
        count
        and all(a == ONE for a in upper)
        and lower_sorted == (ONE,) + (TWO,) * (count - 1)
    ):
        return EigenClass(EigenKind.POLYLOG, count - 1)
    return None


def structural_class(t: HypergeometricTerm, n: int) -> EigenClass:
    """
    The eigen class read from the parameters alone, ignoring coefficients.

    Only shifts 0 and 1 can carry an eigenfunction; the argument scale s must
    satisfy s^(n-1) = 1 so that every coefficient ratio c_{nk}/c_k picks up
    the same power of s.
    """
    nt = normalize(t)
    if nt.c0.is_zero() or nt.shift not in (0, 1):
        return NOT_EIGEN
    if int_pow(nt.arg_scale, n - 1) != ONE:
        return NOT_EIGEN
    if nt.shift == 0:
        if nt.upper == (ONE,) and nt.lower_full == (ONE,):
            return EigenClass(EigenKind.GEOMETRIC)
        return NOT_EIGEN
    return _shape(nt.upper, nt.lower_full) or NOT_EIGEN


def structural_eigenvalue(t: HypergeometricTerm, n: int) -> GaussianRational:
    """n^(gamma_b - gamma_a)."""
    gamma = gamma_counts(t)
    return int_pow(GaussianRational(n), gamma.gamma_b - gamma.gamma_a)


def explicit_eigenvalue(t: HypergeometricTerm, n: int) -> GaussianRational:
    """s^(n-1) prod (a_i)_{n-1} / prod (b_i)_{n-1}: the k = 1 coefficient relation."""
    value = int_pow(t.arg_scale, n - 1)
    for a in t.upper:
        value = value * pochhammer(a, n - 1)
    for b in t.lower_full:
        value = value / pochhammer(b, n - 1)
    return value


def _is_constant(f: PowerSeries, degree: int) -> bool:
    return not f.coefficient(0).is_zero() and all(
        f.coefficient(e).is_zero() for e in range(1, degree + 1)
    )


def _classify_polynomial(
    f: PowerSeries, n: int, degree: int, gamma: GammaCounts, numeric: EigenReport
) -> Tuple[EigenClass, EigenReport]:
    """
    Terminating terms: the numeric check covers the whole support, so it decides.

    U_n lowers the degree of any nonconstant polynomial, which leaves two
    eigenvalues: 1 for constants and 0 for polynomials with no exponent
    divisible by n.
    """
    if not numeric.is_eigen:
        return NOT_EIGEN, replace(numeric, gamma=gamma)
    expected = ONE if _is_constant(f, degree) else ZERO
    if numeric.eigenvalue != expected:
        raise ConsistencyError(
            f"Polynomial of degree <= {degree} has U_{n} eigenvalue "
            f"{numeric.eigenvalue}, expected {expected}"
        )
    log.debug(f"Polynomial term is an eigenfunction of U_{n} with eigenvalue {expected}")
    return POLYNOMIAL, replace(numeric, gamma=gamma)


def eigen_classify(t: HypergeometricTerm, n: int) -> Tuple[EigenClass, EigenReport]:
    """
    Decides whether x^j * pFq is an eigenfunction of U_n.

    Args:
        t: The term; it is normalized first.
        n: Operator index, n >= 2.

    Returns:
        The eigen class and a report. For accepted terms the report carries
        the eigenvalue and gamma counts; for rejected ones it is the numeric
        report with its witness. Terminating terms are classified as
        Polynomial (eigenvalue 0 or 1) or NotEigen from their full support.

    Raises:
        ConsistencyError: If an accepted term's three eigenvalue derivations
            disagree, or a non-terminating term without eigen structure
            passes the numeric check.
    """
    _require_index(n)
    nt = normalize(t)
    gamma = gamma_counts(nt)
    degree = terminating_degree(nt)
    depth = CLASSIFY_ORDER if degree is None else max(CLASSIFY_ORDER, degree + 2)

    # U_n reads exponents up to n * (shift + depth) - shift.
    series = to_series(nt, n * (nt.shift + depth) - nt.shift)
    try:
        numeric = eigen_check_numeric(series, n)
    except ZeroSeries:
        return NOT_EIGEN, EigenReport(False, None, gamma, None, 0)

    if degree is not None:
        return _classify_polynomial(series, n, degree, gamma, numeric)

    eigen_class = structural_class(nt, n)
    if eigen_class.kind is EigenKind.NOT_EIGEN:
        if numeric.is_eigen:
            raise ConsistencyError(
                f"Term without eigen structure passes the numeric U_{n} check to "
                f"x^{numeric.checked_to} with eigenvalue {numeric.eigenvalue}"
            )
        return NOT_EIGEN, replace(numeric, gamma=gamma)

    structural = structural_eigenvalue(nt, n)
    explicit = explicit_eigenvalue(nt, n)
    if not numeric.is_eigen:
        raise ConsistencyError(
            f"{eigen_class} term fails the numeric U_{n} check at x^{numeric.witness}"
        )
    if not structural == explicit == numeric.eigenvalue:
        raise ConsistencyError(
            f"Eigenvalue derivations disagree for U_{n}: structural {structural}, "
            f"explicit {explicit}, numeric {numeric.eigenvalue}"
        )
    log.debug(f"{eigen_class} is an eigenfunction of U_{n} with eigenvalue {structural}")
    return eigen_class, EigenReport(True, structural, gamma, None, numeric.checked_to)


# --- Parameter identities ---
def _roots(
    own: Sequence[GaussianRational], other: Sequence[GaussianRational], n: int
) -> List[GaussianRational]:
    # {x - 1 : x in own} together with (y - 1)/n, y/n, ..., (y + n - 2)/n for y in other
    values = [x - 1 for x in own]
    for y in other:
        values.extend((y + step - 1) / n for step in range(n))
    return values


def root_multiset_check(t: HypergeometricTerm, n: int) -> bool:
    """
    Compares the root multisets of the two sides of the eigen polynomial identity.

    Raises:
        InvalidOperator: Unless t is balanced with shift 1.
    """
    if t.shift != 1 or not is_balanced(t):
        raise InvalidOperator(
            f"Root multisets need a balanced term with shift 1 "
            f"(shift={t.shift}, p={t.p}, q={t.q})"
        )
    _require_index(n)
    left = _roots(t.upper, t.lower_full, n)
    right = _roots(t.lower_full, t.upper, n)
    return Utl.multiset_equal(left, right)


def interest_identity(t: HypergeometricTerm, n: int) -> bool:
    """n^gamma_a prod (a_i)_{n-1} = n^gamma_b prod (b_i)_{n-1}."""
    gamma = gamma_counts(t)
    left = int_pow(GaussianRational(n), gamma.gamma_a)
    right = int_pow(GaussianRational(n), gamma.gamma_b)
    for a in t.upper:
        left = left * pochhammer(a, n - 1)
    for b in t.lower_full:
        right = right * pochhammer(b, n - 1)
    return left == right


# --- Spectrum and simultaneous eigenfunctions ---
def spectrum_witness(
    n: int, i_range: Iterable[int], order: int = SPECTRUM_ORDER
) -> List[Tuple[int, EigenReport]]:
    """
    Runs the numeric check on sum k^i x^k for every i and asserts lambda = n^i.

    Each series is built deep enough that the relation is compared on
    ``order`` exponents.

    Raises:
        ConsistencyError: If some sum k^i x^k is not an eigenfunction with
            eigenvalue n^i.
    """
    _require_index(n)
    reports = []
    for i in i_range:
        report = eigen_check_numeric(polylog_series(i, order * n), n)
        expected = int_pow(GaussianRational(n), i)
        if not report.is_eigen or report.eigenvalue != expected:
            raise ConsistencyError(
                f"sum k^{i} x^k under U_{n}: expected eigenvalue {expected}, "
                f"got {report.eigenvalue} (witness {report.witness})"
            )
        reports.append((i, report))
    return reports


def simultaneous_eigen_check(t: HypergeometricTerm, n_list: Sequence[int]) -> bool:
    """
    True iff t has the same eigen class for every U_n with n in n_list.

    For s = 1 being an eigenfunction of one U_n already forces the
    structure for all of them; a mixed verdict is then reported as a
    ConsistencyError. Polynomials are exempt: x^2 is killed by U_3 but not
    by U_2.
    """
    classes = [eigen_classify(t, n)[0] for n in n_list]
    if not classes:
        return False
    accepted = [c.kind is not EigenKind.NOT_EIGEN for c in classes]
    structural = terminating_degree(t) is None and normalize(t).arg_scale == ONE
    if structural and any(accepted) and not all(accepted):
        raise ConsistencyError(
            f"Eigen verdict depends on n for s = 1: "
            f"{dict(zip(n_list, (str(c) for c in classes)))}"
        )
    return all(accepted) and len(set(classes)) == 1


def simultaneous_coefficients(t: HypergeometricTerm, order: int = CLASSIFY_ORDER) -> bool:
    """
    Checks c_k = lambda_k * c_1 for 1 <= k < order with lambda_k = k^(gamma_b - gamma_a).

    Raises:
        InvalidOperator: If the normalized term does not have shift 1.
    """
    nt = normalize(t)
    if nt.shift != 1:
        raise InvalidOperator(f"Coefficient relation needs shift 1, got {nt.shift}")
    f = to_series(nt, order - 1)
    gamma = gamma_counts(nt)
    exponent = gamma.gamma_b - gamma.gamma_a
    c1 = f.coefficient(1)
    for k in range(1, order):
        if f.coefficient(k) != int_pow(GaussianRational(k), exponent) * c1:
            log.debug(f"c_{k} != {k}^{exponent} c_1")
            return False
    return True


# --- Completely multiplicative coefficients ---
@dataclass(frozen=True)
class MultiplicativeReport:
    is_cm: bool
    exponent: Optional[int]
    witness: Optional[Tuple[int, int]]
    bound: int
    vanishes_at: Optional[int] = None
    # c(mk) and c(m)c(k) at the witness
    witness_values: Optional[Tuple[GaussianRational, GaussianRational]] = None


def cm_sequence(
    upper: Sequence[GaussianRational], lower_full: Sequence[GaussianRational], bound: int
) -> List[GaussianRational]:
    """[c(0), c(1), ..., c(bound)] with c(m) = prod (a)_{m-1} / prod (b)_{m-1}; c(0) unused."""
    values = [ZERO, ONE]
    current = ONE
    for m in range(1, bound):
        ratio = ONE
        for a in upper:
            ratio = ratio * (a + (m - 1))
        for b in lower_full:
            ratio = ratio / (b + (m - 1))
        current = current * ratio
        values.append(current)
    return values


def multiplicative_classify(
    upper: Sequence[GaussianRational],
    lower_full: Sequence[GaussianRational],
    bound: int,
) -> MultiplicativeReport:
    """
    Classifies m -> prod (a)_{m-1} / prod (b)_{m-1} as completely multiplicative.

    Both the brute-force check on all (m, k) with mk <= bound and the
    structural characterisation (Polylog or RationalEuler parameters) are
    computed; for non-vanishing sequences they must agree.

    Raises:
        InvalidParameter: If bound < 4 or lower_full is not a valid list.
        ConsistencyError: If the brute-force and structural answers differ.
    """
    if bound < 4:
        raise InvalidParameter(f"Multiplicativity bound must be >= 4, got {bound}")
    # Validates lower_full and reuses the term normalization.
    term = normalize(HypergeometricTerm(ONE, 1, tuple(upper), tuple(lower_full)))
    values = cm_sequence(term.upper, term.lower_full, bound)

    witness = None
    witness_values = None
    for m in range(2, bound // 2 + 1):
        for k in range(2, bound // m + 1):
            product = values[m] * values[k]
            if values[m * k] != product:
                witness = (m, k)
                witness_values = (values[m * k], product)
                break
        if witness:
            break

    vanishes_at = next((m for m in range(1, bound + 1) if values[m].is_zero()), None)
    if vanishes_at is not None:
        return MultiplicativeReport(
            False, None, witness, bound, vanishes_at, witness_values
        )

    structured = _shape(term.upper, term.lower_full) is not None
    if structured != (witness is None):
        raise ConsistencyError(
            f"Brute force ({'no witness' if witness is None else witness}) and "
            f"structure ({'matches' if structured else 'no match'}) disagree "
            f"up to bound {bound}"
        )
    if witness is not None:
        return MultiplicativeReport(False, None, witness, bound, None, witness_values)

    gamma = gamma_counts(term)
    exponent = gamma.gamma_b - gamma.gamma_a
    for m in range(1, bound + 1):
        if values[m] != int_pow(GaussianRational(m), exponent) * values[1]:
            raise ConsistencyError(f"c({m}) != {m}^{exponent} c(1)")
    return MultiplicativeReport(True, exponent, None, bound)
