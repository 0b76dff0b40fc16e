import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from hecke_series.core.errors import DivisionByZero

# Real scalars are plain Fractions: always reduced, denominator > 0.
Rational = Fraction

ScalarLike = Union["GaussianRational", Fraction, int, str]

# --- Textual scalar syntax ---
# p | p/q | p/q+r/s*i | -p/q*i   (no whitespace inside a token)
_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"(?P<re>{_RATIONAL})(?:(?P<im>[+-]\d+(?:/\d+)?)\*i)?"
    rf"|(?P<pure>{_RATIONAL})\*i"
)
# Used by the expression parser to find where a scalar token ends.
SCALAR_TOKEN_RE = re.compile(
    rf"(?:{_RATIONAL}\*i|{_RATIONAL}(?:[+-]\d+(?:/\d+)?\*i)?)(?![A-Za-z0-9_])"
)


class ScalarSyntaxError(ValueError):
    """Raised when a string is not a valid scalar token."""


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError as e:
        raise ScalarSyntaxError(f"Zero denominator in scalar '{text}'") from e


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        # Accept ints (and anything Fraction understands) but store Fractions.
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    # --- Construction helpers ---
    @classmethod
    def of(cls, value: ScalarLike) -> "GaussianRational":
        """Coerces ints, Fractions and scalar strings to a GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        return cls(Fraction(value))

    # --- Predicates ---
    @property
    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return (self.re, self.im)

    # --- Field arithmetic ---
    def __add__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # Real operands dominate every workload; skip the cross terms.
        if self.im == 0 and other.im == 0:
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero(f"Division of {self} by zero")
        if other.im == 0:
            return GaussianRational(self.re / other.re, self.im / other.re)
        norm = other.re * other.re + other.im * other.im
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "GaussianRational":
        return int_pow(self, exponent)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"GaussianRational({format_scalar(self)!r})"


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(Fraction(value))
    return NotImplemented


ZERO = GaussianRational(Fraction(0))
ONE = GaussianRational(Fraction(1))
IMAGINARY_UNIT = GaussianRational(Fraction(0), Fraction(1))


# --- Module-level operations ---
def add(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    return x + y


def sub(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    return x - y


def mul(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    return x * y


def div(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    """Exact quotient; raises DivisionByZero when y = 0."""
    return x / y


def conj(x: GaussianRational) -> GaussianRational:
    return x.conjugate()


def int_pow(x: GaussianRational, e: int) -> GaussianRational:
    """
    Exact integer power by repeated squaring.

    Args:
        x: The base.
        e: Any integer exponent; negative exponents invert x first.

    Returns:
        x**e, with x**0 = 1 for every x (including 0).

    Raises:
        DivisionByZero: If x = 0 and e < 0.
    """
    if e < 0:
        if x.is_zero():
            raise DivisionByZero("Negative power of zero")
        x = ONE / x
        e = -e
    if x.im == 0:
        return GaussianRational(x.re**e)
    result = ONE
    base = x
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def is_nonpositive_integer(x: GaussianRational) -> bool:
    """True iff x lies in {0, -1, -2, ...} (a forbidden lower parameter)."""
    return x.im == 0 and x.re.denominator == 1 and x.re.numerator <= 0


# --- Parsing / formatting ---
def parse_scalar(text: str) -> GaussianRational:
    """
    Parses the textual scalar syntax: ``p``, ``p/q``, ``p/q+r/s*i``, ``-p/q*i``.

    Raises:
        ScalarSyntaxError: If text is not exactly one scalar token.
    """
    match = _SCALAR_RE.fullmatch(text)
    if not match:
        raise ScalarSyntaxError(f"Invalid scalar '{text}'")
    if match.group("pure") is not None:
        return GaussianRational(Fraction(0), _rational(match.group("pure")))
    real = _rational(match.group("re"))
    imag = _rational(match.group("im")) if match.group("im") else Fraction(0)
    return GaussianRational(real, imag)


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_scalar(x: GaussianRational) -> str:
    """Inverse of parse_scalar on canonical values."""
    if x.im == 0:
        return _format_rational(x.re)
    if x.re == 0:
        return f"{_format_rational(x.im)}*i"
    sign = "+" if x.im > 0 else "-"
    return f"{_format_rational(x.re)}{sign}{_format_rational(abs(x.im))}*i"


def format_rational(value: Fraction) -> str:
    return _format_rational(value)
