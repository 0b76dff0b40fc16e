"""Random scalars, parameter lists, series and terms for the verification suites."""

import logging
from fractions import Fraction
from typing import List, Tuple

from hecke_series.core.arith import (
    ZERO,
    GaussianRational,
    is_nonpositive_integer,
)
from hecke_series.core.errors import InvalidParameter
from hecke_series.core.hecke import u_closed_form
from hecke_series.core.hyper import HypergeometricTerm
from hecke_series.core.series import PowerSeries
from hecke_series.services.rng import SplitMix64

log = logging.getLogger(__name__)

NUMERATORS = [v for v in range(-9, 10) if v != 0]
MAX_DENOMINATOR = 9
MAX_RESAMPLES = 1000


def random_rational(rng: SplitMix64) -> GaussianRational:
    """p/q with p in [-9, 9] minus {0} and q in [1, 9]."""
    numerator = rng.choice(NUMERATORS)
    denominator = rng.between(1, MAX_DENOMINATOR)
    return GaussianRational(Fraction(numerator, denominator))


def random_coefficient(rng: SplitMix64) -> GaussianRational:
    """Mostly rational, sometimes zero, sometimes with an imaginary part."""
    roll = rng.below(8)
    if roll == 0:
        return ZERO
    value = random_rational(rng)
    if roll == 1:
        value = value + random_rational(rng) * GaussianRational(0, 1)
    return value


def random_lower_param(rng: SplitMix64) -> GaussianRational:
    for _ in range(MAX_RESAMPLES):
        value = random_rational(rng)
        if not is_nonpositive_integer(value):
            return value
        log.debug(f"Resampling lower parameter {value}")
    raise RuntimeError("Could not draw a valid lower parameter")


def random_params(rng: SplitMix64, count: int, lower: bool = False) -> List[GaussianRational]:
    draw = random_lower_param if lower else random_rational
    return [draw(rng) for _ in range(count)]


def random_series(rng: SplitMix64, order: int, max_shift: int = 3) -> PowerSeries:
    """Series with a random shift and coefficients known to ``order``."""
    shift = rng.between(0, min(max_shift, order - 1))
    return PowerSeries(shift, tuple(random_coefficient(rng) for _ in range(order - shift)))


def random_term(
    rng: SplitMix64,
    max_p: int = 3,
    max_q: int = 3,
    max_shift: int = 7,
) -> HypergeometricTerm:
    """x^j * c0 * pFq with p, q and j drawn uniformly up to their maxima."""
    p = rng.between(0, max_p)
    q = rng.between(0, max_q)
    shift = rng.between(0, max_shift)
    c0 = random_rational(rng)
    return HypergeometricTerm.from_pfq(
        random_params(rng, p), random_params(rng, q, lower=True), shift, c0
    )


def random_transformable_term(
    rng: SplitMix64, n: int, **kwargs
) -> Tuple[HypergeometricTerm, int]:
    """
    A random term whose U_n image has valid lower parameters.

    Returns:
        The term and how many draws were rejected first.
    """
    for rejected in range(MAX_RESAMPLES):
        t = random_term(rng, **kwargs)
        try:
            u_closed_form(n, t)
        except InvalidParameter as e:
            log.debug(f"Resampling term for U_{n}: {e}")
            continue
        return t, rejected
    raise RuntimeError(f"Could not draw a term with a valid U_{n} image")


def perturbation(rng: SplitMix64, avoid: Tuple[GaussianRational, ...]) -> GaussianRational:
    """A valid parameter value outside ``avoid`` that is not a nonpositive integer."""
    for _ in range(MAX_RESAMPLES):
        value = random_lower_param(rng)
        if value not in avoid:
            return value
    raise RuntimeError("Could not draw a perturbation")
