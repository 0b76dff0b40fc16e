"""
Seeded verification suites.

Each suite is a function of (seed, trial, order) returning the failures of
that one trial, so trials can run in any order or in worker processes and
the aggregated run is identical. A failure records the trial index, a
description and everything needed to replay it.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from hecke_series import config
from hecke_series.core.arith import ONE, GaussianRational, format_scalar, int_pow
from hecke_series.core.errors import InvalidParameter
from hecke_series.core.hecke import sum_invariant_check, u_closed_form
from hecke_series.core.hyper import (
    HypergeometricTerm,
    gamma_counts,
    is_balanced,
    normalize,
    offset_length,
    param_sum_delta,
    pochhammer,
    pochhammer_offset,
    pochhammer_split,
    to_series,
)
from hecke_series.core.series import (
    PowerSeries,
    adjoint_check,
    common_order,
    commutation_index,
    first_mismatch,
    u_apply,
    v_apply,
    vnun_projection,
)
from hecke_series.core.spectral import (
    EigenKind,
    eigen_classify,
    interest_identity,
    multiplicative_classify,
    root_multiset_check,
    simultaneous_coefficients,
    simultaneous_eigen_check,
    spectrum_witness,
)
from hecke_series.services import codec, generators
from hecke_series.services.rng import SplitMix64, trial_seed
from hecke_series.utils.list_helpers import Utl

log = logging.getLogger(__name__)

TWO = GaussianRational(2)
EIGEN_INDICES = (2, 3, 4, 5, 7)


@dataclass
class VerificationRun:
    suite: str
    seed: int
    trials: int
    order: int
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "order": self.order,
            "passed": self.passed,
            "failures": self.failures,
        }


class _Trial:
    """Collects the failures of one trial together with its replay data."""

    def __init__(self, suite: str, seed: int, trial: int, order: int):
        self.suite = suite
        self.seed = seed
        self.trial = trial
        self.order = order
        self.sub_seed = trial_seed(seed, suite, trial)
        self.rng = SplitMix64(self.sub_seed)
        self.failures: List[Dict[str, Any]] = []

    def check(self, ok: bool, description: str, **params) -> bool:
        if not ok:
            self.fail(description, **params)
        return ok

    def fail(self, description: str, **params) -> None:
        self.failures.append(
            {
                "trial": self.trial,
                "description": description,
                "reproduction": {
                    "suite": self.suite,
                    "seed": self.seed,
                    "trial": self.trial,
                    "trial_seed": self.sub_seed,
                    "order": self.order,
                    **params,
                },
            }
        )


def _agree(f: PowerSeries, g: PowerSeries) -> Optional[int]:
    """First mismatch on the common known range, or None."""
    return first_mismatch(f, g, common_order(f, g))


def _series_params(f: PowerSeries) -> Dict[str, Any]:
    return {"series": codec.encode_series(f)}


# --- algebra: semigroup, inverse, commutation, associativity, projection ---
def _algebra(t: _Trial) -> None:
    rng = t.rng
    f = generators.random_series(rng, t.order)
    n = rng.between(1, 12)
    m = rng.between(1, 12)
    k = rng.between(1, 6)
    j = rng.between(1, 6)
    params = dict(n=n, m=m, k=k, j=j, **_series_params(f))

    checks = {
        "U_n U_m = U_nm": (u_apply(n, u_apply(m, f)), u_apply(n * m, f)),
        "V_n V_m = V_nm": (v_apply(n, v_apply(m, f)), v_apply(n * m, f)),
        "U_n V_n = Id": (u_apply(n, v_apply(n, f)), f),
    }
    m_red, n_red = commutation_index(n, m)
    checks["U_n V_m = V_(m/g) U_(n/g)"] = (
        u_apply(n, v_apply(m, f)),
        v_apply(m_red, u_apply(n_red, f)),
    )
    checks["U_kj V_m = U_k U_j V_m"] = (
        u_apply(k * j, v_apply(m, f)),
        u_apply(k, u_apply(j, v_apply(m, f))),
    )
    for name, (left, right) in checks.items():
        mismatch = _agree(left, right)
        t.check(mismatch is None, f"{name} fails at x^{mismatch}", **params)

    projected = vnun_projection(n, f)
    t.check(
        _agree(vnun_projection(n, projected), projected) is None,
        "V_n U_n is not idempotent",
        **params,
    )
    limit = common_order(projected, f)
    supported = all(f.coefficient(e).is_zero() for e in range(limit) if e % n)
    fixed = first_mismatch(projected, f, limit) is None
    t.check(
        fixed == supported,
        f"V_n U_n fixes f: {fixed}, f supported on multiples of n: {supported}",
        **params,
    )


# --- pochhammer: splitting lemmas and recurrences ---
def _pochhammer(t: _Trial) -> None:
    rng = t.rng
    a = generators.random_rational(rng)
    n = rng.between(1, 8)
    k = rng.between(0, 10)
    params = {"a": format_scalar(a), "n": n, "k": k}

    t.check(
        pochhammer_split(a, n, k) == pochhammer(a, k * n),
        "(a)_kn split into n Pochhammer symbols disagrees",
        **params,
    )

    n_off = rng.between(2, 8)
    j = rng.between(0, 20)
    if j % n_off == 0:
        j += rng.between(1, n_off - 1)
    t.check(
        pochhammer_offset(a, n_off, k, j) == pochhammer(a, offset_length(n_off, k, j)),
        "(a)_N offset split disagrees",
        **params,
        offset_n=n_off,
        j=j,
    )

    current = pochhammer(a, k)
    if not current.is_zero():
        t.check(
            pochhammer(a, k + 1) / current == a + k,
            "(a)_{k+1}/(a)_k != a + k",
            **params,
        )
        t.check(
            k + a == a * pochhammer(a + 1, k) / current,
            "k + c != c (c+1)_k / (c)_k",
            **params,
        )


# --- transform: closed form against the termwise oracle ---
def _transform(t: _Trial) -> None:
    rng = t.rng
    n = rng.between(1, 5)
    term, rejected = generators.random_transformable_term(rng, n)
    params = {"n": n, "term": codec.encode_term(term), "rejected_draws": rejected}

    report = u_closed_form(n, term)
    t.check(
        report.shape == report.expected_shape,
        f"Output shape {report.shape} != {report.expected_shape}",
        **params,
    )
    oracle = u_apply(n, to_series(term, n * t.order + n))
    for label, output in (("closed form", report.output), ("normalized", normalize(report.output))):
        mismatch = first_mismatch(to_series(output, t.order), oracle, t.order)
        t.check(mismatch is None, f"{label} disagrees with U_n oracle at x^{mismatch}", **params)

    m = rng.between(1, 3)
    try:
        twice = normalize(u_closed_form(m, report.output).output)
        once = normalize(u_closed_form(n * m, term).output)
    except InvalidParameter as e:
        log.debug(f"Skipping composition check for U_{m} U_{n}: {e}")
    else:
        mismatch = first_mismatch(to_series(twice, t.order), to_series(once, t.order), t.order)
        t.check(
            twice.shift == once.shift and mismatch is None,
            f"U_{m} U_{n} and U_{n * m} closed forms disagree at x^{mismatch}",
            m=m,
            **params,
        )

    # Parameter-sum identity on the divisible case of the same parameters.
    divisible = HypergeometricTerm(
        term.c0, n * (term.shift // n), term.upper, term.lower_full, term.arg_scale
    )
    try:
        image = u_closed_form(n, divisible).output
    except InvalidParameter as e:
        log.debug(f"Skipping parameter-sum identity: {e}")
        return
    t.check(
        sum_invariant_check(divisible, n),
        "Parameter-sum identity fails",
        **params,
    )
    if is_balanced(divisible):
        t.check(
            param_sum_delta(image) == param_sum_delta(divisible),
            "Balanced transform changed sum(a) - sum(b)",
            **params,
        )


# --- adjoint ---
def _adjoint(t: _Trial) -> None:
    rng = t.rng
    f = generators.random_series(rng, t.order)
    g = generators.random_series(rng, t.order)
    n = rng.between(1, 6)
    t.check(
        adjoint_check(n, f, g),
        "<f, V_n g>_R != <U_n f, g>_(R^n)",
        n=n,
        f=codec.encode_series(f),
        g=codec.encode_series(g),
    )


# --- eigen: planted eigenfunctions and perturbed impostors ---
def _planted(rng: SplitMix64, n: int):
    kind = rng.choice((EigenKind.GEOMETRIC, EigenKind.POLYLOG, EigenKind.RATIONAL_EULER))
    c0 = generators.random_rational(rng)
    if kind is EigenKind.GEOMETRIC:
        # Roots of unity with s^(n-1) = 1 keep 1/(1 - s x) an eigenfunction.
        scales = [ONE]
        if (n - 1) % 2 == 0:
            scales.append(-ONE)
        if (n - 1) % 4 == 0:
            scales.extend([GaussianRational(0, 1), GaussianRational(0, -1)])
        s = rng.choice(scales)
        return kind, 0, HypergeometricTerm(c0, 0, (ONE,), (ONE,), s), ONE
    a = rng.between(1, 3)
    if kind is EigenKind.POLYLOG:
        term = HypergeometricTerm(c0, 1, (ONE,) * (a + 1), (TWO,) * a + (ONE,))
        return kind, a, term, int_pow(GaussianRational(n), -a)
    term = HypergeometricTerm(c0, 1, (TWO,) * a, (ONE,) * a)
    return kind, a, term, int_pow(GaussianRational(n), a)


def _perturb(rng: SplitMix64, term: HypergeometricTerm) -> HypergeometricTerm:
    avoid = (ONE, TWO)
    upper, lower = list(term.upper), list(term.lower_full)
    slot = len(lower) - 1
    if rng.chance(1, 2) or slot == 0:
        upper[rng.below(len(upper))] = generators.perturbation(rng, avoid)
    else:
        lower[rng.below(slot)] = generators.perturbation(rng, avoid)
    return HypergeometricTerm(term.c0, term.shift, tuple(upper), tuple(lower), term.arg_scale)


def _eigen(t: _Trial) -> None:
    rng = t.rng
    n = rng.choice(EIGEN_INDICES)
    kind, a, term, expected = _planted(rng, n)
    mode = rng.choice(("planted", "perturbed", "shifted"))
    if mode == "perturbed":
        term = _perturb(rng, term)
    elif mode == "shifted":
        term = HypergeometricTerm(
            term.c0, rng.between(2, 7), term.upper, term.lower_full, term.arg_scale
        )
    params = {"n": n, "mode": mode, "term": codec.encode_term(term)}

    eigen_class, report = eigen_classify(term, n)
    if mode != "planted":
        t.check(
            eigen_class.kind is EigenKind.NOT_EIGEN,
            f"{mode} term classified as {eigen_class}",
            **params,
        )
        t.check(
            report.witness is not None,
            f"{mode} term rejected without a witness index",
            **params,
        )
        if term.shift == 1 and is_balanced(term):
            t.check(
                not root_multiset_check(term, n),
                "Root multisets agree for a rejected term",
                **params,
            )
        return

    t.check(
        eigen_class.kind is kind and (kind is EigenKind.GEOMETRIC or eigen_class.a == a),
        f"Planted {kind.value}({a}) classified as {eigen_class}",
        **params,
    )
    t.check(
        report.is_eigen and report.eigenvalue == expected,
        f"Eigenvalue {report.eigenvalue} != {format_scalar(expected)}",
        **params,
    )
    t.check(
        interest_identity(term, n),
        "n^gamma_a prod (a)_{n-1} != n^gamma_b prod (b)_{n-1}",
        **params,
    )
    if term.shift == 1:
        t.check(is_balanced(term), "Accepted eigen-term is not balanced", **params)
        t.check(root_multiset_check(term, n), "Root multisets differ for an eigen-term", **params)
        t.check(
            simultaneous_coefficients(term),
            "c_k != lambda_k c_1 for an eigen-term",
            **params,
        )


# --- spectrum ---
def _spectrum(t: _Trial) -> None:
    if t.trial == 0:
        grid = [(n, range(-4, 5)) for n in (2, 3, 5)]
    else:
        i = t.rng.between(-6, 6)
        grid = [(t.rng.between(2, 9), range(i, i + 1))]
    for n, i_range in grid:
        params = {"n": n, "i_range": [min(i_range), max(i_range)]}
        reports = spectrum_witness(n, i_range, t.order)
        t.check(
            all(r.checked_to >= t.order for _, r in reports),
            "Spectrum check compared fewer coefficients than requested",
            **params,
        )


# --- multiplicative ---
FIXED_CM_CASES = (
    ((TWO, TWO), (ONE, ONE), 30, 2, None),
    ((ONE, ONE, ONE), (TWO, TWO, ONE), 30, -2, None),
    ((GaussianRational.of("1/2"),), (ONE,), 8, None, (2, 2)),
)


def _multiplicative(t: _Trial) -> None:
    rng = t.rng
    if t.trial == 0:
        for upper, lower, bound, exponent, witness in FIXED_CM_CASES:
            report = multiplicative_classify(upper, lower, bound)
            t.check(
                report.exponent == exponent and report.witness == witness,
                f"classify-cm gave exponent {report.exponent}, witness {report.witness}",
                upper=codec.encode_scalars(upper),
                lower=codec.encode_scalars(lower),
                bound=bound,
            )

    bound = max(t.order, 4)
    if rng.chance(1, 2):
        n_values = (2, 3, 4, 5)
        _, _, term, _ = _planted(rng, 2)
        if term.shift == 0:
            term = HypergeometricTerm(term.c0, 1, term.upper, term.lower_full)
        params = {"term": codec.encode_term(term), "bound": bound}
        report = multiplicative_classify(term.upper, term.lower_full, bound)
        gamma = gamma_counts(term)
        gamma_exponent = gamma.gamma_b - gamma.gamma_a
        t.check(
            report.is_cm and report.exponent == gamma_exponent,
            f"Structured parameters not classified cm (exponent {report.exponent})",
            **params,
        )
        t.check(
            simultaneous_eigen_check(term, n_values),
            f"Not a simultaneous eigenfunction of U_n for n in {n_values}",
            **params,
        )
        return

    upper = generators.random_params(rng, rng.between(0, 3))
    lower = generators.random_params(rng, rng.between(0, 2), lower=True) + [ONE]
    params = {
        "upper": codec.encode_scalars(upper),
        "lower": codec.encode_scalars(lower),
        "bound": bound,
    }
    # Brute force and structure are compared inside; a disagreement raises.
    report = multiplicative_classify(upper, lower, bound)
    if not report.is_cm:
        t.check(
            report.witness is not None or report.vanishes_at is not None,
            "Non-cm verdict without witness",
            **params,
        )


SUITES: Dict[str, Callable[[_Trial], None]] = {
    "algebra": _algebra,
    "pochhammer": _pochhammer,
    "transform": _transform,
    "adjoint": _adjoint,
    "eigen": _eigen,
    "spectrum": _spectrum,
    "multiplicative": _multiplicative,
}

# Truncation orders used when the caller does not pass one.
SUITE_ORDERS = {
    "algebra": 240,
    "pochhammer": 1,
    "transform": 40,
    "adjoint": 64,
    "eigen": 64,
    "spectrum": 128,
    "multiplicative": 24,
}


def run_trial(suite: str, seed: int, trial: int, order: int) -> List[Dict[str, Any]]:
    """Runs one trial; unexpected exceptions become failures of that trial."""
    t = _Trial(suite, seed, trial, order)
    try:
        SUITES[suite](t)
    except Exception as e:
        log.error(f"{suite} trial {trial} raised {type(e).__name__}: {e}", exc_info=True)
        t.fail(f"{type(e).__name__}: {e}")
    log.debug(f"{suite} trial {trial}: {len(t.failures)} failure(s)")
    return t.failures


def _run_batch(suite: str, seed: int, trials: Sequence[int], order: int) -> List[Dict[str, Any]]:
    failures: List[Dict[str, Any]] = []
    for trial in trials:
        failures.extend(run_trial(suite, seed, trial, order))
    return failures


def run_suite(
    suite: str,
    trials: int,
    seed: int,
    order: Optional[int] = None,
    workers: Optional[int] = None,
) -> VerificationRun:
    """
    Runs ``trials`` seeded trials of one suite.

    Args:
        suite: One of SUITES.
        trials: Number of trials, >= 1.
        seed: 64-bit unsigned seed.
        order: Truncation order; the suite default when None.
        workers: Worker processes; config.VERIFY_WORKERS when None.

    Returns:
        The run, with failures sorted by trial so the result does not
        depend on scheduling.
    """
    if suite not in SUITES:
        raise ValueError(f"Unknown suite '{suite}'")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    order = SUITE_ORDERS[suite] if order is None else order
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    workers = config.VERIFY_WORKERS if workers is None else workers

    log.info(f"Running suite '{suite}': {trials} trial(s), seed {seed}, order {order}")
    start_time = time.time()
    indices = list(range(trials))
    if workers > 1 and trials > 1:
        batches = Utl.split_list(indices, -(-trials // workers))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_run_batch, suite, seed, batch, order) for batch in batches
            ]
            failures = [f for future in futures for f in future.result()]
    else:
        failures = _run_batch(suite, seed, indices, order)

    failures.sort(key=lambda failure: failure["trial"])
    run = VerificationRun(suite, seed, trials, order, failures)
    elapsed = time.time() - start_time
    if failures:
        log.warning(f"Suite '{suite}' recorded {len(failures)} failure(s) in {elapsed:.2f}s")
    else:
        log.info(f"Suite '{suite}' passed in {elapsed:.2f}s")
    return run


def run_all(
    trials: int, seed: int, order: Optional[int] = None, workers: Optional[int] = None
) -> List[VerificationRun]:
    return [run_suite(name, trials, seed, order, workers) for name in SUITES]


