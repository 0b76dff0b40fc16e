import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from hecke_series.core.arith import GaussianRational, format_rational, format_scalar
from hecke_series.core.hecke import TransformReport
from hecke_series.core.hyper import HypergeometricTerm
from hecke_series.core.series import PowerSeries
from hecke_series.core.spectral import EigenClass, EigenReport, MultiplicativeReport

log = logging.getLogger(__name__)


# --- Scalars ---
def encode_scalar(x: Optional[GaussianRational]) -> Optional[str]:
    return None if x is None else format_scalar(x)


def encode_pair(x: GaussianRational) -> List[str]:
    """["re", "im"], each a rational in p/q syntax."""
    return [format_rational(x.re), format_rational(x.im)]


def encode_scalars(values: Sequence[GaussianRational]) -> List[str]:
    return [format_scalar(v) for v in values]


# --- Series and terms ---
def encode_series(f: PowerSeries) -> Dict[str, Any]:
    return {
        "shift": f.shift,
        "known_to": f.known_to,
        "coeffs": [encode_pair(c) for c in f.coeffs],
    }


def encode_term(t: HypergeometricTerm) -> Dict[str, Any]:
    """The term with ``lower`` holding the materialized k! slot."""
    return {
        "c0": format_scalar(t.c0),
        "shift": t.shift,
        "upper": encode_scalars(t.upper),
        "lower": encode_scalars(t.lower_full),
        "arg_scale": format_scalar(t.arg_scale),
    }


def encode_transform(report: TransformReport) -> Dict[str, Any]:
    return {
        "n": report.n,
        "case_divides": report.case_divides,
        "r": report.r,
        "input": encode_term(report.input),
        "output": encode_term(report.output),
        "shape": list(report.shape),
        "expected_shape": list(report.expected_shape),
    }


# --- Spectral reports ---
def encode_eigen(report: EigenReport) -> Dict[str, Any]:
    return {
        "is_eigen": report.is_eigen,
        "eigenvalue": encode_scalar(report.eigenvalue),
        "gamma_a": report.gamma.gamma_a if report.gamma else None,
        "gamma_b": report.gamma.gamma_b if report.gamma else None,
        "witness": report.witness,
        "checked_to": report.checked_to,
    }


def encode_eigen_class(eigen_class: EigenClass) -> Dict[str, Any]:
    return {"kind": eigen_class.kind.value, "a": eigen_class.a, "label": str(eigen_class)}


def encode_multiplicative(report: MultiplicativeReport) -> Dict[str, Any]:
    document = {
        "is_cm": report.is_cm,
        "exponent": report.exponent,
        "witness": list(report.witness) if report.witness else None,
        "bound": report.bound,
        "vanishes_at": report.vanishes_at,
    }
    if report.witness_values:
        value, product = report.witness_values
        document["witness_values"] = {
            "c_mk": format_scalar(value),
            "c_m_times_c_k": format_scalar(product),
        }
    return document


# --- Rendering ---
def dumps(document: Any) -> str:
    """Stable JSON text (key order as built, two-space indent)."""
    return json.dumps(document, indent=2, ensure_ascii=False)


def decode_pair(pair: Sequence[str]) -> GaussianRational:
    return GaussianRational(Fraction(pair[0]), Fraction(pair[1]))


def render_series_table(series: Dict[str, Any]) -> str:
    """Exponent and coefficient columns, one row per known exponent >= shift."""
    rows = ["exponent\tcoefficient"]
    for offset, pair in enumerate(series["coeffs"]):
        rows.append(f"{series['shift'] + offset}\t{format_scalar(decode_pair(pair))}")
    return "\n".join(rows)


def render_table(document: Dict[str, Any]) -> str:
    """Flat key/value table for report documents; nested values are inlined as JSON."""
    rows = []
    for key, value in document.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False)
        elif value is None:
            value = "-"
        rows.append(f"{key}\t{value}")
    return "\n".join(rows)
