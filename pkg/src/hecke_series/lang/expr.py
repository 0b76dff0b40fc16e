"""
AST of the series expression language.

Every node is an immutable dataclass. ``format_expr`` prints the canonical
source text (one space around ``+``, explicit parentheses wherever the
grammar needs them) which parses back to an equal tree; ``to_dict`` gives
the nested ``{"node": kind, ...}`` JSON dump.
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple, Union

from hecke_series.core.arith import ONE, GaussianRational, format_scalar
from hecke_series.core.hyper import HypergeometricTerm, check_lower


def _scalars(values) -> Tuple[GaussianRational, ...]:
    return tuple(GaussianRational.of(v) for v in values)


@dataclass(frozen=True)
class HypLit:
    """x^shift * c0 * pFq(upper; lower; arg_scale * x), lower without the k! slot."""

    c0: GaussianRational
    shift: int
    upper: Tuple[GaussianRational, ...]
    lower: Tuple[GaussianRational, ...]
    arg_scale: GaussianRational = ONE

    def __post_init__(self):
        object.__setattr__(self, "c0", GaussianRational.of(self.c0))
        object.__setattr__(self, "arg_scale", GaussianRational.of(self.arg_scale))
        object.__setattr__(self, "upper", _scalars(self.upper))
        object.__setattr__(self, "lower", _scalars(self.lower))
        check_lower(self.lower)

    def term(self) -> HypergeometricTerm:
        return HypergeometricTerm.from_pfq(
            self.upper, self.lower, self.shift, self.c0, self.arg_scale
        )


@dataclass(frozen=True)
class PolyLog:
    i: int


@dataclass(frozen=True)
class Geom:
    pass


@dataclass(frozen=True)
class UOp:
    n: int
    arg: "Expr"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"U({self.n}) is not an operator")


@dataclass(frozen=True)
class VOp:
    n: int
    arg: "Expr"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"V({self.n}) is not an operator")


@dataclass(frozen=True)
class Euler:
    count: int
    arg: "Expr"

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"Euler power must be >= 0, got {self.count}")


@dataclass(frozen=True)
class Hadamard:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sum:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Scale:
    scalar: GaussianRational
    arg: "Expr"

    def __post_init__(self):
        object.__setattr__(self, "scalar", GaussianRational.of(self.scalar))


@dataclass(frozen=True)
class Shift:
    """x^j times a non-literal atom; shifts on pFq literals fold into HypLit."""

    j: int
    arg: "Expr"

    def __post_init__(self):
        if self.j < 0:
            raise ValueError(f"Shift must be >= 0, got {self.j}")


Expr = Union[HypLit, PolyLog, Geom, UOp, VOp, Euler, Hadamard, Sum, Scale, Shift]

_ATOMS = (HypLit, PolyLog, Geom, Hadamard, Shift)


# --- Formatting ---
def _scalar_list(values) -> str:
    return ",".join(format_scalar(v) for v in values)


def _format_literal(e: HypLit) -> str:
    text = f"pFq([{_scalar_list(e.upper)}],[{_scalar_list(e.lower)}]"
    if e.arg_scale != ONE:
        text += f",scale={format_scalar(e.arg_scale)}"
    text += ")"
    if e.shift:
        text = f"x^{e.shift}*{text}"
    if e.c0 != ONE:
        # Constants other than 1 only arise programmatically.
        text = f"{format_scalar(e.c0)}*{text}"
    return text


def _as_atom(e: "Expr") -> str:
    text = format_expr(e)
    if isinstance(e, _ATOMS) and not (isinstance(e, HypLit) and e.c0 != ONE):
        return text
    return f"({text})"


def _as_prefix(e: "Expr") -> str:
    if isinstance(e, (Sum, Scale)):
        return f"({format_expr(e)})"
    return _as_atom(e) if isinstance(e, HypLit) else format_expr(e)


def format_expr(e: "Expr") -> str:
    """Canonical source text of e."""
    if isinstance(e, HypLit):
        return _format_literal(e)
    if isinstance(e, PolyLog):
        return f"polylog({e.i})"
    if isinstance(e, Geom):
        return "geom"
    if isinstance(e, UOp):
        return f"U({e.n}) {_as_prefix(e.arg)}"
    if isinstance(e, VOp):
        return f"V({e.n}) {_as_prefix(e.arg)}"
    if isinstance(e, Euler):
        power = "" if e.count == 1 else f"^{e.count}"
        return f"euler{power} {_as_prefix(e.arg)}"
    if isinstance(e, Hadamard):
        return f"hadamard({format_expr(e.left)}, {format_expr(e.right)})"
    if isinstance(e, Sum):
        right = format_expr(e.right)
        if isinstance(e.right, Sum):
            right = f"({right})"
        return f"{format_expr(e.left)} + {right}"
    if isinstance(e, Scale):
        return f"{format_scalar(e.scalar)}*{_as_prefix(e.arg)}"
    if isinstance(e, Shift):
        return f"x^{e.j}*{_as_atom(e.arg)}"
    raise TypeError(f"Not an expression node: {e!r}")


# --- JSON dump ---
def to_dict(e: "Expr") -> Dict[str, Any]:
    """Nested {"node": kind, ...} dump with scalars in textual syntax."""
    if isinstance(e, HypLit):
        return {
            "node": "HypLit",
            "c0": format_scalar(e.c0),
            "shift": e.shift,
            "upper": [format_scalar(v) for v in e.upper],
            "lower": [format_scalar(v) for v in e.lower],
            "arg_scale": format_scalar(e.arg_scale),
        }
    if isinstance(e, PolyLog):
        return {"node": "PolyLog", "i": e.i}
    if isinstance(e, Geom):
        return {"node": "Geom"}
    if isinstance(e, (UOp, VOp)):
        return {"node": type(e).__name__, "n": e.n, "arg": to_dict(e.arg)}
    if isinstance(e, Euler):
        return {"node": "Euler", "count": e.count, "arg": to_dict(e.arg)}
    if isinstance(e, (Hadamard, Sum)):
        return {
            "node": type(e).__name__,
            "left": to_dict(e.left),
            "right": to_dict(e.right),
        }
    if isinstance(e, Scale):
        return {"node": "Scale", "scalar": format_scalar(e.scalar), "arg": to_dict(e.arg)}
    if isinstance(e, Shift):
        return {"node": "Shift", "j": e.j, "arg": to_dict(e.arg)}
    raise TypeError(f"Not an expression node: {e!r}")
