"""
Recursive-descent parser for the series expression language.

    expr     := sum
    sum      := prod (('+' | '-') prod)*
    prod     := scalar '*' prefix | prefix
    prefix   := 'U' '(' nat ')' prefix | 'V' '(' nat ')' prefix
              | 'euler' ('^' nat)? prefix | atom
    atom     := 'pFq' '(' '[' scalars? ']' ',' '[' scalars? ']'
                    (',' 'scale' '=' scalar)? ')'
              | 'x^' nat '*' atom | 'polylog' '(' int ')' | 'geom'
              | 'hadamard' '(' expr ',' expr ')' | '(' expr ')'
    scalars  := scalar (',' scalar)*

Whitespace is insignificant between tokens. Subtraction ``a - b`` is read as
``Sum(a, Scale(-1, b))``.
"""

import logging
import re
from contextlib import contextmanager
from dataclasses import replace
from typing import List, Optional, Tuple

from hecke_series.core.arith import (
    SCALAR_TOKEN_RE,
    GaussianRational,
    ScalarSyntaxError,
    is_nonpositive_integer,
    parse_scalar,
)
from hecke_series.core.errors import InvalidParameter
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

_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NAT_RE = re.compile(r"\d+")
_INT_RE = re.compile(r"[+-]?\d+")
_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[+-]?\d+(?:/\d+)?|\S")

MINUS_ONE = GaussianRational(-1)

# Operators, shifts, parentheses and hadamard( ) each open one level.
MAX_NESTING = 100


class ParseError(ValueError):
    """The leftmost point where the input stops matching the grammar."""

    def __init__(self, byte_offset: int, expected: str, found: str):
        self.byte_offset = byte_offset
        self.expected = expected
        self.found = found
        super().__init__(
            f"Parse error at byte {byte_offset}: expected {expected}, found {found}"
        )


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.depth = 0

    # --- Cursor helpers ---
    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _offset(self, pos: Optional[int] = None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def _found(self) -> str:
        if self.pos >= len(self.text):
            return "end of input"
        match = _TOKEN_RE.match(self.text, self.pos)
        return repr(match.group(0)) if match else repr(self.text[self.pos])

    def _fail(self, expected: str, pos: Optional[int] = None) -> ParseError:
        if pos is not None:
            self.pos = pos
        return ParseError(self._offset(), expected, self._found())

    def _peek(self, literal: str) -> bool:
        self._skip()
        return self.text.startswith(literal, self.pos)

    def _accept(self, literal: str) -> bool:
        if self._peek(literal):
            self.pos += len(literal)
            return True
        return False

    def _expect(self, literal: str) -> None:
        if not self._accept(literal):
            raise self._fail(f"'{literal}'")

    def _peek_word(self) -> Optional[str]:
        self._skip()
        match = _WORD_RE.match(self.text, self.pos)
        return match.group(0) if match else None

    def _expect_word(self, word: str) -> None:
        if self._peek_word() != word:
            raise self._fail(f"'{word}'")
        self.pos += len(word)

    def _regex(self, pattern: re.Pattern, expected: str) -> str:
        self._skip()
        match = pattern.match(self.text, self.pos)
        if not match:
            raise self._fail(expected)
        self.pos = match.end()
        return match.group(0)

    def _nat(self, positive: bool = False) -> int:
        start = self.pos
        value = int(self._regex(_NAT_RE, "natural number"))
        if positive and value < 1:
            self._skip()
            raise self._fail("positive integer", pos=self._token_start(start))
        return value

    def _token_start(self, pos: int) -> int:
        while pos < len(self.text) and self.text[pos].isspace():
            pos += 1
        return pos

    def _scalar(self) -> GaussianRational:
        self._skip()
        start = self.pos
        match = SCALAR_TOKEN_RE.match(self.text, self.pos)
        if not match:
            raise self._fail("scalar")
        try:
            value = parse_scalar(match.group(0))
        except ScalarSyntaxError:
            raise self._fail("scalar with a nonzero denominator", pos=start) from None
        self.pos = match.end()
        return value

    def _scalars_until(self, closing: str) -> List[Tuple[int, GaussianRational]]:
        """Scalars up to ``closing``, each paired with its start position."""
        values: List[Tuple[int, GaussianRational]] = []
        if self._peek(closing):
            return values
        values.append((self.pos, self._scalar()))
        while self._accept(","):
            values.append((self._token_start(self.pos), self._scalar()))
        return values

    @contextmanager
    def _nested(self):
        self._skip()
        if self.depth >= MAX_NESTING:
            raise self._fail(f"nesting depth <= {MAX_NESTING}")
        self.depth += 1
        try:
            yield
        finally:
            self.depth -= 1

    # --- Grammar ---
    def parse(self) -> Expr:
        e = self.expr()
        self._skip()
        if self.pos < len(self.text):
            raise self._fail("'+', '-' or end of input")
        return e

    def expr(self) -> Expr:
        return self.sum()

    def sum(self) -> Expr:
        left = self.prod()
        while True:
            if self._accept("+"):
                left = Sum(left, self.prod())
            elif self._accept("-"):
                left = Sum(left, Scale(MINUS_ONE, self.prod()))
            else:
                return left

    def prod(self) -> Expr:
        self._skip()
        if SCALAR_TOKEN_RE.match(self.text, self.pos):
            scalar = self._scalar()
            self._expect("*")
            return Scale(scalar, self.prefix())
        return self.prefix()

    def prefix(self) -> Expr:
        word = self._peek_word()
        if word in ("U", "V"):
            with self._nested():
                self.pos += 1
                self._expect("(")
                n = self._nat(positive=True)
                self._expect(")")
                arg = self.prefix()
            return UOp(n, arg) if word == "U" else VOp(n, arg)
        if word == "euler":
            with self._nested():
                self.pos += len(word)
                count = self._nat() if self._accept("^") else 1
                arg = self.prefix()
            return Euler(count, arg)
        return self.atom()

    def atom(self) -> Expr:
        word = self._peek_word()
        if word == "pFq":
            return self._literal()
        if word == "x":
            with self._nested():
                self.pos += 1
                self._expect("^")
                j = self._nat()
                self._expect("*")
                inner = self.atom()
            if isinstance(inner, HypLit):
                return replace(inner, shift=inner.shift + j)
            return Shift(j, inner)
        if word == "polylog":
            self.pos += len(word)
            self._expect("(")
            i = int(self._regex(_INT_RE, "integer"))
            self._expect(")")
            return PolyLog(i)
        if word == "geom":
            self.pos += len(word)
            return Geom()
        if word == "hadamard":
            with self._nested():
                self.pos += len(word)
                self._expect("(")
                left = self.expr()
                self._expect(",")
                right = self.expr()
                self._expect(")")
            return Hadamard(left, right)
        if self._peek("("):
            with self._nested():
                self.pos += 1
                e = self.expr()
                self._expect(")")
            return e
        raise self._fail("expression (pFq, x^, polylog, geom, hadamard, U, V, euler or '(')")

    def _literal(self) -> HypLit:
        start = self._token_start(self.pos)
        self.pos += len("pFq")
        self._expect("(")
        self._expect("[")
        upper = self._scalars_until("]")
        self._expect("]")
        self._expect(",")
        self._expect("[")
        lower = self._scalars_until("]")
        self._expect("]")
        for pos, b in lower:
            if is_nonpositive_integer(b):
                raise self._fail("lower parameter that is not a nonpositive integer", pos=pos)
        scale = GaussianRational(1)
        if self._accept(","):
            self._expect_word("scale")
            self._expect("=")
            scale_pos = self._token_start(self.pos)
            scale = self._scalar()
            if scale.is_zero():
                raise self._fail("nonzero scale", pos=scale_pos)
        self._expect(")")
        try:
            return HypLit(
                GaussianRational(1),
                0,
                tuple(a for _, a in upper),
                tuple(b for _, b in lower),
                scale,
            )
        except InvalidParameter as e:
            log.debug(f"Rejected literal at byte {self._offset(start)}: {e}")
            raise self._fail("valid pFq parameters", pos=start) from None


def parse(text: str) -> Expr:
    """
    Parses one expression.

    Raises:
        ParseError: At the leftmost byte the grammar cannot extend.
    """
    return _Parser(text).parse()
