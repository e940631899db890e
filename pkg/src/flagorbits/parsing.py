"""Recursive-descent parsers for the CLI literal forms.

Grammar (whitespace insignificant):

    poly    := ["+"|"-"] term { ("+"|"-") term }
    term    := coeff ["*" tpow] | tpow
    tpow    := "t" ["^" int]
    coeff   := int ["/" posint]
    matrix  := "[[" poly "," poly "]" "," "[" poly "," poly "]]" ["@" posint]
    point   := "[" int "," poly "]" ["'"]
    label   := ("E"|"O") "_" int [":" tag {"," tag}]     tag := "open"|"hyp"

Parsed polynomials round-trip through the canonical rendering.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import LiteralSyntaxError
from .flagpoint import FlagPoint, make_point
from .laurent import Coeff, LaurentPoly
from .loopgroup import GroupElement
from .orbits import HYP, OPEN, OrbitLabel


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, char: str) -> None:
        if self.peek() != char:
            raise LiteralSyntaxError(f"expected {char!r}", self.pos)
        self.pos += 1

    def accept(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise LiteralSyntaxError("expected an integer", start)
        return int(self.text[start : self.pos])

    def done(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            raise LiteralSyntaxError("trailing input", self.pos)


def _coeff(s: _Scanner) -> Coeff:
    num = s.integer()
    if s.accept("/"):
        start = s.pos
        den = s.integer()
        if den <= 0:
            raise LiteralSyntaxError("denominator must be positive", start)
        return mpq(num, den)
    return mpq(num)


def _tpow(s: _Scanner) -> int:
    s.take("t")
    if s.accept("^"):
        return s.integer()
    return 1


def _term(s: _Scanner, sign: int) -> tuple[Coeff, int]:
    if s.peek() == "t":
        return mpq(sign), _tpow(s)
    c = _coeff(s) * sign
    if s.accept("*"):
        return c, _tpow(s)
    return c, 0


def _poly(s: _Scanner) -> LaurentPoly:
    coeffs: dict[int, Coeff] = {}
    sign = -1 if s.accept("-") else 1
    if sign == 1:
        s.accept("+")
    while True:
        c, k = _term(s, sign)
        coeffs[k] = coeffs.get(k, mpq(0)) + c
        if s.accept("+"):
            sign = 1
        elif s.accept("-"):
            sign = -1
        else:
            return LaurentPoly(coeffs)


def parse_poly(text: str) -> LaurentPoly:
    s = _Scanner(text)
    p = _poly(s)
    s.done()
    return p


def parse_coeff(text: str) -> Coeff:
    s = _Scanner(text)
    sign = -1 if s.accept("-") else 1
    c = _coeff(s) * sign
    s.done()
    return c


def parse_matrix(text: str, default_prec: int | None = None) -> GroupElement:
    """Parse ``[[a, b], [c, d]]`` with an optional ``@P`` truncation suffix.

    Without the suffix the matrix is exact (``default_prec``, if given,
    overrides that) and must have polynomial determinant exactly 1; the
    constructor enforces the determinant contract either way.
    """
    s = _Scanner(text)
    s.take("[")
    rows = []
    for row in range(2):
        s.take("[")
        first = _poly(s)
        s.take(",")
        second = _poly(s)
        s.take("]")
        rows.append((first, second))
        if row == 0:
            s.take(",")
    s.take("]")
    prec = default_prec
    if s.accept("@"):
        start = s.pos
        prec = s.integer()
        if prec < 1:
            raise LiteralSyntaxError("precision must be >= 1", start)
    s.done()
    (a, b), (c, d) = rows
    return GroupElement(a, b, c, d, prec)


def parse_point(text: str) -> FlagPoint:
    """Parse ``[n, p]`` or ``[n, p]'``, applying the truncation convention."""
    s = _Scanner(text)
    s.take("[")
    n = s.integer()
    s.take(",")
    p = _poly(s)
    s.take("]")
    is_primed = s.accept("'")
    s.done()
    return make_point(is_primed, n, p)


def parse_label(text: str) -> OrbitLabel:
    s = _Scanner(text)
    family = s.peek()
    if family not in ("E", "O"):
        raise LiteralSyntaxError("label must start with 'E' or 'O'", s.pos)
    s.pos += 1
    s.take("_")
    n = s.integer()
    tags: list[str] = []
    if s.accept(":"):
        while True:
            s.skip_ws()
            for tag in (OPEN, HYP):
                if s.text.startswith(tag, s.pos):
                    s.pos += len(tag)
                    tags.append(tag)
                    break
            else:
                raise LiteralSyntaxError("expected 'open' or 'hyp'", s.pos)
            if not s.accept(","):
                break
    s.done()
    return OrbitLabel(family, n, tuple(tags))
