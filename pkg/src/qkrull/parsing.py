"""Tokenizer and precedence-climbing parser for the polynomial text syntax.

Polynomials use ``+ - * ^``, integer literals, identifiers and parentheses.
``^`` binds tighter than unary minus, which binds tighter than ``*``, which
binds tighter than binary ``+``/``-``.  Exponents must be integer literals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import QKrullError
from .poly import MAX_EXP, Polynomial, PolyRing


class ParseError(QKrullError):
    """Base for all text-format errors; carries a source location."""

    kind = "parse"

    def __init__(self, message, text="", line=1, col=1, source="<input>"):
        self.message = message
        self.text = text
        self.line = line
        self.col = col
        self.source = source
        super().__init__(self.render())

    def snippet(self) -> str:
        lines = self.text.splitlines() or [""]
        src = lines[self.line - 1] if 0 < self.line <= len(lines) else ""
        return f"{src}\n{' ' * (self.col - 1)}^"

    def render(self) -> str:
        head = f"{self.source}:{self.line}:{self.col}: {self.kind} error: {self.message}"
        return f"{head}\n{self.snippet()}"

    def to_dict(self) -> dict:
        return {"error": self.kind, "message": self.message, "line": self.line,
                "column": self.col, "source": self.source}


class LexError(ParseError):
    kind = "lexical"


class RingSyntaxError(ParseError):
    kind = "syntax"


class SemanticError(ParseError):
    kind = "semantic"


class UnknownVariableError(SemanticError):
    pass


class NonPrimeModulusError(SemanticError):
    pass


class UnitIdealError(SemanticError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, STRING, OP, EOF
    value: str
    line: int
    col: int
    pos: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<INT>\d+)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<STRING>"[^"\n]*")
  | (?P<OP>[-+*^(),:\[\]])
""", re.VERBOSE)


def tokenize(text: str, source: str = "<input>") -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r}", text, line,
                           pos - line_start + 1, source)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            value = m.group()
            if kind == "STRING":
                value = value[1:-1]
            tokens.append(Token(kind, value, line, pos - line_start + 1, pos))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1, pos))
    return tokens


class TokenStream:
    def __init__(self, text: str, source: str = "<input>"):
        self.text = text
        self.source = source
        self.tokens = tokenize(text, source)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.cur
        return tok.kind == kind and (value is None or tok.value == value)

    def expect(self, kind: str, value: str | None = None, what: str | None = None) -> Token:
        if not self.at(kind, value):
            self.error(f"expected {what or value or kind}, found {describe(self.cur)}")
        return self.advance()

    def error(self, message, tok: Token | None = None, cls=RingSyntaxError):
        tok = tok or self.cur
        raise cls(message, self.text, tok.line, tok.col, self.source)


def describe(tok: Token) -> str:
    if tok.kind == "EOF":
        return "end of input"
    return repr(tok.value)


# binary operator -> (precedence, right associative)
_BINARY = {"+": (1, False), "-": (1, False), "*": (2, False), "^": (4, True)}
_UNARY_PREC = 3
KEYWORDS = frozenset({"ring", "ideal", "decomposition", "component", "prime"})


class PolynomialParser:
    """Evaluates polynomial expressions directly into a :class:`PolyRing`."""

    def __init__(self, stream: TokenStream, ring: PolyRing):
        self.ts = stream
        self.ring = ring

    def parse_expr(self, min_prec: int = 1) -> Polynomial:
        lhs = self.parse_unary()
        while True:
            tok = self.ts.cur
            if tok.kind != "OP" or tok.value not in _BINARY:
                return lhs
            prec, right = _BINARY[tok.value]
            if prec < min_prec:
                return lhs
            self.ts.advance()
            if tok.value == "^":
                lhs = lhs ** self.parse_exponent()
                continue
            rhs = self.parse_expr(prec if right else prec + 1)
            if tok.value == "+":
                lhs = lhs + rhs
            elif tok.value == "-":
                lhs = lhs - rhs
            else:
                lhs = lhs * rhs

    def parse_unary(self) -> Polynomial:
        if self.ts.at("OP", "-"):
            self.ts.advance()
            return -self.parse_expr(_UNARY_PREC)
        if self.ts.at("OP", "+"):
            self.ts.advance()
            return self.parse_expr(_UNARY_PREC)
        return self.parse_atom()

    def parse_exponent(self) -> int:
        tok = self.ts.cur
        if tok.kind != "INT":
            self.ts.error(f"exponent must be a non-negative integer literal, found {describe(tok)}")
        self.ts.advance()
        n = int(tok.value)
        if n > MAX_EXP:
            self.ts.error(f"exponent {n} exceeds the cap {MAX_EXP}", tok, SemanticError)
        return n

    def parse_atom(self) -> Polynomial:
        tok = self.ts.cur
        if tok.kind == "INT":
            self.ts.advance()
            return self.ring.constant(int(tok.value))
        if tok.kind == "IDENT" and tok.value not in KEYWORDS:
            self.ts.advance()
            if tok.value not in self.ring.names:
                self.ts.error(f"unknown variable {tok.value!r}", tok, UnknownVariableError)
            return self.ring.var(tok.value)
        if self.ts.at("OP", "("):
            self.ts.advance()
            inner = self.parse_expr()
            self.ts.expect("OP", ")", "')'")
            return inner
        self.ts.error(f"expected a polynomial, found {describe(tok)}")

    def parse_list(self) -> list[Polynomial]:
        polys = [self.parse_expr()]
        while self.ts.at("OP", ","):
            self.ts.advance()
            polys.append(self.parse_expr())
        return polys


def parse_polynomial(text: str, ring: PolyRing, source: str = "<input>") -> Polynomial:
    ts = TokenStream(text, source)
    f = PolynomialParser(ts, ring).parse_expr()
    if not ts.at("EOF"):
        ts.error(f"unexpected {describe(ts.cur)} after polynomial")
    return f


def parse_polynomial_list(text: str, ring: PolyRing, source: str = "<input>") -> list[Polynomial]:
    """Comma-separated polynomials; an empty string gives an empty list."""
    ts = TokenStream(text, source)
    if ts.at("EOF"):
        return []
    polys = PolynomialParser(ts, ring).parse_list()
    if not ts.at("EOF"):
        ts.error(f"unexpected {describe(ts.cur)} after polynomial list")
    return polys
