"""Polynomial expression parser.

Grammar (EBNF)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ["*" | "/"] unary } ;      (* juxtaposition multiplies *)
    unary   = ("+" | "-") unary | power ;
    power   = atom [ "^" integer ] ;
    atom    = integer | name | "(" expr ")" ;

Names are ``z1 .. zn`` (``x``, ``y``, ``z`` are aliases of ``z1``, ``z2``,
``z3``).  Exponents are non-negative integer literals; division is allowed
only by a non-zero constant.  Errors carry the line and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Polynomial, constant, default_names, to_string, variable

ALIASES = {"x": "z1", "y": "z2", "z": "z3"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    line: int
    column: int


def _tokenize(text: str, names: Sequence[str]) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    by_length = sorted(set(names) | set(ALIASES if "z1" in names else ()), key=len, reverse=True)
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == ".":
                raise ParseError("decimal literals are not supported; use a fraction", line, col + j - i)
            tokens.append(Token("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append(Token("op", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalpha() or ch == "_":
            for name in by_length:
                if text.startswith(name, i):
                    end = i + len(name)
                    if end < len(text) and (text[end].isdigit() or text[end] == "_"):
                        continue
                    tokens.append(Token("name", name, line, col))
                    i = end
                    col += len(name)
                    break
            else:
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                raise ParseError(f"unknown identifier {text[i:j]!r}", line, col)
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, names):
        self.tokens = tokens
        self.pos = 0
        self.names = list(names)
        self.nvars = len(self.names)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.column)

    def expr(self) -> Polynomial:
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_factor(self, tok) -> bool:
        return tok.kind in ("num", "name") or (tok.kind == "op" and tok.text == "(")

    def term(self) -> Polynomial:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.take()
                value = value * self.unary()
            elif tok.kind == "op" and tok.text == "/":
                self.take()
                den = self.unary()
                if not den.is_constant() or den.is_zero():
                    self.error("division is only allowed by a non-zero constant", tok)
                value = value * (Fraction(1) / Fraction(den.constant_term()))
            elif self._starts_factor(tok):
                value = value * self.unary()
            else:
                return value

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok.text == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.take()
            exp = self.peek()
            if exp.kind == "op" and exp.text == "-":
                self.error("negative exponents are not allowed", exp)
            if exp.kind != "num":
                self.error("exponent must be a non-negative integer literal", exp)
            self.take()
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text in "/^":
                self.error("exponent must be a non-negative integer literal", nxt)
            return base ** int(exp.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "num":
            return constant(int(tok.text), self.nvars)
        if tok.kind == "name":
            name = ALIASES.get(tok.text, tok.text) if tok.text not in self.names else tok.text
            if name not in self.names:
                raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.column)
            return variable(self.names.index(name) + 1, self.nvars)
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            close = self.take()
            if close.kind != "op" or close.text != ")":
                raise ParseError("expected ')'", close.line, close.column)
            return value
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.line, tok.column)
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)


def parse(text: str, nvars: int = 3, names: Sequence[str] | None = None) -> Polynomial:
    """Parse an expression into an expanded :class:`Polynomial`.

    >>> str(parse("x^2 + y^2 + z^2"))
    'z1^2 + z2^2 + z3^2'
    """
    names = tuple(names) if names is not None else default_names(nvars)
    tokens = _tokenize(text, names)
    p = _Parser(tokens, names)
    if p.peek().kind == "end":
        p.error("empty expression")
    value = p.expr()
    if p.peek().kind != "end":
        p.error(f"unexpected {p.peek().text!r}")
    return value


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical printed form; ``parse(format_polynomial(p)) == p``."""
    return to_string(p, names)
