"""Small arithmetic grammar for parameter expressions and call terms.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/')? unary)*      # juxtaposition multiplies: 2q
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := INT | NAME | NAME '(' args ')' | '(' expr ')'

Calls build a ``Call`` node; plain arithmetic evaluates to ``ParamPoly``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .polys import ParamPoly, ParamSpace

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    column: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Node", ...]
    column: int


Node = Union[ParamPoly, Call]


def tokenize(text: str, line: int = 1, column_offset: int = 0) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1 + column_offset)
        col = m.start(m.lastindex) + 1 + column_offset
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), col))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), col))
        else:
            tokens.append(Token("op", m.group(3), col))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1 + column_offset))
    return tokens


class _Parser:
    def __init__(self, text: str, space: ParamSpace, line: int, column_offset: int) -> None:
        self.tokens = tokenize(text, line, column_offset)
        self.i = 0
        self.space = space
        self.line = line

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, self.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected token {self.peek().text!r}")
        return node

    def _poly(self, node: Node, tok: Token) -> ParamPoly:
        if isinstance(node, Call):
            if not node.args:
                raise ParseError(f"undeclared parameter {node.name!r}", self.line, node.column)
            raise self.error(f"call {node.name}(...) cannot take part in arithmetic", tok)
        return node

    def expr(self) -> Node:
        start = self.peek()
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance()
            rhs = self.term()
            left = self._poly(node, start)
            right = self._poly(rhs, op)
            node = left + right if op.text == "+" else left - right
        return node

    def _starts_atom(self) -> bool:
        tok = self.peek()
        return tok.kind in ("int", "name") or (tok.kind == "op" and tok.text == "(")

    def term(self) -> Node:
        start = self.peek()
        node = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.advance()
                rhs = self.unary()
                left = self._poly(node, start)
                right = self._poly(rhs, tok)
                if tok.text == "*":
                    node = left * right
                else:
                    if not right.is_constant() or right.is_zero():
                        raise self.error("division only by nonzero constants", tok)
                    node = left / right.constant_value()
            elif self._starts_atom():
                rhs = self.unary()
                node = self._poly(node, start) * self._poly(rhs, tok)
            else:
                return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return -self._poly(self.unary(), tok)
        return self.power()

    def power(self) -> Node:
        start = self.peek()
        node = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            exp = self.peek()
            if exp.kind != "int":
                raise self.error("exponent must be a non-negative integer")
            self.advance()
            node = self._poly(node, start) ** int(exp.text)
        return node

    def atom(self) -> Node:
        tok = self.advance()
        if tok.kind == "int":
            return ParamPoly.const(int(tok.text))
        if tok.kind == "name":
            if self.peek().kind == "op" and self.peek().text == "(":
                self.advance()
                args: list[Node] = []
                if not (self.peek().kind == "op" and self.peek().text == ")"):
                    args.append(self.expr())
                    while self.peek().kind == "op" and self.peek().text == ",":
                        self.advance()
                        args.append(self.expr())
                self.expect(")")
                return Call(tok.text, tuple(args), tok.column)
            if tok.text in self.space:
                return self.space.symbol(tok.text)
            return Call(tok.text, (), tok.column)
        if tok.kind == "op" and tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise self.error(f"unexpected token {tok.text or 'end of input'!r}", tok)


def parse_node(text: str, space: ParamSpace, line: int = 1, column_offset: int = 0) -> Node:
    """Parse an expression that may contain calls such as ``projective(n+r-1)``."""
    return _Parser(text, space, line, column_offset).parse()


def parse_poly(text: str, space: ParamSpace, line: int = 1, column_offset: int = 0) -> ParamPoly:
    """Parse a pure arithmetic expression; bare undeclared names are errors."""
    node = parse_node(text, space, line, column_offset)
    if isinstance(node, Call):
        if not node.args:
            raise ParseError(f"undeclared parameter {node.name!r}", line, node.column)
        raise ParseError(f"expected an arithmetic expression, found call {node.name}(...)", line, node.column)
    return node


def parse_rational(text: str, line: int = 1) -> Fraction:
    value = parse_poly(text, ParamSpace(()), line)
    return value.constant_value()
