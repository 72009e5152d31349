"""Parser and canonical printer for field expressions.

Grammar (whitespace insignificant, left-associative binary operators):

    expr       := term { ("+"|"-") term }
    term       := unary { ("*"|"/") unary }
    unary      := ["-"] power
    power      := atom ["^" signed_int]
    atom       := integer | "q" | "a" | "(" expr ")"
    signed_int := ["-"] digits

Precedence: ^ binds tighter than unary minus, which binds tighter than
* and /, which bind tighter than + and -.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .field import (
    DivisionByZero,
    Poly2,
    RationalFunction,
    RF_A,
    RF_ONE,
    RF_Q,
    RF_ZERO,
    rf_int,
)


class ExprSyntaxError(Exception):
    """Syntax error with a 1-based character position."""

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected}")


@dataclass(frozen=True)
class IntLiteral:
    value: int


@dataclass(frozen=True)
class Var:
    name: str  # "q" or "a"


@dataclass(frozen=True)
class Neg:
    child: "ExprAst"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of "+", "-", "*", "/"
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Pow:
    base: "ExprAst"
    exponent: int


ExprAst = Union[IntLiteral, Var, Neg, BinOp, Pow]


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "q", "a", "op", "eof"
    text: str
    position: int  # 1-based


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        pos = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], pos))
            i = j
        elif ch == "q":
            tokens.append(_Token("q", ch, pos))
            i += 1
        elif ch == "a":
            tokens.append(_Token("a", ch, pos))
            i += 1
        elif ch in "+-*/^()":
            tokens.append(_Token("op", ch, pos))
            i += 1
        else:
            raise ExprSyntaxError(pos, f"a token, found {ch!r}")
    tokens.append(_Token("eof", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, text: str) -> None:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise ExprSyntaxError(tok.position, f"'{text}'")
        self.advance()

    def parse_expr(self) -> ExprAst:
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self) -> ExprAst:
        node = self.parse_unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.parse_unary())
        return node

    def parse_unary(self) -> ExprAst:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            return Neg(self.parse_power())
        return self.parse_power()

    def parse_power(self) -> ExprAst:
        base = self.parse_atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            return Pow(base, self.parse_signed_int())
        return base

    def parse_signed_int(self) -> int:
        negative = False
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            negative = True
            tok = self.peek()
        if tok.kind != "int":
            raise ExprSyntaxError(tok.position, "an integer exponent")
        self.advance()
        value = int(tok.text)
        return -value if negative else value

    def parse_atom(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return IntLiteral(int(tok.text))
        if tok.kind == "q":
            self.advance()
            return Var("q")
        if tok.kind == "a":
            self.advance()
            return Var("a")
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(tok.position, "an integer, 'q', 'a', or '('")


def parse_expr(text: str) -> ExprAst:
    parser = _Parser(_tokenize(text))
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ExprSyntaxError(tok.position, "end of input or an operator")
    return node


def evaluate(ast: ExprAst) -> RationalFunction:
    """Evaluate an expression tree to a field element."""
    if isinstance(ast, IntLiteral):
        return rf_int(ast.value)
    if isinstance(ast, Var):
        return RF_Q if ast.name == "q" else RF_A
    if isinstance(ast, Neg):
        return -evaluate(ast.child)
    if isinstance(ast, Pow):
        base = evaluate(ast.base)
        if base.is_zero and ast.exponent < 0:
            raise DivisionByZero("zero raised to a negative power")
        return base**ast.exponent
    if isinstance(ast, BinOp):
        left = evaluate(ast.left)
        right = evaluate(ast.right)
        if ast.op == "+":
            return left + right
        if ast.op == "-":
            return left - right
        if ast.op == "*":
            return left * right
        return left / right
    raise TypeError(f"not an expression node: {ast!r}")


def parse_value(text: str) -> RationalFunction:
    return evaluate(parse_expr(text))


def _monomial_str(mono, coeff) -> str:
    """One term, without sign: coefficient magnitude 1 is omitted."""
    eq, ea = mono
    factors = []
    mag = abs(coeff)
    if mag != 1 or (eq == 0 and ea == 0):
        factors.append(str(mag))
    if eq:
        factors.append("q" if eq == 1 else f"q^{eq}")
    if ea:
        factors.append("a" if ea == 1 else f"a^{ea}")
    return "*".join(factors)


def print_poly(p: Poly2) -> str:
    """Polynomial in the fixed monomial order, e.g. "3*q^2*a - q + 5"."""
    if p.is_zero:
        return "0"
    pieces = []
    for index, (mono, coeff) in enumerate(p.sorted_terms()):
        body = _monomial_str(mono, coeff)
        if index == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(pieces)


def print_canonical(x: RationalFunction) -> str:
    """Canonical text form; re-parsing yields an equal field element."""
    if x.den.is_constant and x.den.constant_value() == 1:
        return print_poly(x.num)
    return f"({print_poly(x.num)})/({print_poly(x.den)})"
