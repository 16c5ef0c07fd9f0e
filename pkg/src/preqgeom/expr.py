"""Recursive-descent parser for coordinate expressions.

Grammar (EBNF):

    expr     = term { ("+" | "-") term } ;
    term     = factor { ("*" | "/") factor } ;
    factor   = "-" factor | power ;
    power    = atom [ "^" exponent ] ;
    exponent = [ "-" ] digits ;                      (* integer literals only *)
    atom     = number | ident | ident "(" expr ")" | "(" expr ")" ;
    ident    = letter { letter | digit | "_" } ;
    number   = digits [ "." digits ] [ ("e"|"E") [sign] digits ] ;

Function names: sin, cos, exp, log, sqrt.  Every other identifier must be a
coordinate of the target chart or a declared parameter.  Exponents are
restricted to integer literals so that jets stay exact and there are no branch
cuts.  Offsets in errors are 1-based character positions; an end-of-input
error points just past the final character.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .chart import Chart, Point
from .jets import Jet2, JetDomainError

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


class ParseError(ValueError):
    def __init__(self, offset: int, message: str, expected: str = ""):
        self.offset = offset
        self.message = message
        self.expected = expected
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"offset {offset}: {message}{hint}")


class EvalError(ArithmeticError):
    def __init__(self, offset: int, message: str):
        self.offset = offset
        super().__init__(f"offset {offset}: {message}")


@dataclass(frozen=True)
class Lit:
    value: float
    offset: int = 0


@dataclass(frozen=True)
class Coord:
    name: str
    index: int
    offset: int = 0


@dataclass(frozen=True)
class Param:
    name: str
    offset: int = 0


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Neg:
    arg: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Node"
    right: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    offset: int = 0


Node = Union[Lit, Coord, Param, Call, Neg, Bin, Pow]


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "end"
    text: str
    offset: int  # 1-based


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            bad = len(src) - len(stripped)
            raise ParseError(bad + 1, f"unexpected character {src[bad]!r}")
        for kind in ("num", "ident", "op"):
            text = m.group(kind)
            if text is not None:
                tokens.append(_Token(kind, text, m.start(kind) + 1))
                break
        pos = m.end()
    tokens.append(_Token("end", "", len(src) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], chart: Chart, params: frozenset[str]):
        self.tokens = tokens
        self.pos = 0
        self.chart = chart
        self.params = params

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op: str):
        t = self.peek()
        if t.kind == "op" and t.text == op:
            return self.advance()
        raise ParseError(t.offset, f"found {t.text!r}" if t.text else "unexpected end of input", f"'{op}'")

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance()
            node = Bin(op.text, node, self.term(), op.offset)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance()
            node = Bin(op.text, node, self.factor(), op.offset)
        return node

    def factor(self) -> Node:
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.advance()
            return Neg(self.factor(), t.offset)
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.advance()
            sign = 1
            nt = self.peek()
            if nt.kind == "op" and nt.text == "-":
                self.advance()
                sign = -1
                nt = self.peek()
            if nt.kind != "num" or not re.fullmatch(r"\d+", nt.text):
                raise ParseError(nt.offset, "exponent must be an integer literal", "integer")
            self.advance()
            return Pow(base, sign * int(nt.text), t.offset)
        return base

    def atom(self) -> Node:
        t = self.advance()
        if t.kind == "num":
            return Lit(float(t.text), t.offset)
        if t.kind == "ident":
            nt = self.peek()
            if nt.kind == "op" and nt.text == "(":
                if t.text not in FUNCTIONS:
                    raise ParseError(
                        t.offset, f"unknown function {t.text!r}", "one of " + ", ".join(FUNCTIONS)
                    )
                self.advance()
                arg = self.expr()
                self.expect_op(")")
                return Call(t.text, arg, t.offset)
            if t.text in self.chart.coords:
                return Coord(t.text, self.chart.index(t.text), t.offset)
            if t.text in self.params:
                return Param(t.text, t.offset)
            raise ParseError(
                t.offset,
                f"unknown identifier {t.text!r}",
                "a chart coordinate, declared parameter, or function",
            )
        if t.kind == "op" and t.text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(
            t.offset,
            f"found {t.text!r}" if t.text else "unexpected end of input",
            "a number, identifier, or '('",
        )


def parse(src: str, chart: Chart, params=()) -> Node:
    if not src or not src.strip():
        raise ParseError(1, "empty expression", "an expression")
    p = _Parser(_tokenize(src), chart, frozenset(params))
    node = p.expr()
    t = p.peek()
    if t.kind != "end":
        raise ParseError(t.offset, f"trailing input {t.text!r}", "end of expression")
    return node


def eval_jet(node: Node, point: Point, chart: Chart, params: Mapping[str, float] | None = None) -> Jet2:
    params = params or {}
    dim = chart.dim

    def ev(n: Node) -> Jet2:
        if isinstance(n, Lit):
            return Jet2.constant(n.value, dim)
        if isinstance(n, Coord):
            return Jet2.coordinate(point[n.index], n.index, dim)
        if isinstance(n, Param):
            try:
                return Jet2.constant(params[n.name], dim)
            except KeyError:
                raise EvalError(n.offset, f"parameter {n.name!r} has no value") from None
        if isinstance(n, Neg):
            return -ev(n.arg)
        if isinstance(n, Pow):
            try:
                return ev(n.base) ** n.exponent
            except JetDomainError as exc:
                raise EvalError(n.offset, str(exc)) from None
        if isinstance(n, Call):
            arg = ev(n.arg)
            try:
                return getattr(arg, n.fn)()
            except JetDomainError as exc:
                raise EvalError(n.offset, str(exc)) from None
        if isinstance(n, Bin):
            left, right = ev(n.left), ev(n.right)
            try:
                if n.op == "+":
                    return left + right
                if n.op == "-":
                    return left - right
                if n.op == "*":
                    return left * right
                return left / right
            except JetDomainError as exc:
                raise EvalError(n.offset, str(exc)) from None
        raise TypeError(f"not an AST node: {n!r}")

    return ev(node)


def unparse(node: Node) -> str:
    """Fully parenthesized rendering; parse(unparse(t)) has the structure of t."""
    if isinstance(node, Lit):
        return repr(node.value)
    if isinstance(node, (Coord, Param)):
        return node.name
    if isinstance(node, Neg):
        return f"(-{unparse(node.arg)})"
    if isinstance(node, Call):
        return f"{node.fn}({unparse(node.arg)})"
    if isinstance(node, Pow):
        exp = str(node.exponent) if node.exponent >= 0 else f"-{-node.exponent}"
        return f"({unparse(node.base)}^{exp})"
    if isinstance(node, Bin):
        return f"({unparse(node.left)}{node.op}{unparse(node.right)})"
    raise TypeError(f"not an AST node: {node!r}")


def ast_equal(a: Node, b: Node) -> bool:
    """Structural equality, ignoring source offsets."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Lit):
        return a.value == b.value
    if isinstance(a, (Coord, Param)):
        return a.name == b.name
    if isinstance(a, Neg):
        return ast_equal(a.arg, b.arg)
    if isinstance(a, Call):
        return a.fn == b.fn and ast_equal(a.arg, b.arg)
    if isinstance(a, Pow):
        return a.exponent == b.exponent and ast_equal(a.base, b.base)
    if isinstance(a, Bin):
        return a.op == b.op and ast_equal(a.left, b.left) and ast_equal(a.right, b.right)
    return False


def field(src: str, chart: Chart, params: Mapping[str, float] | None = None):
    """Parse an expression into a ScalarField on the chart."""
    from .scalars import ScalarField

    node = parse(src, chart, tuple((params or {}).keys()))
    return ScalarField(chart, lambda p: eval_jet(node, p, chart, params), name=src)
