"""Tiny arithmetic expression language for user-supplied generators.

Grammar (``^`` is right associative and binds tighter than unary minus)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" unary)?
    atom   := NUMBER | "x" | FUNC "(" expr ")" | "(" expr ")"

``FUNC`` is ``ln`` or ``exp``. A whole expression consisting of a bare
function name, e.g. ``"ln"``, means that function applied to ``x``.
Compiled expressions accept and return numpy arrays.
"""

from __future__ import annotations

import re
from typing import Callable

import numpy as np

from .errors import ExpressionError

__all__ = ["compile_expression"]

_FUNCS: dict[str, Callable[[np.ndarray], np.ndarray]] = {"ln": np.log, "exp": np.exp}
_TOKEN = re.compile(r"\s*(?:(\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|([A-Za-z_]+)|(.))")

Node = Callable[[np.ndarray], np.ndarray]


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionError(f"cannot tokenize {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op in "+-*/^()":
            tokens.append(("op", op))
        else:
            raise ExpressionError(f"unexpected character {op!r} in {text!r}")
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            want = value or "a token"
            raise ExpressionError(f"expected {want} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.peek() is not None:
            raise ExpressionError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while (tok := self.peek()) is not None and tok[1] in "+-":
            self.take()
            rhs = self.term()
            node = _binary(tok[1], node, rhs)
        return node

    def term(self) -> Node:
        node = self.unary()
        while (tok := self.peek()) is not None and tok[1] in "*/":
            self.take()
            rhs = self.unary()
            node = _binary(tok[1], node, rhs)
        return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else (lambda x, f=inner: -f(x))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.take()
            exponent = self.unary()
            return _binary("^", base, exponent)
        return base

    def atom(self) -> Node:
        kind, value = self.take()
        if kind == "num":
            c = float(value)
            return lambda x, c=c: np.full(np.shape(x), c)
        if kind == "name":
            if value == "x":
                return lambda x: np.asarray(x, dtype=float)
            if value in _FUNCS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                fn = _FUNCS[value]
                return lambda x, fn=fn, arg=arg: fn(arg(x))
            raise ExpressionError(f"unknown name {value!r} in {self.text!r}")
        if value == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ExpressionError(f"unexpected {value!r} in {self.text!r}")


def _binary(op: str, lhs: Node, rhs: Node) -> Node:
    if op == "+":
        return lambda x: lhs(x) + rhs(x)
    if op == "-":
        return lambda x: lhs(x) - rhs(x)
    if op == "*":
        return lambda x: lhs(x) * rhs(x)
    if op == "/":
        return lambda x: lhs(x) / rhs(x)
    return lambda x: np.power(lhs(x), rhs(x))


def compile_expression(text: str) -> Node:
    """Compile ``text`` into a vectorised function of ``x``.

    >>> float(compile_expression("2*x^2 - ln(x)")(1.0))
    2.0
    """
    source = text.strip()
    if not source:
        raise ExpressionError("empty expression")
    if source in _FUNCS:
        source = f"{source}(x)"
    node = _Parser(source).parse()

    def fn(x):
        with np.errstate(all="ignore"):
            return node(np.asarray(x, dtype=float))

    fn.__name__ = f"expr[{text.strip()}]"
    return fn
