"""Value expressions for the command line: ``2^100``, ``100!``, ``lcm(10)*3``.

Grammar (whitespace insensitive)::

    expr := term ("*" term)*
    term := INT | INT "^" INT | INT "!" | "lcm" "(" INT ")"

Caps apply at evaluation time, never while parsing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .bounds import factorial, lcm_upto
from .config import DEFAULT_CAPS, Caps
from .errors import ExprSyntaxError, ResourceLimitError


@dataclass(frozen=True)
class Literal:
    value: int


@dataclass(frozen=True)
class Power:
    base: int
    exponent: int


@dataclass(frozen=True)
class Factorial:
    n: int


@dataclass(frozen=True)
class Lcm:
    n: int


@dataclass(frozen=True)
class Product:
    terms: tuple


ValueExpr = Union[Literal, Power, Factorial, Lcm, Product]

_TOKEN = re.compile(r"(?:(?P<int>\d+)|(?P<lcm>lcm)|(?P<op>[*^!()]))", re.ASCII)


def _tokenize(text: str):
    tokens = []
    pos = 0
    data = text.encode("utf-8")
    # latin-1 maps bytes one-to-one onto characters, so match offsets are byte offsets
    chars = data.decode("latin-1")
    while True:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            break
        m = _TOKEN.match(chars, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {data[pos:pos + 1]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(data)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None, what=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = what or repr(value or kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {want}, got {got}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        terms = [self.term()]
        while self.peek()[:2] == ("op", "*"):
            self.i += 1
            terms.append(self.term())
        self.take("end", what="'*' or end of input")
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def term(self):
        if self.peek()[0] == "lcm":
            self.i += 1
            self.take("op", "(")
            n = int(self.take("int", what="integer")[1])
            self.take("op", ")")
            return Lcm(n)
        value = int(self.take("int", what="integer, or lcm(...)")[1])
        if self.peek()[:2] == ("op", "^"):
            self.i += 1
            return Power(value, int(self.take("int", what="integer exponent")[1]))
        if self.peek()[:2] == ("op", "!"):
            self.i += 1
            return Factorial(value)
        return Literal(value)


def parse_expr(text: str) -> ValueExpr:
    """Parse ``text``; syntax errors carry the byte offset of the bad token.

    >>> parse_expr("2^100")
    Power(base=2, exponent=100)
    """
    return _Parser(text).expr()


def evaluate(node: ValueExpr, caps: Caps = DEFAULT_CAPS) -> int:
    if isinstance(node, Literal):
        return node.value
    if isinstance(node, Power):
        if node.exponent > caps.power_exponent:
            raise ResourceLimitError(f"exponent {node.exponent} exceeds the cap {caps.power_exponent}")
        return node.base**node.exponent
    if isinstance(node, Factorial):
        return factorial(node.n, caps.factorial_n)
    if isinstance(node, Lcm):
        return lcm_upto(node.n, caps.lcm_n)
    out = 1
    for term in node.terms:
        out *= evaluate(term, caps)
    return out
