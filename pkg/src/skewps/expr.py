"""Expression language for series and Laurent series.

Grammar, loosest binding first::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" exponent)?
    atom   := NUMBER | NAME | "z" | "inv" "(" expr ")" | "O" "(" "z" "^" INT ")" | "(" expr ")"

NUMBER is an integer or a fraction ``p/q``; exponents are integers and may be
negative (``z^-1``). Names are ring literals such as ``t``, ``e1`` or ``x``.
``O(z^k)`` caps the precision of the sum it appears in.
"""

import re
from dataclasses import dataclass

from skewps import laurent as lau
from skewps import series as ser
from skewps.rings import to_qq

__all__ = [
    "ParseError", "Num", "Sym", "Z", "Neg", "Add", "Sub", "Mul", "Pow", "Inv", "BigO",
    "parse_expr", "to_text", "evaluate", "evaluate_text",
]


class ParseError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Num:
    value: str


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Z:
    pass


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Inv:
    arg: object


@dataclass(frozen=True)
class BigO:
    order: int


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while True:
        # skip whitespace while tracking lines
        while pos < n and text[pos].isspace():
            if text[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        start = m.start(m.lastgroup)
        toks.append(_Tok(m.lastgroup, m.group(m.lastgroup), line, start - line_start + 1))
        pos = m.end()
    toks.append(_Tok("end", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text, known):
        self.toks = _tokenize(text)
        self.i = 0
        self.known = known

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.col)

    def expect(self, text):
        t = self.peek()
        if t.text != text or t.kind == "end":
            raise self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.take()

    def parse(self):
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek().text == "*":
            self.take()
            node = Mul(node, self.unary())
        return node

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            base = Pow(base, self.exponent())
        return base

    def exponent(self):
        sign = 1
        paren = False
        if self.peek().text == "(":
            self.take()
            paren = True
        if self.peek().text == "-":
            self.take()
            sign = -1
        t = self.peek()
        if t.kind != "num" or "/" in t.text:
            raise self.error("exponent must be an integer")
        self.take()
        if paren:
            self.expect(")")
        return sign * int(t.text)

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Num(str(to_qq(t.text)))
        if t.kind == "name":
            self.take()
            if t.text == "z":
                return Z()
            if t.text == "inv" and self.peek().text == "(":
                self.take()
                node = self.expr()
                self.expect(")")
                return Inv(node)
            if t.text == "O" and self.peek().text == "(":
                self.take()
                zt = self.peek()
                if zt.text != "z":
                    raise self.error("O(...) takes a power of z", zt)
                self.take()
                order = 1
                if self.peek().text == "^":
                    self.take()
                    order = self.exponent()
                self.expect(")")
                if order < 0:
                    raise self.error("O(z^k) needs k >= 0", zt)
                return BigO(order)
            if self.known is not None and not self.known(t.text):
                raise self.error(f"unknown literal {t.text!r} for this ring", t)
            return Sym(t.text)
        if t.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        raise self.error(f"unexpected {t.text or 'end of input'!r}")


def parse_expr(text, ring=None):
    """Parse ``text``; with ``ring`` given, names must be literals of that ring."""
    known = None
    if ring is not None:
        def known(name):
            return ring.literal(name) is not None
    return _Parser(text, known).parse()


# ---------------------------------------------------------------------------
# printing with minimal parentheses

_PREC = {Add: 1, Sub: 1, Mul: 2, Neg: 3, Pow: 4}


def _prec(node):
    return _PREC.get(type(node), 5)


def to_text(node):
    """Canonical text; ``parse_expr(to_text(a)) == a``."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Z):
        return "z"
    if isinstance(node, BigO):
        return f"O(z^{node.order})"
    if isinstance(node, Inv):
        return f"inv({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        return "-" + (inner if _prec(node.arg) >= 3 else f"({inner})")
    if isinstance(node, Pow):
        b = to_text(node.base)
        if _prec(node.base) < 5 or (isinstance(node.base, Num) and "/" in node.base.value):
            b = f"({b})"
        return f"{b}^{node.exp}"
    if isinstance(node, Mul):
        lhs = to_text(node.left)
        rhs = to_text(node.right)
        if _prec(node.left) < 2:
            lhs = f"({lhs})"
        if _prec(node.right) <= 2:
            rhs = f"({rhs})"
        return f"{lhs}*{rhs}"
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        lhs = to_text(node.left)
        rhs = to_text(node.right)
        if _prec(node.right) <= 1:
            rhs = f"({rhs})"
        return lhs + op + rhs
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation


def evaluate(node, ring, precision):
    """Value as a Laurent series known to absolute precision ``precision``."""
    P = precision

    def ev(n):
        if isinstance(n, Num):
            return lau.laurent_constant(ring, ring.scalar(n.value), P)
        if isinstance(n, Sym):
            r = ring.literal(n.name)
            if r is None:
                raise ValueError(f"unknown literal {n.name!r} for {ring.id}")
            return lau.laurent_constant(ring, r, P)
        if isinstance(n, Z):
            return lau.laurent_z_power(ring, 1, P)
        if isinstance(n, BigO):
            return lau.from_series(ser.zero(ring, n.order))
        if isinstance(n, Neg):
            return lau.laurent_negate(ev(n.arg))
        if isinstance(n, Add):
            return lau.laurent_add(ev(n.left), ev(n.right))
        if isinstance(n, Sub):
            return lau.laurent_add(ev(n.left), lau.laurent_negate(ev(n.right)))
        if isinstance(n, Mul):
            return lau.laurent_mul(ev(n.left), ev(n.right))
        if isinstance(n, Inv):
            return lau.laurent_invert(ev(n.arg))
        if isinstance(n, Pow):
            if isinstance(n.base, Z):
                return lau.laurent_z_power(ring, n.exp, P)
            b = ev(n.base)
            if n.exp < 0:
                b = lau.laurent_invert(b)
            out = lau.laurent_constant(ring, ring.one, P)
            for _ in range(abs(n.exp)):
                out = lau.laurent_mul(out, b)
            return out
        raise TypeError(f"not an expression node: {n!r}")

    return ev(node)


def evaluate_text(text, ring, precision):
    return evaluate(parse_expr(text, ring), ring, precision)


def as_series(value):
    """A power series when the Laurent value has no negative part, else None."""
    if value.shift == 0:
        return value.body
    return None
