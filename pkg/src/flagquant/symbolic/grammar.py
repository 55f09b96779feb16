"""Parser and printer for the small expression language used on the command line.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := NUMBER | 'z' | 'zbar' | 'i' | '(' expr ')'

NUMBER is an integer or a decimal literal (read exactly). ``**`` is accepted as
a synonym of ``^``. The printer emits the same grammar, so ``parse(str(e)) == e``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .expr import I, GaussRational, RationalExpr, format_gauss

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|(zbar|z|i)\b|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            got = "end of input" if tok[0] is None else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def expr(self) -> RationalExpr:
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> RationalExpr:
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero")
                acc = acc / rhs
        return acc

    def unary(self) -> RationalExpr:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RationalExpr:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            k = self.take("num")[1]
            if not k.isdigit():
                raise ParseError(f"exponent must be an integer, got {k!r}")
            if sign < 0 and base.is_zero():
                raise ParseError("division by zero")
            return base ** (sign * int(k))
        return base

    def atom(self) -> RationalExpr:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return RationalExpr.const(Fraction(val))
        if kind == "name":
            self.take()
            if val == "z":
                return RationalExpr.z()
            if val == "zbar":
                return RationalExpr.zbar()
            return RationalExpr.const(I)
        if (kind, val) == ("op", "("):
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        if kind is None:
            raise ParseError("unexpected end of input")
        raise ParseError(f"unexpected token {val!r}")


def parse_expr(text: str) -> RationalExpr:
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    p = _Parser(toks)
    e = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input starting at {p.peek()[1]!r}")
    return e


def _monomial(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("z" if a == 1 else f"z^{a}")
    if b:
        parts.append("zbar" if b == 1 else f"zbar^{b}")
    return "*".join(parts)


def _format_poly(terms: dict[tuple[int, int], GaussRational]) -> str:
    # graded order, z < zbar: higher total degree first, then more zbar first
    keys = sorted(terms, key=lambda k: (-(k[0] + k[1]), -k[1]))
    pieces = []
    for k in keys:
        c = terms[k]
        if not c:
            continue
        mono = _monomial(*k)
        cs = format_gauss(c)
        if not mono:
            s = cs
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{cs}*{mono}"
        pieces.append(s)
    if not pieces:
        return "0"
    out = pieces[0]
    for s in pieces[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


def format_expr(e: RationalExpr) -> str:
    num = _format_poly(e.terms())
    if e.den.is_ground:
        return num
    den = _format_poly({k: GaussRational(c) for k, c in e.den.items()})
    return f"({num})/({den})"
