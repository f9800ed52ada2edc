"""Recursive-descent parser for polynomial expressions in u and v.

Grammar (whitespace is ignored)::

    expr    := ['+' | '-'] term (('+' | '-') term)*
    term    := power ('*' power)*
    power   := atom ['^' INT]
    atom    := INT ['/' INT] | 'u' | 'v' | 'I' | 'theta' | '(' expr ')' | ('+' | '-') power

``I`` is a square root of -1 and needs a coefficient field containing one;
``theta`` is the generator of the field given with ``--field``.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from ..exactalg import upoly
from ..exactalg.bipoly import BiPoly
from ..exactalg.factor import checked_number_field, sqrt_minus_one
from ..exactalg.fields import QQ, cyclotomic_field

__all__ = ["ParseError", "UnknownSymbol", "parse_poly", "parse_field", "serialize"]


class ParseError(ValueError):
    """Syntax error with the 0-based character offset of the problem."""

    kind = "ParseError"

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__("%s at position %d" % (message, position))

    def pointer(self) -> str:
        return "%s\n%s^" % (self.text, " " * self.position)


class UnknownSymbol(ParseError):
    kind = "UnknownSymbol"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise UnknownSymbol("unexpected character %r" % ch, start, text)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    def __init__(self, text, field, names):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.names = names

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise self.error("expected %r" % op, t)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            raise self.error("unexpected %r" % (self.peek()[1],))
        return e

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.power()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.power()
        return acc

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "int":
                raise self.error("exponent must be a nonnegative integer", t)
            return base ** t[1]
        return base

    def atom(self):
        t = self.take()
        kind, val, _ = t
        if kind == "int":
            q = mpq(val)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "int":
                    raise self.error("a rational literal needs an integer denominator", d)
                if d[1] == 0:
                    raise self.error("zero denominator", d)
                q = q / d[1]
            return BiPoly.const(q, self.field) if self.field is QQ else BiPoly.const(self.field(q), self.field)
        if kind == "name":
            if val not in self.names:
                raise UnknownSymbol("unknown symbol %r" % val, t[2], self.text)
            make = self.names[val]
            out = make()
            if out is None:
                raise ParseError("%r is not available over %s" % (val, self.field), t[2], self.text)
            return out
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "op" and val in "+-":
            p = self.power()
            return p if val == "+" else -p
        raise self.error("unexpected %s" % ("end of input" if kind == "end" else repr(val)), t)


def _names(field):
    def const(c):
        return lambda: BiPoly.const(c, field)

    names = {
        "u": lambda: BiPoly.u(field),
        "v": lambda: BiPoly.v(field),
    }
    i = sqrt_minus_one(field)
    names["I"] = (const(i) if i is not None else (lambda: None))
    names["theta"] = const(field.gen) if field is not QQ else (lambda: None)
    return names


def parse_poly(text: str, field=QQ) -> BiPoly:
    """Parse an expression into a :class:`BiPoly` over ``field``."""
    return _Parser(text, field, _names(field)).parse()


def parse_field(spec: str | None):
    """``QQ`` (default), ``cyclo:n``, or a monic integer polynomial in ``theta``."""
    if spec is None:
        return QQ
    s = spec.strip()
    if s.upper() in ("", "QQ", "Q"):
        return QQ
    if s.lower().startswith("cyclo:"):
        try:
            n = int(s.split(":", 1)[1])
        except ValueError:
            raise ParseError("cyclo:n needs an integer n", 6, s) from None
        return cyclotomic_field(n)[0]
    names = {"theta": lambda: BiPoly.u(QQ)}
    p = _Parser(s, QQ, names).parse()
    if any(b for _, b in p.terms):
        raise ParseError("field polynomial must be univariate in theta", 0, s)
    coeffs = upoly.trim([p.coeff(a, 0) for a in range(p.degree_in("u") + 1)])
    if len(coeffs) < 2 or coeffs[-1] != 1 or any(c.denominator != 1 for c in coeffs):
        raise ParseError("field polynomial must be monic with integer coefficients", 0, s)
    try:
        return checked_number_field(coeffs)
    except ValueError as exc:
        raise ParseError(str(exc), 0, s) from None


def serialize(p: BiPoly) -> str:
    """Canonical text; ``parse_poly(serialize(p), p.field) == p``."""
    return str(p)
