"""Canonical text form of field elements and polynomials.

The output is accepted by :func:`severi.cli.parser.parse_poly` when the same
coefficient field is supplied, so reports can be replayed.  Number-field
coefficients are written in the power basis of the generator ``theta``.
"""

from __future__ import annotations

from gmpy2 import mpq

from .fields import QQ, NFElement

__all__ = ["format_scalar", "format_poly", "field_descriptor"]


def _rat(c) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def format_scalar(c) -> str:
    """Coefficient as text; irrational elements come out parenthesized."""
    if isinstance(c, NFElement):
        if c.is_rational():
            return _rat(c.c[0])
        parts = []
        for k, a in enumerate(c.c):
            if not a:
                continue
            mon = "" if k == 0 else ("theta" if k == 1 else "theta^%d" % k)
            if not mon:
                parts.append(_rat(a))
            elif a == 1:
                parts.append(mon)
            elif a == -1:
                parts.append("-" + mon)
            else:
                parts.append("%s*%s" % (_rat(a), mon))
        return "(" + " + ".join(parts).replace("+ -", "- ") + ")"
    return _rat(c)


def _monomial(a: int, b: int) -> str:
    out = []
    if a:
        out.append("u" if a == 1 else "u^%d" % a)
    if b:
        out.append("v" if b == 1 else "v^%d" % b)
    return "*".join(out)


def format_poly(p) -> str:
    """Graded-lex descending sum of terms, e.g. ``u^2 - 3/2*u*v + 1``."""
    items = p.sorted_terms()
    if not items:
        return "0"
    chunks = []
    for (a, b), c in items:
        mon = _monomial(a, b)
        neg = False
        if isinstance(c, NFElement) and not c.is_rational():
            coef = format_scalar(c)
        else:
            q = c.c[0] if isinstance(c, NFElement) else mpq(c)
            neg = q < 0
            coef = _rat(-q if neg else q)
        if mon:
            term = mon if coef == "1" else "%s*%s" % (coef, mon)
        else:
            term = coef
        chunks.append((neg, term))
    first_neg, first = chunks[0]
    text = ("-" if first_neg else "") + first
    for neg, term in chunks[1:]:
        text += (" - " if neg else " + ") + term
    return text


def field_descriptor(field) -> str:
    """``QQ`` or the minimal polynomial of the generator in ``theta``."""
    if field is QQ:
        return "QQ"
    coeffs = field.minpoly
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mon = "" if k == 0 else ("theta" if k == 1 else "theta^%d" % k)
        if not mon:
            parts.append(_rat(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append("%s*%s" % (_rat(c), mon))
    return " + ".join(parts).replace("+ -", "- ")
