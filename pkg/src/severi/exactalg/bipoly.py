"""Sparse bivariate polynomials in u, v over an exact field."""

from __future__ import annotations

import math
from math import comb

from gmpy2 import mpq

from .fields import QQ, NFElement, common_field, to_mpq

__all__ = ["BiPoly", "INF"]

INF = math.inf


def _coerce(field, c):
    if field is QQ:
        if isinstance(c, NFElement):
            return QQ(c)
        return to_mpq(c)
    return field(c)


def _field_of(c):
    return c.field if isinstance(c, NFElement) and not c.is_rational() else QQ


class BiPoly:
    """Immutable sparse polynomial ``sum c[a, b] u^a v^b``.

    ``terms`` maps exponent pairs to nonzero coefficients of ``field``.
    """

    __slots__ = ("field", "terms", "_order", "_hash")

    def __init__(self, terms=None, field=None):
        if field is None:
            field = common_field(*(_field_of(c) for c in (terms or {}).values()))
        d = {}
        for k, c in (terms or {}).items():
            c = _coerce(field, c)
            if c:
                d[(int(k[0]), int(k[1]))] = c
        self.field = field
        self.terms = d
        self._order = None
        self._hash = None

    @classmethod
    def _raw(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj._order = None
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field=QQ):
        return cls._raw(field, {})

    @classmethod
    def const(cls, c, field=None):
        field = field or _field_of(c)
        c = _coerce(field, c)
        return cls._raw(field, {(0, 0): c} if c else {})

    @classmethod
    def one(cls, field=QQ):
        return cls.const(1, field)

    @classmethod
    def monomial(cls, a, b, c=1, field=QQ):
        c = _coerce(field, c)
        return cls._raw(field, {(a, b): c} if c else {})

    @classmethod
    def u(cls, field=QQ):
        return cls.monomial(1, 0, 1, field)

    @classmethod
    def v(cls, field=QQ):
        return cls.monomial(0, 1, 1, field)

    # -- basic queries -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    @property
    def order(self):
        """Order at the origin: minimal total degree of a term (INF for zero)."""
        if self._order is None:
            self._order = min((a + b for a, b in self.terms), default=INF)
        return self._order

    @property
    def degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = 0 if var == "u" else 1
        return max((k[i] for k in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0, 0), self.field.zero)

    def vanishes_at_origin(self) -> bool:
        return (0, 0) not in self.terms

    def coeff(self, a, b):
        return self.terms.get((a, b), self.field.zero)

    def leading_term(self):
        """(exponent, coefficient) of the graded-lex leading term (u > v)."""
        k = max(self.terms, key=lambda e: (e[0] + e[1], e[0]))
        return k, self.terms[k]

    def homogeneous_part(self, deg: int) -> "BiPoly":
        return BiPoly._raw(self.field, {k: c for k, c in self.terms.items() if k[0] + k[1] == deg})

    def tangent_cone(self) -> "BiPoly":
        """Lowest-degree homogeneous part."""
        return self.homogeneous_part(self.order) if self.terms else self

    def top_form(self) -> "BiPoly":
        return self.homogeneous_part(self.degree) if self.terms else self

    # -- field handling ------------------------------------------------------
    def to_field(self, field, embed=None) -> "BiPoly":
        if field is self.field and embed is None:
            return self
        f = embed if embed is not None else (lambda c: _coerce(field, c))
        out = {}
        for k, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[k] = c2
        return BiPoly._raw(field, out)

    def _unify(self, other):
        if isinstance(other, BiPoly):
            if other.field is self.field:
                return self, other
            F = common_field(self.field, other.field)
            return self.to_field(F), other.to_field(F)
        return self, BiPoly.const(other, self.field if _field_of(other) is QQ else None)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        a, b = self._unify(other)
        d = dict(a.terms)
        for k, c in b.terms.items():
            s = d.get(k)
            if s is None:
                d[k] = c
            else:
                s = s + c
                if s:
                    d[k] = s
                else:
                    del d[k]
        return BiPoly._raw(a.field, d)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._unify(other)
        d = dict(a.terms)
        for k, c in b.terms.items():
            s = d.get(k)
            if s is None:
                d[k] = -c
            else:
                s = s - c
                if s:
                    d[k] = s
                else:
                    del d[k]
        return BiPoly._raw(a.field, d)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiPoly":
        if not c:
            return BiPoly._raw(self.field, {})
        if isinstance(c, NFElement) and not c.is_rational() and c.field is not self.field:
            return self.to_field(c.field).scale(c)
        c = _coerce(self.field, c)
        return BiPoly._raw(self.field, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return self.scale(other)
        a, b = self._unify(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        d: dict = {}
        for (i1, j1), c1 in b.terms.items():
            for (i2, j2), c2 in a.terms.items():
                k = (i1 + i2, j1 + j2)
                s = d.get(k)
                d[k] = c1 * c2 if s is None else s + c1 * c2
        return BiPoly._raw(a.field, {k: c for k, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift_exponents(self, da: int, db: int) -> "BiPoly":
        return BiPoly._raw(self.field, {(a + da, b + db): c for (a, b), c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            if isinstance(other, (int, type(mpq(0)))) or isinstance(other, NFElement):
                return self == BiPoly.const(other)
            return NotImplemented
        if self.field is not other.field:
            try:
                a, b = self._unify(other)
            except TypeError:
                return False
            return a.terms == b.terms
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus and substitutions ---------------------------------------------
    def diff(self, var: str) -> "BiPoly":
        """Formal partial derivative with respect to ``'u'`` or ``'v'``."""
        d = {}
        if var == "u":
            for (a, b), c in self.terms.items():
                if a:
                    d[(a - 1, b)] = c * a
        elif var == "v":
            for (a, b), c in self.terms.items():
                if b:
                    d[(a, b - 1)] = c * b
        else:
            raise ValueError("variable must be 'u' or 'v'")
        return BiPoly._raw(self.field, d)

    def swap(self) -> "BiPoly":
        """Exchange u and v."""
        return BiPoly._raw(self.field, {(b, a): c for (a, b), c in self.terms.items()})

    def evaluate(self, u0, v0):
        acc = self.field.zero
        for (a, b), c in self.terms.items():
            acc = acc + c * (u0 ** a) * (v0 ** b)
        return acc

    def subs_linear(self, a, b, c, d) -> "BiPoly":
        """p(a*u + b*v, c*u + d*v)."""
        F = common_field(self.field, *(_field_of(x) for x in (a, b, c, d)))
        p = self.to_field(F)
        U = BiPoly._raw(F, {})
        U = BiPoly(({(1, 0): a, (0, 1): b}), F)
        V = BiPoly(({(1, 0): c, (0, 1): d}), F)
        return p.compose(U, V)

    def compose(self, U: "BiPoly", V: "BiPoly") -> "BiPoly":
        """p(U(u,v), V(u,v))."""
        upow = {0: BiPoly.one(U.field)}
        vpow = {0: BiPoly.one(V.field)}

        def pw(cache, base, n):
            if n not in cache:
                k = max(i for i in cache if i <= n)
                r = cache[k]
                for i in range(k + 1, n + 1):
                    r = r * base
                    cache[i] = r
            return cache[n]

        out = BiPoly.zero(common_field(self.field, U.field, V.field))
        for (a, b), c in sorted(self.terms.items()):
            out = out + (pw(upow, U, a) * pw(vpow, V, b)).scale(c)
        return out

    def restrict(self, var: str):
        """Univariate coefficient list of p with the *other* variable set to 0.

        ``restrict('u')`` returns p(u, 0) as a list in u.
        """
        i = 0 if var == "u" else 1
        deg = -1
        vals = {}
        for k, c in self.terms.items():
            if k[1 - i] == 0:
                vals[k[i]] = c
                deg = max(deg, k[i])
        zero = self.field.zero
        return [vals.get(e, zero) for e in range(deg + 1)]

    def as_univariate(self, var: str) -> list:
        """Coefficients of p as a polynomial in ``var`` (list of BiPoly in the other variable)."""
        i = 0 if var == "u" else 1
        buckets: dict = {}
        for k, c in self.terms.items():
            e = k[i]
            rest = (0, k[1]) if i == 0 else (k[0], 0)
            buckets.setdefault(e, {})[rest] = c
        deg = max(buckets, default=-1)
        return [BiPoly._raw(self.field, buckets.get(e, {})) for e in range(deg + 1)]

    @classmethod
    def from_univariate(cls, coeffs, var: str, field=None) -> "BiPoly":
        field = field or (coeffs[0].field if coeffs else QQ)
        i = 0 if var == "u" else 1
        d = {}
        for e, p in enumerate(coeffs):
            for (a, b), c in p.terms.items():
                k = (a + e, b) if i == 0 else (a, b + e)
                d[k] = c
        return cls._raw(field, d)

    def blowup_chart(self, chart: str, a: int | None = None) -> "BiPoly":
        """Strict/total transform in a blowup chart.

        Chart ``'u'``: substitute v = u*v' and divide by u^a.
        Chart ``'v'``: substitute u = u'*v and divide by v^a.
        ``a`` defaults to the order at the origin.
        """
        if a is None:
            a = self.order
        out = {}
        for (i, j), c in self.terms.items():
            if chart == "u":
                k = (i + j - a, j)
            else:
                k = (i, i + j - a)
            if k[0] < 0 or k[1] < 0:
                raise ValueError("exponent %d too large for this polynomial" % a)
            out[k] = c
        return BiPoly._raw(self.field, out)

    # -- normalization & division ---------------------------------------------------
    def monic(self) -> "BiPoly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        _, lc = self.leading_term()
        if lc == 1:
            return self
        inv = 1 / lc
        return BiPoly._raw(self.field, {k: c * inv for k, c in self.terms.items()})

    def divmod(self, other: "BiPoly"):
        """Division with remainder in lex order (v > u)."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        a, b = self._unify(other)
        key = lambda e: (e[1], e[0])  # noqa: E731
        lt = max(b.terms, key=key)
        lc_inv = 1 / b.terms[lt]
        rem: dict = {}
        quo: dict = {}
        p = dict(a.terms)
        bterms = list(b.terms.items())
        while p:
            m = max(p, key=key)
            c = p[m]
            if m[0] >= lt[0] and m[1] >= lt[1]:
                q = c * lc_inv
                sh = (m[0] - lt[0], m[1] - lt[1])
                quo[sh] = quo.get(sh, 0) + q
                for (i, j), cb in bterms:
                    k = (i + sh[0], j + sh[1])
                    s = p.get(k)
                    nv = -q * cb if s is None else s - q * cb
                    if nv:
                        p[k] = nv
                    else:
                        p.pop(k, None)
            else:
                rem[m] = c
                del p[m]
        return BiPoly(quo, a.field), BiPoly._raw(a.field, rem)

    def divides(self, other: "BiPoly") -> bool:
        return not other.divmod(self)[1]

    def exquo(self, other) -> "BiPoly":
        """Exact quotient; raises ArithmeticError when other does not divide self."""
        if not isinstance(other, BiPoly):
            return self.scale(1 / _coerce(self.field, other))
        if other.is_constant():
            return self.scale(1 / other.constant_term())
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    __floordiv__ = exquo

    # -- display ---------------------------------------------------------------------
    def sorted_terms(self):
        """Terms in graded-lex descending order."""
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __repr__(self):
        from .serialize import format_poly

        return "BiPoly(%s)" % format_poly(self)

    def __str__(self):
        from .serialize import format_poly

        return format_poly(self)


def binomial_powers(beta, j, field):
    """Coefficients of (beta + Y)^j as a list indexed by the power of Y."""
    out = []
    for k in range(j + 1):
        out.append(_coerce(field, comb(j, k)) * beta ** (j - k))
    return out
