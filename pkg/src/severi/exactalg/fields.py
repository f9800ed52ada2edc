"""Exact coefficient fields: the rationals and simple number fields Q[theta]/m(theta).

Rationals are plain ``gmpy2.mpq`` values.  Elements of a proper number field
are :class:`NFElement` instances holding their coordinates in the power basis
``1, theta, ..., theta^(d-1)``.  Both kinds support the usual arithmetic
operators and mix freely with Python ints and ``mpq`` scalars.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq, mpz

_SCALARS = (int, Fraction, type(mpq(0)), type(mpz(0)))

__all__ = [
    "QQ",
    "RationalField",
    "NumberField",
    "NFElement",
    "FieldMismatch",
    "cyclotomic_polynomial",
    "cyclotomic_field",
    "to_mpq",
    "common_field",
]


class FieldMismatch(TypeError):
    """Raised when elements of two unrelated number fields are combined."""


def to_mpq(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class RationalField:
    """The field of rational numbers; elements are ``mpq``."""

    degree = 1
    name = "QQ"
    minpoly = (mpq(0), mpq(1))

    def __call__(self, x):
        if isinstance(x, NFElement):
            if x.is_rational():
                return x.c[0]
            raise FieldMismatch("element of %s is not rational" % x.field)
        return to_mpq(x)

    @property
    def zero(self):
        return mpq(0)

    @property
    def one(self):
        return mpq(1)

    @property
    def gen(self):
        return mpq(1)

    def coordinates(self, x) -> list:
        return [to_mpq(x)]

    def from_coordinates(self, coords):
        (c,) = coords
        return to_mpq(c)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_rational_field, ())


def _rational_field():
    return QQ


QQ = RationalField()


# --- dense rational univariate helpers (coefficient lists, low degree first) ---


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _qdivmod(a, b):
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lb
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        a.pop()
        _trim(a)
    return _trim(q), a


def _qinverse_mod(a, m):
    """Inverse of a modulo m in Q[x] (m irreducible)."""
    r0, r1 = list(m), _trim(list(a))
    s0, s1 = [], [mpq(1)]
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        # s0 - q*s1
        prod = [mpq(0)] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    prod[i + j] += qi * sj
        n = max(len(s0), len(prod))
        new = [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0) for i in range(n)]
        s0, s1 = s1, _trim([mpq(c) for c in new])
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible (minimal polynomial reducible?)")
    c = r0[0]
    return [x / c for x in s0]


class NumberField:
    """Q[theta]/(m(theta)) for a monic irreducible m of degree >= 2.

    Instances are interned by minimal polynomial, so identity comparison of
    fields is meaningful.  Irreducibility is the caller's responsibility;
    :func:`severi.exactalg.factor.checked_number_field` verifies it.
    """

    _cache: dict = {}

    def __new__(cls, minpoly, name: str | None = None):
        coeffs = tuple(to_mpq(c) for c in minpoly)
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        if len(coeffs) < 3:
            raise ValueError("a number field needs a minimal polynomial of degree >= 2")
        if coeffs[-1] != 1:
            lc = coeffs[-1]
            coeffs = tuple(c / lc for c in coeffs)
        hit = cls._cache.get(coeffs)
        if hit is not None:
            return hit
        self = super().__new__(cls)
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.name = name or "QQ[t]/(%s)" % _format_minpoly(coeffs)
        d = self.degree
        # theta^k for k = d .. 2d-2 in the power basis
        red = []
        cur = [-c for c in coeffs[:-1]]
        for _ in range(d - 1):
            red.append(cur)
            nxt = [mpq(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(d):
                    nxt[i] -= top * coeffs[i]
            cur = nxt
        red.append(cur)
        self._reduction = red
        self.zero = NFElement(self, (mpq(0),) * d)
        self.one = NFElement(self, (mpq(1),) + (mpq(0),) * (d - 1))
        self.gen = NFElement(self, (mpq(0), mpq(1)) + (mpq(0),) * (d - 2))
        cls._cache[coeffs] = self
        return self

    def __reduce__(self):
        return (NumberField, ([str(c) for c in self.minpoly], self.name))

    def __call__(self, x) -> "NFElement":
        if isinstance(x, NFElement):
            if x.field is self:
                return x
            if x.is_rational():
                return self.scalar(x.c[0])
            raise FieldMismatch("cannot coerce %s into %s" % (x.field, self))
        return self.scalar(to_mpq(x))

    def scalar(self, q) -> "NFElement":
        return NFElement(self, (q,) + (mpq(0),) * (self.degree - 1))

    def element(self, coords) -> "NFElement":
        coords = [to_mpq(c) for c in coords]
        if len(coords) > self.degree:
            coords = self._reduce(coords)
        coords += [mpq(0)] * (self.degree - len(coords))
        return NFElement(self, tuple(coords))

    def coordinates(self, x) -> list:
        return list(self(x).c)

    def from_coordinates(self, coords):
        return self.element(coords)

    def _reduce(self, prod):
        d = self.degree
        out = list(prod[:d]) + [mpq(0)] * (d - min(len(prod), d))
        red = self._reduction
        for k in range(d, len(prod)):
            c = prod[k]
            if c:
                row = red[k - d]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return out

    def __repr__(self):
        return self.name


def _format_minpoly(coeffs):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mon = "" if k == 0 else ("t" if k == 1 else "t^%d" % k)
        if mon and c == 1:
            s = mon
        elif mon and c == -1:
            s = "-" + mon
        else:
            s = str(c) + ("*" + mon if mon else "")
        parts.append(s)
    return " + ".join(parts).replace("+ -", "- ")


class NFElement:
    """An element of a :class:`NumberField`; immutable and hashable."""

    __slots__ = ("field", "c")

    def __init__(self, field, coords):
        self.field = field
        self.c = coords

    # -- coercion -------------------------------------------------------
    def _other(self, other):
        if isinstance(other, NFElement):
            if other.field is self.field:
                return other.c
            if other.is_rational():
                return (other.c[0],) + (mpq(0),) * (self.field.degree - 1)
            if self.is_rational():
                return None
            raise FieldMismatch("%s vs %s" % (self.field, other.field))
        if isinstance(other, _SCALARS):
            return (to_mpq(other),) + (mpq(0),) * (self.field.degree - 1)
        return NotImplemented

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, NFElement) and other.field is not self.field:
            return self.is_rational() and other.is_rational() and self.c[0] == other.c[0]
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self.c == o

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.field.minpoly, self.c))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return other + self.c[0]
        return NFElement(self.field, tuple(a + b for a, b in zip(self.c, o)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return -other + self.c[0]
        return NFElement(self.field, tuple(a - b for a, b in zip(self.c, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NFElement) and other.field is self.field:
            a, b = self.c, other.c
            if not any(b[1:]):
                s = b[0]
                return NFElement(self.field, tuple(x * s for x in a))
            if not any(a[1:]):
                s = a[0]
                return NFElement(self.field, tuple(x * s for x in b))
            prod = [mpq(0)] * (2 * len(a) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod[i + j] += x * y
            return NFElement(self.field, tuple(self.field._reduce(prod)))
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return other * self.c[0]
        s = o[0]
        return NFElement(self.field, tuple(x * s for x in self.c))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if not self:
            raise ZeroDivisionError("division by zero in %s" % self.field)
        if self.is_rational():
            return self.field.scalar(1 / self.c[0])
        inv = _qinverse_mod(list(self.c), list(self.field.minpoly))
        return self.field.element(inv)

    def __truediv__(self, other):
        if isinstance(other, NFElement):
            if other.field is self.field:
                return self * other.inverse()
            if other.is_rational():
                return self * (1 / other.c[0])
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return NFElement(self.field, tuple(x / o[0] for x in self.c))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def norm(self):
        """Field norm down to Q (determinant of multiplication by self)."""
        from .linalg import det

        d = self.field.degree
        cols = []
        b = self.field.one
        for _ in range(d):
            cols.append(list((self * b).c))
            b = b * self.field.gen
        return det([[cols[j][i] for j in range(d)] for i in range(d)])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.c):
            if not c:
                continue
            mon = "" if k == 0 else ("t" if k == 1 else "t^%d" % k)
            terms.append(("%s*%s" % (c, mon)) if mon else str(c))
        return "(" + (" + ".join(terms) if terms else "0") + ")"


def common_field(*fields):
    """Smallest of the given fields containing all others (QQ embeds anywhere)."""
    out = QQ
    for f in fields:
        if f is QQ or f is out:
            continue
        if out is QQ:
            out = f
        else:
            raise FieldMismatch("no common field for %s and %s" % (out, f))
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _qdivmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(num)


def cyclotomic_field(n: int):
    """Q(zeta_n); returns ``(field, zeta)``.  For n <= 2 the field is QQ."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return QQ, mpq(1)
    if n == 2:
        return QQ, mpq(-1)
    K = NumberField(cyclotomic_polynomial(n), name="QQ(zeta_%d)" % n)
    return K, K.gen
