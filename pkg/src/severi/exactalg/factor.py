"""Univariate factorization over number fields and simple algebraic extensions.

Factorization over Q is delegated to FLINT; over a proper number field
K = Q(theta) we use Trager's norm method: shift until the norm of the
polynomial is squarefree, factor the norm over Q, and pull each factor back
with a gcd over K.  Adjoining a root of an irreducible polynomial produces a
new *simple* extension Q(gamma) together with the embedding K -> Q(gamma),
so towers never nest.
"""

from __future__ import annotations

import itertools

import flint
from gmpy2 import mpq

from . import upoly
from .fields import QQ, NFElement, NumberField, to_mpq

__all__ = [
    "Embedding",
    "factor_over",
    "adjoin_root",
    "roots_in_field",
    "checked_number_field",
    "sqrt_minus_one",
    "ExtensionRequired",
]


class ExtensionRequired(ArithmeticError):
    """A computation needs a root of ``minpoly`` that the working field lacks."""

    def __init__(self, minpoly, field):
        self.minpoly = minpoly
        self.field = field
        super().__init__("field extension required: root of %s over %s" % (minpoly, field))


class Embedding:
    """Field embedding ``source -> target`` determined by the image of the generator."""

    __slots__ = ("source", "target", "gen_image", "_powers")

    def __init__(self, source, target, gen_image=None):
        self.source = source
        self.target = target
        self.gen_image = gen_image
        self._powers = None

    @classmethod
    def identity(cls, field):
        return cls(field, field, None if field is QQ else field.gen)

    def __call__(self, x):
        tgt = self.target
        if not isinstance(x, NFElement):
            return tgt(x) if tgt is not QQ else to_mpq(x)
        if x.field is tgt and self.source is tgt:
            return x
        if x.is_rational():
            return tgt(x.c[0]) if tgt is not QQ else x.c[0]
        if x.field is not self.source:
            raise TypeError("element of %s given to embedding from %s" % (x.field, self.source))
        if self._powers is None:
            pw = [tgt.one]
            for _ in range(self.source.degree - 1):
                pw.append(pw[-1] * self.gen_image)
            self._powers = pw
        acc = tgt.zero
        for c, p in zip(x.c, self._powers):
            if c:
                acc = acc + p * c
        return acc

    def then(self, other: "Embedding") -> "Embedding":
        """Composition ``other o self``."""
        if self.source is QQ:
            return Embedding(QQ, other.target, None)
        return Embedding(self.source, other.target, other(self.gen_image))


# --- conversions to/from FLINT ------------------------------------------------


def _to_fmpq_poly(coeffs):
    return flint.fmpq_poly([flint.fmpq(int(c.numerator), int(c.denominator)) for c in map(to_mpq, coeffs)])


def _from_fmpq_poly(p):
    return [mpq(int(c.p), int(c.q)) for c in p.coeffs()]


def _factor_rational(coeffs):
    """Monic irreducible factors of a rational polynomial with multiplicities."""
    _, facs = _to_fmpq_poly(coeffs).factor()
    out = []
    for f, m in facs:
        c = _from_fmpq_poly(f)
        out.append((upoly.monic(c), int(m)))
    out.sort(key=lambda fm: (len(fm[0]), [str(x) for x in fm[0]], fm[1]))
    return out


# --- norms ---------------------------------------------------------------------


def _coords_poly(x, field):
    """Element of a number field as a rational polynomial in its generator."""
    if isinstance(x, NFElement):
        return upoly.trim(list(x.c))
    return upoly.trim([to_mpq(x)])


def _norm_poly(q, field):
    """Norm_{K/Q} of q in K[x], as a rational polynomial of degree d*deg(q)."""
    d = field.degree
    k = len(q) - 1
    m = _to_fmpq_poly(field.minpoly)
    n_deg = d * k
    xs = [mpq(i) for i in range(n_deg + 1)]
    ys = []
    for x0 in xs:
        val = upoly.evaluate(q, field(x0))
        ys.append(to_mpq(_fmpq_to_mpq(m.resultant(_to_fmpq_poly(_coords_poly(val, field) or [0])))))
    return _interpolate(xs, ys)


def _fmpq_to_mpq(c):
    return mpq(int(c.p), int(c.q))


def _interpolate(xs, ys):
    """Newton interpolation through the given points (rational)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        poly = upoly.add(upoly.mul(poly, [-xs[i], mpq(1)]), [coef[i]])
    return upoly.trim(poly)


def _shift_sequence():
    yield 0
    for s in itertools.count(1):
        yield s
        yield -s


def _sqfree_norm(q, field):
    """(s, N) with N = Norm(q(x - s*theta)) squarefree."""
    theta = field.gen
    for s in _shift_sequence():
        shifted = upoly.shift(q, theta * (-s)) if s else list(q)
        N = _norm_poly(shifted, field)
        if upoly.is_squarefree(N):
            return s, N
    raise AssertionError("unreachable")


# --- public API ------------------------------------------------------------------


def _factor_squarefree(q, field):
    if len(q) <= 2:
        return [upoly.monic(q)]
    if field is QQ:
        return [f for f, _ in _factor_rational(q)]
    s, N = _sqfree_norm(q, field)
    facs = _factor_rational(N)
    if len(facs) == 1:
        return [upoly.monic(q)]
    out = []
    theta = field.gen
    for f, _ in facs:
        lifted = [field(c) for c in f]
        if s:
            lifted = upoly.shift(lifted, theta * s)
        g = upoly.gcd(q, lifted)
        if len(g) > 1:
            out.append(g)
    return out


def factor_over(coeffs, field):
    """Factor a univariate polynomial over ``field``.

    Returns ``(leading_coefficient, [(monic_irreducible, multiplicity), ...])``.
    """
    p = upoly.trim([field(c) if field is not QQ else to_mpq(c) for c in coeffs])
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    lc = p[-1]
    p = upoly.monic(p)
    out = []
    if field is QQ:
        return lc, _factor_rational(p)
    for part, mult in upoly.squarefree_parts(p):
        for f in _factor_squarefree(part, field):
            out.append((f, mult))
    out.sort(key=lambda fm: (len(fm[0]), fm[1]))
    return lc, out


def roots_in_field(coeffs, field):
    """Roots of the polynomial lying in ``field`` (with multiplicity)."""
    _, facs = factor_over(coeffs, field)
    return [(-f[0], m) for f, m in facs if len(f) == 2]


def adjoin_root(field, psi):
    """Adjoin a root of the monic irreducible ``psi`` (degree >= 2) over ``field``.

    Returns ``(L, embedding field -> L, root in L)``.
    """
    psi = upoly.monic(upoly.trim([field(c) for c in psi]))
    if len(psi) < 3:
        raise ValueError("adjoin_root needs degree >= 2")
    if field is QQ:
        L = NumberField([to_mpq(c) for c in psi])
        return L, Embedding(QQ, L, None), L.gen
    s, N = _sqfree_norm(psi, field)
    L = NumberField(N)
    gamma = L.gen
    # theta_L is the common root of m(y) and psi(gamma - s*y) over L
    m_y = [L(c) for c in field.minpoly]
    lin = upoly.trim([gamma, L(-s)]) if s else [gamma]
    acc: list = []
    power = [L.one]
    for cj in psi:
        cpoly = [L(c) for c in _coords_poly(cj, field)]
        acc = upoly.add(acc, upoly.mul(cpoly, power)) if acc else upoly.mul(cpoly, power)
        power = upoly.mul(power, lin)
    g = upoly.gcd(m_y, acc)
    if len(g) != 2:
        raise ArithmeticError("primitive element computation failed (gcd degree %d)" % (len(g) - 1))
    theta_L = -g[0]
    emb = Embedding(field, L, theta_L)
    root = gamma - theta_L * s if s else gamma
    check = upoly.evaluate([emb(c) for c in psi], root)
    if check:
        raise ArithmeticError("adjoined root does not satisfy its polynomial")
    return L, emb, root


def checked_number_field(minpoly, name=None):
    """Build a number field after verifying the minimal polynomial is irreducible over Q."""
    coeffs = [to_mpq(c) for c in minpoly]
    coeffs = upoly.trim(coeffs)
    if len(coeffs) == 2:
        return QQ
    facs = _factor_rational(upoly.monic(coeffs))
    if len(facs) != 1 or facs[0][1] != 1:
        raise ValueError("minimal polynomial is reducible over Q")
    return NumberField(coeffs, name=name)


def sqrt_minus_one(field):
    """An element i of ``field`` with i^2 = -1, or None."""
    if field is QQ:
        return None
    roots = roots_in_field([field.one, field.zero, field.one], field)
    if not roots:
        return None
    # deterministic choice: the root with the lexicographically larger coordinates
    cands = sorted((r for r, _ in roots), key=lambda r: [str(c) for c in r.c])
    return cands[-1]
