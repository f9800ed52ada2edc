"""Greatest common divisors, squarefree decomposition and resultants.

Bivariate polynomials are viewed as polynomials in ``v`` whose coefficients
are univariate polynomials in ``u`` (dense lists, see :mod:`.upoly`).  The gcd
runs a primitive remainder sequence in that ring; resultants use the
subresultant sequence.  Over the rationals FLINT supplies a fast path for the
gcd and the squarefree decomposition; the portable algorithms stay available
(``method="prs"``) and the test-suite cross-checks both.
"""

from __future__ import annotations

from dataclasses import dataclass

import flint
from gmpy2 import mpq

from . import upoly
from .bipoly import BiPoly
from .fields import QQ, common_field

__all__ = [
    "gcd",
    "gcd_prs",
    "squarefree_decomposition",
    "SquarefreeDecomposition",
    "AuxPoly",
    "resultant",
    "resultant_v",
    "divides_locally",
]


# --- K[u][v] dense view ---------------------------------------------------------


def _to_dense(p: BiPoly):
    """List indexed by v-degree of u-coefficient lists."""
    zero = p.field.zero
    dv = p.degree_in("v")
    du = p.degree_in("u")
    rows = [[zero] * (du + 1) for _ in range(dv + 1)]
    for (a, b), c in p.terms.items():
        rows[b][a] = c
    return [upoly.trim(r) for r in rows]


def _from_dense(rows, field) -> BiPoly:
    d = {}
    for b, r in enumerate(rows):
        for a, c in enumerate(r):
            if c:
                d[(a, b)] = c
    return BiPoly._raw(field, d)


def _dtrim(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _content(rows):
    g: list = []
    for r in rows:
        if r:
            g = upoly.gcd(g, r) if g else upoly.monic(r)
            if len(g) == 1:
                break
    return g


def _divide_rows(rows, c):
    if len(c) == 1:
        inv = 1 / c[0]
        return [upoly.scale(r, inv) for r in rows]
    return [upoly.exquo(r, c) if r else [] for r in rows]


def _prem(a, b):
    """Pseudo-remainder of a by b in K[u][v]."""
    r = [list(x) for x in a]
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [upoly.mul(x, lb) for x in r]
        for i, bi in enumerate(b):
            if bi:
                r[i + shift] = upoly.sub(r[i + shift], upoly.mul(lr, bi))
        r.pop()
        _dtrim(r)
    return r


def _primitive(rows):
    c = _content(rows)
    return _divide_rows(rows, c) if c else rows


# --- gcd -------------------------------------------------------------------------


def gcd_prs(p: BiPoly, q: BiPoly) -> BiPoly:
    """Bivariate gcd through a primitive remainder sequence in K[u][v]."""
    p, q = p._unify(q)
    field = p.field
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    a, b = _to_dense(p), _to_dense(q)
    ca, cb = _content(a), _content(b)
    c = upoly.gcd(ca, cb)
    a, b = _divide_rows(a, ca), _divide_rows(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else r)
    if b:
        # a nonzero remainder of v-degree 0: the primitive parts are coprime
        a = [[field.one]]
    out = [upoly.mul(x, c) for x in _primitive(a)]
    return _from_dense(out, field).monic()


def _to_flint(p: BiPoly, ctx):
    return ctx.from_dict({k: flint.fmpq(int(c.numerator), int(c.denominator)) for k, c in p.terms.items()})


def _from_flint(f) -> BiPoly:
    d = {}
    for k, c in f.to_dict().items():
        d[(int(k[0]), int(k[1]))] = mpq(int(c.p), int(c.q))
    return BiPoly._raw(QQ, d)


_CTX = flint.fmpq_mpoly_ctx.get(("u", "v"), "lex")


def gcd(p: BiPoly, q: BiPoly, method: str = "auto") -> BiPoly:
    """Monic gcd (graded-lex leading coefficient 1).

    ``method`` is ``"auto"`` (FLINT over the rationals, the remainder
    sequence otherwise), ``"prs"`` or ``"flint"``.
    """
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    rational = p.field is QQ and q.field is QQ
    if method == "prs" or (method == "auto" and not rational):
        return gcd_prs(p, q)
    if not rational:
        raise ValueError("the FLINT backend needs rational coefficients")
    return _from_flint(_to_flint(p, _CTX).gcd(_to_flint(q, _CTX))).monic()


def divides_locally(a: BiPoly, p: BiPoly) -> bool:
    """True when ``a`` divides ``p`` in the local ring at the origin.

    That is, a / gcd(a, p) is a unit there (nonzero constant term).
    """
    if not p:
        return True
    g = gcd(a, p)
    cof = a.exquo(g)
    return not cof.vanishes_at_origin()


# --- squarefree decomposition ---------------------------------------------------------


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``p = unit * prod(A**k for A, k in factors)`` with every A vanishing at 0."""

    unit: BiPoly
    factors: tuple

    def reassemble(self) -> BiPoly:
        out = self.unit
        for a, k in self.factors:
            out = out * a ** k
        return out

    @property
    def reduced(self) -> BiPoly:
        out = BiPoly.one(self.unit.field)
        for a, _ in self.factors:
            out = out * a
        return out


def _yun_v(p: BiPoly):
    """Yun's algorithm in v for a primitive polynomial; returns [(A, k)]."""
    out = []
    if p.degree_in("v") <= 0:
        return out
    dp = p.diff("v")
    a = gcd_prs(p, dp)
    b = p.exquo(a)
    c = dp.exquo(a)
    d = c - b.diff("v")
    k = 1
    while b.degree_in("v") > 0:
        a = gcd_prs(b, d)
        if not a.is_constant():
            out.append((a, k))
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.diff("v")
        k += 1
    return out


def _squarefree_generic(p: BiPoly):
    rows = _to_dense(p)
    cont = _content(rows)
    prim = _from_dense(_divide_rows(rows, cont), p.field)
    pieces = []
    for part, k in upoly.squarefree_parts(cont):
        # a squarefree content meets the origin only through the factor u
        if not part[0]:
            pieces.append((BiPoly.u(p.field), k))
    pieces.extend(_yun_v(prim))
    return pieces


def _squarefree_flint(p: BiPoly):
    _, facs = _to_flint(p, _CTX).factor()
    return [(_from_flint(f), int(k)) for f, k in facs]


def squarefree_decomposition(p: BiPoly, method: str = "auto") -> SquarefreeDecomposition:
    """Squarefree decomposition with the unit part split off.

    Factors not vanishing at the origin are moved into the unit.  With the
    FLINT path (rational input) every such factor is detected; the portable
    path only detects squarefree parts that are units as a whole, so its
    factors may still carry a unit cofactor, which is harmless for all local
    computations.
    """
    if not p:
        raise ValueError("squarefree decomposition of zero")
    rational = p.field is QQ
    if method == "flint" or (method == "auto" and rational):
        pieces = _squarefree_flint(p)
    else:
        pieces = _squarefree_generic(p)
    grouped: dict = {}
    for a, k in pieces:
        a = a.monic()
        if not a.vanishes_at_origin():
            continue
        grouped[k] = grouped[k] * a if k in grouped else a
    factors = tuple((grouped[k].monic(), k) for k in sorted(grouped))
    rest = BiPoly.one(p.field)
    for a, k in factors:
        rest = rest * a ** k
    unit = p.exquo(rest)
    return SquarefreeDecomposition(unit, factors)


# --- resultants ------------------------------------------------------------------


class AuxPoly:
    """Polynomial in an auxiliary variable with ring-valued coefficients.

    ``coeffs`` runs from the constant term up; the ring is either an exact
    field or :class:`BiPoly`.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var: str = "w"):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            raise ValueError("AuxPoly needs a nonzero leading coefficient")
        self.coeffs = cs
        self.var = var

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def __repr__(self):
        return "AuxPoly(%r, %r)" % (self.coeffs, self.var)

    @classmethod
    def from_bipoly(cls, p: BiPoly, var: str = "v") -> "AuxPoly":
        """View p as a polynomial in ``var`` with BiPoly coefficients."""
        return cls(p.as_univariate(var), var)


def _ring_ops(sample):
    if isinstance(sample, BiPoly):
        F = sample.field
        return (lambda a, b: a * b), (lambda a, b: a - b), (lambda a, b: a.exquo(b)), BiPoly.one(F)
    return (lambda a, b: a * b), (lambda a, b: a - b), (lambda a, b: a / b), sample ** 0


def _subresultant(A, B, mul, sub, div, one):
    """Classical resultant (Sylvester matrix, descending columns) over a domain.

    Subresultant remainder sequence without content removal.
    """

    def prem(a, b):
        # lb**(deg a - deg b + 1) * a mod b; the power is exact even when the
        # degree drops by more than one in a single step
        r = list(a)
        db = len(b) - 1
        lb = b[-1]
        steps = len(a) - db
        while r and len(r) - 1 >= db:
            steps -= 1
            sh = len(r) - 1 - db
            lr = r[-1]
            r = [mul(x, lb) for x in r]
            for i, bi in enumerate(b):
                r[i + sh] = sub(r[i + sh], mul(lr, bi))
            r.pop()
            while r and not r[-1]:
                r.pop()
        if r and steps > 0:
            scale = power(lb, steps)
            r = [mul(x, scale) for x in r]
        return r

    def power(x, n):
        out = one
        for _ in range(n):
            out = mul(out, x)
        return out

    def negate(x):
        return sub(sub(x, x), x)

    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
    if len(B) == 1:
        res = power(B[0], len(A) - 1)
        return res if s == 1 else negate(res)
    g = h = one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = prem(A, B)
        A = B
        if not R:
            return sub(A[0], A[0])
        den = mul(g, power(h, delta))
        B = [div(c, den) for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = div(power(g, delta), power(h, delta - 1))
        if len(B) == 1:
            dA = len(A) - 1
            res = div(power(B[0], dA), power(h, dA - 1))
            return res if s == 1 else negate(res)


def resultant(p: AuxPoly, q: AuxPoly):
    """Sylvester determinant with p's rows on top and ascending-power columns.

    This equals ``(-1)**(deg p * deg q)`` times the classical resultant
    (descending columns), and gives ``Res_w(2u + 2vw, v + uw) = 2u^2 - 2v^2``.
    """
    A, B = p.coeffs, q.coeffs
    mul, sub, div, one = _ring_ops(A[0])
    if isinstance(A[0], BiPoly) or isinstance(B[0], BiPoly):
        F = common_field(*(c.field for c in A + B if isinstance(c, BiPoly)))
        A = [c.to_field(F) if isinstance(c, BiPoly) else BiPoly.const(c, F) for c in A]
        B = [c.to_field(F) if isinstance(c, BiPoly) else BiPoly.const(c, F) for c in B]
        one = BiPoly.one(F)
        mul, sub, div, _ = _ring_ops(A[0])
    std = _subresultant(A, B, mul, sub, div, one)
    if (p.degree * q.degree) % 2:
        return sub(sub(std, std), std)
    return std


def resultant_v(F: BiPoly, G: BiPoly) -> list:
    """Res_v(F, G) as a dense list in u, with the same sign convention.

    Coefficients live in K[u] (dense lists), which keeps the subresultant
    sequence cheap compared with sparse bivariate coefficients.
    """
    F, G = F._unify(G)
    a, b = _to_dense(F), _to_dense(G)
    if not a or not b:
        return []
    m, n = len(a) - 1, len(b) - 1
    if F.field is QQ:
        fr = _to_flint(F, _CTX).resultant(_to_flint(G, _CTX), "v")
        d = fr.to_dict()
        deg = max((k[0] for k in d), default=-1)
        std = [mpq(0)] * (deg + 1)
        for k, c in d.items():
            std[k[0]] = mpq(int(c.p), int(c.q))
        std = upoly.trim(std)
    else:
        one = [F.field.one]
        std = _subresultant(a, b, upoly.mul, upoly.sub, upoly.exquo, one)
        std = upoly.trim(list(std))
    if (m * n) % 2:
        std = [-c for c in std]
    return std
