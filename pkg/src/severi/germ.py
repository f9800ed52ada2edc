"""Plane-curve germs at the origin: intersection multiplicities and one blowup.

Intersection multiplicity is computed two independent ways.  The first is
Fulton's reduction algorithm, driven only by the axioms (additivity, the
value on a coordinate axis, and invariance under G -> G + A*F).  The second
takes the u-order of a resultant after a linear shear, where the shear is
accepted only after an exact check that nothing else on the line u = 0 (and
nothing at infinity) can contribute.  A third, slower, brute-force count of
monomials in the quotient ring serves as an oracle for tests.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

import flint

from .exactalg import upoly
from .exactalg.bipoly import BiPoly
from .exactalg.fields import QQ
from .exactalg.linalg import sparse_rank
from .exactalg.polyalg import gcd, resultant_v

__all__ = [
    "INFINITY",
    "OVERFLOW",
    "GermCurve",
    "IntersectionMismatch",
    "intersection_multiplicity",
    "multiplicity_at_origin",
    "quotient_dimension_oracle",
    "blowup_strict_transforms",
    "BlowupReport",
    "StrictTransform",
]

INFINITY = math.inf


class _Overflow:
    """Sentinel returned by the quotient oracle when the cap is too small."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "OVERFLOW"

    def __reduce__(self):
        return (_Overflow, ())


OVERFLOW = _Overflow()


class IntersectionMismatch(AssertionError):
    """The two intersection algorithms disagreed (an internal error)."""


class GermCurve:
    """A curve germ F = 0 through the origin."""

    __slots__ = ("poly", "mult")

    def __init__(self, poly: BiPoly):
        if not isinstance(poly, BiPoly):
            raise TypeError("GermCurve wants a BiPoly")
        if not poly:
            raise ValueError("the zero polynomial does not define a curve")
        if not poly.vanishes_at_origin():
            raise ValueError("curve does not pass through the origin")
        self.poly = poly
        self.mult = poly.order

    def __repr__(self):
        return "GermCurve(%s)" % self.poly


def _poly(x) -> BiPoly:
    return x.poly if isinstance(x, GermCurve) else x


def multiplicity_at_origin(F) -> int:
    """Lowest total degree of a term (the order at the origin)."""
    p = _poly(F)
    if not p:
        return INFINITY
    return p.order


# --- Fulton's algorithm ------------------------------------------------------------


def _ord_u(coeffs) -> float:
    for i, c in enumerate(coeffs):
        if c:
            return i
    return INFINITY


def _truncate(p: BiPoly, n: int) -> BiPoly:
    if p.degree <= n:
        return p
    return BiPoly._raw(p.field, {m: c for m, c in p.terms.items() if m[0] + m[1] <= n})


def _fulton(F: BiPoly, G: BiPoly, bound: int):
    """Fulton's reduction for coprime F, G with I_0(F, G) <= ``bound``.

    If I_0 <= N then m^N lies in the local ideal, and by Nakayama dropping
    terms of degree > N changes neither the ideal nor the answer.  Applying
    this with N = bound - (multiplicity already counted) keeps the u-degree
    from growing without limit during the Euclidean steps.
    """
    total = 0
    while True:
        N = bound - total
        F, G = _truncate(F, N), _truncate(G, N)
        if F.terms and not F.vanishes_at_origin():
            return total
        if G.terms and not G.vanishes_at_origin():
            return total
        if not F or not G:
            return INFINITY
        fr, gr = F.restrict("u"), G.restrict("u")
        if not fr and not gr:
            return INFINITY
        if not fr:
            F, G, fr, gr = G, F, gr, fr
        if not gr:
            # G = v * H, and I(v, F) is the order of F(u, 0)
            total += _ord_u(fr)
            G = G.shift_exponents(0, -1)
            continue
        r, s = len(fr) - 1, len(gr) - 1
        if r > s:
            F, G, fr, gr, r, s = G, F, gr, fr, s, r
        G = G - F.shift_exponents(s - r, 0).scale(gr[-1] / fr[-1])


def _intersection_fulton(F: BiPoly, G: BiPoly):
    F, G = F._unify(G)
    if not F.vanishes_at_origin() or not G.vanishes_at_origin():
        return 0
    if not F or not G:
        return INFINITY
    d = gcd(F, G)
    if d.vanishes_at_origin():
        return INFINITY
    if not d.is_constant():
        F, G = F.exquo(d), G.exquo(d)
    # coprime curves meet at most deg F * deg G times in the projective plane
    return _fulton(F, G, F.degree * G.degree)


# --- resultant path ------------------------------------------------------------------


def _shears():
    yield 0
    for k in itertools.count(1):
        yield k
        yield -k


def _shear(p: BiPoly, lam) -> BiPoly:
    if not lam:
        return p
    return p.subs_linear(1, lam, 0, 1)


def _shear_ok(F: BiPoly, G: BiPoly) -> bool:
    """Exact genericity test for projecting along v.

    The leading v-coefficient of F must be a nonzero constant (no
    intersection escapes to infinity over u = 0), and the only common root
    of F(0, v) and G(0, v) must be v = 0.
    """
    dv = F.degree_in("v")
    lead = [((a, b), c) for (a, b), c in F.terms.items() if b == dv]
    if len(lead) != 1 or lead[0][0] != (0, dv):
        return False
    f0, g0 = F.restrict("v"), G.restrict("v")
    if not g0:
        return False
    common = upoly.gcd(f0, g0)
    return all(not c for c in common[:-1])


def _intersection_resultant(F: BiPoly, G: BiPoly):
    F, G = F._unify(G)
    if not F.vanishes_at_origin() or not G.vanishes_at_origin():
        return 0
    if not F or not G:
        return INFINITY
    d = gcd(F, G)
    if d.vanishes_at_origin():
        return INFINITY
    if not d.is_constant():
        F, G = F.exquo(d), G.exquo(d)
    for lam in _shears():
        Fs, Gs = _shear(F, lam), _shear(G, lam)
        for A, B in ((Fs, Gs), (Gs, Fs)):
            if _shear_ok(A, B):
                res = resultant_v(A, B)
                return _ord_u(res)
    raise AssertionError("unreachable")  # pragma: no cover


def intersection_multiplicity(F, G, method: str = "both"):
    """Local intersection multiplicity I_0(F, G); ``INFINITY`` on a shared component.

    ``method`` selects ``"fulton"``, ``"resultant"`` or ``"both"`` (default),
    which runs the two and raises :class:`IntersectionMismatch` if they differ.
    Inputs may be :class:`GermCurve` or :class:`BiPoly`; a polynomial that
    does not vanish at the origin gives 0.
    """
    F, G = _poly(F), _poly(G)
    if method == "fulton":
        return _intersection_fulton(F, G)
    if method == "resultant":
        return _intersection_resultant(F, G)
    if method != "both":
        raise ValueError("unknown method %r" % method)
    a = _intersection_fulton(F, G)
    b = _intersection_resultant(F, G)
    if a != b:
        raise IntersectionMismatch("Fulton gives %s, resultant gives %s for (%s, %s)" % (a, b, F, G))
    return a


# --- brute-force oracle ------------------------------------------------------------------


def _monomials_below(n):
    return [(a, d - a) for d in range(n) for a in range(d + 1)]


def _quotient_dim_truncated(F: BiPoly, G: BiPoly, n: int) -> int:
    """dim K[u,v] / ((F, G) + m^n)."""
    mons = _monomials_below(n)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for P in (F, G):
        lo = P.order
        for a, b in mons:
            if a + b + lo >= n:
                continue
            row = {}
            for (i, j), c in P.terms.items():
                if i + j + a + b < n:
                    row[index[(i + a, j + b)]] = c
            if row:
                rows.append(row)
    if not rows:
        return len(mons)
    if F.field is QQ:
        mat = flint.fmpq_mat(len(rows), len(mons))
        for r, row in enumerate(rows):
            for k, c in row.items():
                mat[r, k] = flint.fmpq(int(c.numerator), int(c.denominator))
        rank = mat.rank()
    else:
        rank = sparse_rank(rows)
    return len(mons) - rank


def quotient_dimension_oracle(F, G, degree_cap: int = 64):
    """Dimension of the local quotient by (F, G), by linear algebra on monomials.

    The truncated dimensions d_N = dim K[u,v]/((F,G) + m^N) increase with N
    and are bounded by the answer; once d_N = d_(N+1), Nakayama's lemma gives
    m^N inside the ideal, so d_N is exact.  Returns ``OVERFLOW`` when no
    stabilization is seen below ``degree_cap``.
    """
    if degree_cap < 1:
        raise ValueError("degree_cap must be at least 1")
    F, G = _poly(F), _poly(G)
    F, G = F._unify(G)
    if (F and not F.vanishes_at_origin()) or (G and not G.vanishes_at_origin()):
        return 0
    prev = _quotient_dim_truncated(F, G, 1)
    for n in range(2, degree_cap + 1):
        cur = _quotient_dim_truncated(F, G, n)
        if cur == prev:
            return prev
        prev = cur
    return OVERFLOW


# --- one blowup at the origin --------------------------------------------------------------


@dataclass(frozen=True)
class StrictTransform:
    """Strict transform of one curve in the two standard charts.

    ``chart_u`` lives in coordinates (u, v') with v = u v' and exceptional
    curve u = 0; ``chart_v`` uses u = u' v with exceptional curve v = 0.
    """

    curve: BiPoly
    a: int
    chart_u: BiPoly
    chart_v: BiPoly
    smooth: bool


@dataclass(frozen=True)
class BlowupReport:
    transforms: tuple
    disjoint: bool
    meeting_pairs: tuple = dc_field(default=())

    @property
    def smooth(self) -> bool:
        return all(t.smooth for t in self.transforms)

    @property
    def smooth_and_disjoint(self) -> bool:
        return self.smooth and self.disjoint


def _smooth_over_exceptional(tu: BiPoly, tv: BiPoly) -> bool:
    # chart u: points (0, r) with T(r) = 0; singular iff T, T', d/du all vanish
    T = tu.restrict("v")
    S = tu.diff("u").restrict("v")
    g = upoly.gcd(T, upoly.derivative(T)) if T else []
    if T:
        g = upoly.gcd(g, S) if len(g) > 1 else g
        if len(g) > 1:
            return False
    # chart v: only the origin (direction u = 0) is not seen in chart u
    if tv.vanishes_at_origin() and tv.order >= 2:
        return False
    return True


def _meet_on_exceptional(x: StrictTransform, y: StrictTransform) -> bool:
    Tx, Ty = x.chart_u.restrict("v"), y.chart_u.restrict("v")
    if Tx and Ty and len(upoly.gcd(Tx, Ty)) > 1:
        return True
    return x.chart_v.vanishes_at_origin() and y.chart_v.vanishes_at_origin()


def blowup_strict_transforms(curves) -> BlowupReport:
    """Blow up the origin once and inspect the strict transforms along E.

    Smoothness and pairwise disjointness are decided with univariate gcds
    over the working field, so no points need to be found explicitly.
    """
    out = []
    for c in curves:
        p = _poly(c)
        GermCurve(p)  # validates
        a = p.order
        tu = p.blowup_chart("u", a)
        tv = p.blowup_chart("v", a)
        out.append(StrictTransform(p, a, tu, tv, _smooth_over_exceptional(tu, tv)))
    pairs = tuple(
        (i, j) for i, j in itertools.combinations(range(len(out)), 2) if _meet_on_exceptional(out[i], out[j])
    )
    return BlowupReport(tuple(out), not pairs, pairs)
