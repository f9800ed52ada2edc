"""Newton polygons and rational Newton-Puiseux expansions of plane-curve germs.

Branches are computed with Duval's rational variant of the Newton-Puiseux
algorithm.  Every branch comes out as

    x = lam * t**E,   y = P(t) + c * t**S * Y(t)

where (x, y) is (u, v) or (v, u) depending on the parameter axis, P is an
exact polynomial, and Y(t) is the unique power-series root with Y(0) = 0 of
a polynomial R(t, Y) with R_Y(0, 0) != 0.  The root is computed lazily by
Newton iteration, so a branch can be refined to any order without touching
the coefficients already reported.  Conjugate branches are represented once;
``conj_degree`` records how many geometric branches the representative
stands for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactalg.bipoly import BiPoly
from .exactalg.factor import Embedding, ExtensionRequired, adjoin_root, factor_over
from .exactalg.fields import QQ, FieldMismatch
from .exactalg.polyalg import gcd
from .germ import INFINITY, GermCurve, intersection_multiplicity

__all__ = [
    "NewtonPolygon",
    "Segment",
    "newton_polygon",
    "PuiseuxBranch",
    "branches",
    "branch_order",
]


# --- Newton polygon -------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """A compact edge of the Newton polygon, listed left to right.

    ``start`` has the smaller u-exponent.  ``steepness`` is -dj/di > 0 and
    ``mu`` = 1/steepness is the exponent of the corresponding Puiseux term
    (v ~ c u^mu).
    """

    start: tuple
    end: tuple

    @property
    def steepness(self) -> Fraction:
        (i0, j0), (i1, j1) = self.start, self.end
        return Fraction(j0 - j1, i1 - i0)

    @property
    def mu(self) -> Fraction:
        return 1 / self.steepness


@dataclass(frozen=True)
class NewtonPolygon:
    """Compact lower-left boundary of the Newton diagram.

    Vertices run from the point of smallest u-exponent to the point of
    smallest v-exponent.  A polynomial divisible by u*v may have a single
    vertex and no segments (``uv`` gives the lone vertex (1, 1)).
    """

    vertices: tuple
    segments: tuple


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(terms) -> NewtonPolygon:
    best: dict = {}
    for i, j in terms:
        if i not in best or j < best[i]:
            best[i] = j
    pts = sorted(best.items())
    jmin = min(j for _, j in pts)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    verts = []
    for p in lower:
        verts.append(p)
        if p[1] == jmin:
            break
    segs = tuple(Segment(verts[k], verts[k + 1]) for k in range(len(verts) - 1))
    return NewtonPolygon(tuple(verts), segs)


def newton_polygon(F) -> NewtonPolygon:
    """Lower-left Newton polygon of F (exponent of u first)."""
    p = F.poly if isinstance(F, GermCurve) else F
    if not p:
        raise ValueError("the zero polynomial has no Newton polygon")
    return _hull(p.terms)


# --- truncated power series over a field ------------------------------------------------


def _smul(a, b, n, zero):
    out = [zero] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _sinv(a, n, zero):
    """Inverse of a series with a[0] != 0, modulo t^n."""
    inv0 = 1 / a[0]
    out = [zero] * n
    out[0] = inv0
    for k in range(1, n):
        acc = zero
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                acc = acc + a[j] * out[k - j]
        out[k] = -acc * inv0
    return out


def _sadd(a, b, n, zero):
    out = [zero] * n
    for i in range(min(len(a), n)):
        out[i] = a[i]
    for i in range(min(len(b), n)):
        out[i] = out[i] + b[i]
    return out


# --- Duval step ----------------------------------------------------------------------------


def _bezout(p: int, q: int):
    """(uu, vv) with uu*q - vv*p = 1 and uu, vv >= 0."""
    if p == 1:
        return 1, q - 1
    uu = pow(q, -1, p)
    return uu, (uu * q - 1) // p


def _binomial_row(beta, j, one):
    row = [one]
    for k in range(1, j + 1):
        row.append(row[-1] * (j - k + 1) / k)
    return [row[k] * beta ** (j - k) for k in range(j + 1)]


def _duval_substitute(G: BiPoly, p: int, q: int, xi, uu: int, vv: int, N: int) -> BiPoly:
    """G(xi^vv X^q, X^p (xi^uu + Y)) / X^N."""
    L = G.field
    one = L.one
    beta = xi ** uu
    alpha = xi ** vv
    apow: dict = {}
    out: dict = {}
    for (i, j), a in G.terms.items():
        if i not in apow:
            apow[i] = alpha ** i
        base = a * apow[i]
        e = q * i + p * j - N
        for k, b in enumerate(_binomial_row(beta, j, one)):
            key = (e, k)
            val = base * b
            s = out.get(key)
            out[key] = val if s is None else s + val
    return BiPoly._raw(L, {k: c for k, c in out.items() if c})


@dataclass
class _State:
    G: BiPoly
    lam: object
    E: int
    P: dict  # exponent -> coefficient (exact polynomial part of y)
    c: object
    S: int
    emb: Embedding
    conj: int


def _embed_state(st: _State, emb: Embedding, L) -> _State:
    P = {k: emb(c) for k, c in st.P.items()}
    return _State(
        st.G.to_field(L, emb),
        emb(st.lam),
        st.E,
        P,
        emb(st.c),
        st.S,
        st.emb.then(emb),
        st.conj,
    )


def _edges_from(G: BiPoly, mu_filter):
    poly = _hull(G.terms)
    return [s for s in poly.segments if mu_filter(s.mu)]


def _expand(st: _State, segs, allow_ext: bool, out: list, axis: str, source: BiPoly):
    for seg in segs:
        (i_left, j_left), (i_right, j_right) = seg.start, seg.end
        dj = j_left - j_right
        di = i_right - i_left
        g = math.gcd(dj, di)
        p, q = di // g, dj // g  # mu = p/q
        # residual polynomial phi(Z) = sum_k a(i_right - p k, j_right + q k) Z^k
        m = dj // q
        L = st.G.field
        phi = [st.G.coeff(i_right - p * k, j_right + q * k) for k in range(m + 1)]
        _, facs = factor_over(phi, L)
        for psi, r in facs:
            sub = st
            if len(psi) == 2:
                xi = -psi[0]
                L2 = L
            else:
                if not allow_ext:
                    raise ExtensionRequired(psi, L)
                L2, emb, xi = adjoin_root(L, psi)
                sub = _embed_state(st, emb, L2)
                sub.conj = st.conj * (len(psi) - 1)
            uu, vv = _bezout(p, q)
            N = q * i_right + p * j_right
            G2 = _duval_substitute(sub.G, p, q, xi, uu, vv, N)
            alpha = xi ** vv
            beta = xi ** uu
            cS = sub.c * alpha ** sub.S
            P2 = {q * k: c * alpha ** k for k, c in sub.P.items()}
            key = q * sub.S + p
            P2[key] = P2.get(key, L2.zero) + cS * beta
            nxt = _State(G2, sub.lam * alpha ** sub.E, q * sub.E, P2, cS, q * sub.S + p, sub.emb, sub.conj)
            _continue(nxt, r, allow_ext, out, axis, source)


def _continue(st: _State, r: int, allow_ext: bool, out: list, axis: str, source: BiPoly):
    G = st.G
    if G.vanishes_at_origin() is False:
        raise AssertionError("Duval step lost the origin")
    # an exact root Y = 0 gives a branch with no tail
    if all(j >= 1 for (_, j) in G.terms):
        out.append(_make_branch(st, None, axis, source))
        G = G.shift_exponents(0, -1)
        if not G.vanishes_at_origin():
            return
        st = _State(G, st.lam, st.E, st.P, st.c, st.S, st.emb, st.conj)
    if r == 1 or G.coeff(0, 1):
        out.append(_make_branch(st, G, axis, source))
        return
    _expand(st, _edges_from(G, lambda mu: True), allow_ext, out, axis, source)


# --- branches -----------------------------------------------------------------------------------


class PuiseuxBranch:
    """One (conjugacy class of) branch(es) of a germ at the origin.

    Attributes
    ----------
    e : ramification index (order of the parameter-axis coordinate)
    axis : ``'u'`` if u = lam * t**e, ``'v'`` if v = lam * t**e
    field : coefficient field of the expansion
    embedding : map from the germ's field into ``field``
    conj_degree : number of conjugate branches this one represents
    order : the expansion is exact modulo t**order
    source : the squarefree germ the branch was computed from
    """

    def __init__(self, *, axis, lam, E, P, c, S, R, field, embedding, conj_degree, source, order):
        self.axis = axis
        self.e = E
        self.field = field
        self.embedding = embedding
        self.conj_degree = conj_degree
        self.source = source
        self._lam = lam
        self._P = P
        self._c = c
        self._S = S
        self._R = R
        self._tail = [field.zero]
        self.order = 0
        self._ensure(order)

    # expansions
    def _ensure(self, n: int):
        need = max(n - self._S, 1)
        if self._R is not None and len(self._tail) < need:
            self._tail = _solve_regular(self._R, need, self._tail)
        self.order = max(self.order, n)

    def refine(self, n: int) -> "PuiseuxBranch":
        """Expand to at least ``n`` terms; earlier coefficients never change."""
        self._ensure(n)
        return self

    def axis_series(self, n: int) -> list:
        out = [self.field.zero] * n
        if self.e < n:
            out[self.e] = self._lam
        return out

    def other_series(self, n: int) -> list:
        self._ensure(n)
        zero = self.field.zero
        out = [zero] * n
        for k, c in self._P.items():
            if k < n:
                out[k] = out[k] + c
        if self._R is not None:
            for k, c in enumerate(self._tail[: max(n - self._S, 0)]):
                if c:
                    out[k + self._S] = out[k + self._S] + self._c * c
        return out

    def series(self, n: int):
        """(u(t), v(t)) modulo t**n as coefficient lists."""
        a, b = self.axis_series(n), self.other_series(n)
        return (a, b) if self.axis == "u" else (b, a)

    @property
    def exact(self) -> bool:
        """True when the parameterization is a polynomial (no infinite tail)."""
        return self._R is None

    def tangent_order(self) -> int:
        """min(ord_t u, ord_t v); equals e for the chosen parameter axis."""
        return self.e

    def __repr__(self):
        n = max(self.order, self.e + 1)
        us, vs = self.series(min(n, self.e + 6))
        return "PuiseuxBranch(e=%d, axis=%s, conj=%d, u=%s, v=%s, field=%s)" % (
            self.e,
            self.axis,
            self.conj_degree,
            _fmt_series(us),
            _fmt_series(vs),
            self.field,
        )

    def substitute(self, H: BiPoly, n: int) -> list:
        """H(u(t), v(t)) modulo t**n (exact)."""
        if not isinstance(H, BiPoly):
            raise TypeError("branch substitution expects a BiPoly")
        L = self.field
        Hl = _embed_poly(H, self)
        if self.axis == "v":
            Hl = Hl.swap()
        y = self.other_series(n)
        zero = L.zero
        cols: dict = {}
        for (a, b), c in Hl.terms.items():
            cols.setdefault(b, []).append((a, c))
        out = [zero] * n
        ypow = [L.one] + [zero] * (n - 1)
        lam_pows: dict = {}
        for b in range(max(cols, default=-1) + 1):
            if b:
                ypow = _smul(ypow, y, n, zero)
            if b not in cols:
                continue
            for a, c in cols[b]:
                shift = self.e * a
                if shift >= n:
                    continue
                if a not in lam_pows:
                    lam_pows[a] = self._lam ** a
                k = c * lam_pows[a]
                for i in range(n - shift):
                    if ypow[i]:
                        out[i + shift] = out[i + shift] + k * ypow[i]
        return out


def _fmt_series(s):
    from .exactalg.serialize import format_scalar

    parts = []
    for k, c in enumerate(s):
        if c:
            parts.append("%s*t^%d" % (format_scalar(c), k))
    return (" + ".join(parts) + " + ...") if parts else "0"


def _embed_poly(H: BiPoly, b: PuiseuxBranch) -> BiPoly:
    if H.field is b.field:
        return H
    src = b.embedding.source
    if H.field is QQ:
        return H.to_field(b.field)
    if H.field is src:
        return H.to_field(b.field, b.embedding)
    raise FieldMismatch("polynomial over %s cannot be evaluated on a branch over %s" % (H.field, b.field))


def _solve_regular(R: BiPoly, n: int, start):
    """Power-series root Y(X) of R with Y(0) = 0 modulo X^n (Newton iteration)."""
    L = R.field
    zero = L.zero
    rows: dict = {}
    for (i, j), c in R.terms.items():
        rows.setdefault(j, {})[i] = c
    dY = max(rows)
    cols = []
    for j in range(dY + 1):
        row = rows.get(j, {})
        cols.append([row.get(i, zero) for i in range(max(row, default=-1) + 1)])
    dcols = [[c * j for c in cols[j]] for j in range(1, dY + 1)]

    def horner(cs, Y, m):
        acc = [zero] * m
        for poly in reversed(cs):
            acc = _sadd(_smul(acc, Y, m, zero), poly, m, zero)
        return acc

    Y = list(start) + [zero] * 0
    prec = len(Y)
    while prec < n:
        prec = min(2 * prec, n)
        Yp = Y + [zero] * (prec - len(Y))
        val = horner(cols, Yp, prec)
        der = horner(dcols, Yp, prec)
        corr = _smul(val, _sinv(der, prec, zero), prec, zero)
        Y = [Yp[k] - corr[k] for k in range(prec)]
    return Y


def _make_branch(st: _State, R, axis, source) -> PuiseuxBranch:
    return PuiseuxBranch(
        axis=axis,
        lam=st.lam,
        E=st.E,
        P=dict(st.P),
        c=st.c,
        S=st.S,
        R=R,
        field=st.G.field,
        embedding=st.emb,
        conj_degree=st.conj,
        source=source,
        order=0,
    )


def _axis_branch(axis, field, source) -> PuiseuxBranch:
    # the branch {v = 0} is x = t, y = 0 with parameter axis u (and symmetrically)
    return PuiseuxBranch(
        axis=axis,
        lam=field.one,
        E=1,
        P={},
        c=field.one,
        S=0,
        R=None,
        field=field,
        embedding=Embedding.identity(field),
        conj_degree=1,
        source=source,
        order=0,
    )


def branches(F, order: int = 8, allow_extensions: bool = True) -> list:
    """All branches of the squarefree germ F at the origin, one per conjugacy class.

    Axis components are split off first.  Remaining branches with
    ord u <= ord v are expanded along u, the others along v, so ``e`` is the
    multiplicity of each branch.  Raises :class:`ExtensionRequired` when a
    residue field extension is needed but ``allow_extensions`` is false.
    """
    p = F.poly if isinstance(F, GermCurve) else F
    if not p:
        raise ValueError("the zero polynomial has no branches")
    K = p.field
    out: list = []
    if not p.vanishes_at_origin():
        return out
    G = p
    if all(j >= 1 for _, j in G.terms):
        out.append(_axis_branch("u", K, p))
        G = G.shift_exponents(0, -1)
    if all(i >= 1 for i, _ in G.terms):
        out.append(_axis_branch("v", K, p))
        G = G.shift_exponents(-1, 0)
    if G.vanishes_at_origin():
        for axis, H, keep in (("u", G, lambda mu: mu >= 1), ("v", G.swap(), lambda mu: mu > 1)):
            st = _State(H, K.one, 1, {}, K.one, 0, Embedding.identity(K), 1)
            _expand(st, _edges_from(H, keep), allow_extensions, out, axis, p)
    for b in out:
        b.refine(order)
    return out


# --- valuations --------------------------------------------------------------------------------


def _first_nonzero(s):
    for k, c in enumerate(s):
        if c:
            return k
    return None


def branch_order(b: PuiseuxBranch, H: BiPoly):
    """ord_t H(u(t), v(t)), certified; ``INFINITY`` if H vanishes on the branch.

    The expansion starts at max(8, 2 deg H) and doubles.  A vanishing
    truncation is only trusted beyond an a priori bound: with D = gcd(F, H),
    the branch lies on D iff ord_t D exceeds I_0(D, F/D), and off D the order
    of H is at most I_0(F/D, H).
    """
    if not H:
        return INFINITY
    if not H.vanishes_at_origin():
        return 0
    n = max(8, 2 * H.degree, b.order)
    s = b.substitute(H, n)
    k = _first_nonzero(s)
    if k is not None:
        return k
    F = b.source
    Hs = H.to_field(F.field) if H.field is QQ and F.field is not QQ else H
    if F.field is QQ and Hs.field is not QQ:
        # compare in the larger field
        F = F.to_field(Hs.field)
    D = gcd(F, Hs)
    rest = F.exquo(D)
    if D.vanishes_at_origin():
        bound_on_D = intersection_multiplicity(D, rest, method="resultant") if rest.vanishes_at_origin() else 0
        m = max(n, bound_on_D + 1)
        if _first_nonzero(b.substitute(D, m)) is None:
            return INFINITY
    bound = intersection_multiplicity(rest, Hs, method="resultant")
    m = max(n, bound + 1)
    while True:
        k = _first_nonzero(b.substitute(H, m))
        if k is not None:
            return k
        if m > bound:
            raise AssertionError("branch order exceeds its certified bound")
        m *= 2
