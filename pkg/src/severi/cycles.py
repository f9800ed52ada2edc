"""Jacobian cycles in P(Omega^1) over a surface germ and the triple number L_dh L_df L_dg.

Coordinates: the germ is (u, v) at the origin and the fiber of P(Omega^1) is
the direction w, so the hyperplane of a 1-form P du + Q dv is {P + w Q = 0}
in the standard chart.  For invariant germs f, g with Jacobian

    J = f_u g_v - f_v g_u = c * prod A_k ** n_k,

the cycle L_df . L_dg splits into one section curve over every branch of
every A_k (weighted by n_k) plus m0 copies of the central fiber F0.  The
triple number is L_dh . (that cycle) with h = prod A_k:

* over a branch phi lifted with the pair (P, Q) = (s_u, s_v), s in {f, g},
  L_dh cuts ord_t Jac(s, h)(phi) - beta, with beta = min(ord P(phi), ord Q(phi));
* L_dh meets F0 once.

The lift uses f unless f_u and f_v both vanish on the branch (the component
divides f); then g is used.  Both sides give the same number wherever both
are defined, which is what makes the result symmetric in f and g.

Two independent evaluations are provided: the branch ledger built from
Puiseux expansions, and a branch-free one made only of intersection
multiplicities (sums of beta over a component become a minimum of
I_0(A, s_u + a s_v) over enough constants a).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg.bipoly import BiPoly
from .exactalg.fields import QQ
from .exactalg.polyalg import divides_locally, gcd, squarefree_decomposition
from .germ import INFINITY, blowup_strict_transforms, intersection_multiplicity
from .puiseux import PuiseuxBranch, branch_order, branches

__all__ = [
    "CycleError",
    "DegenerateWedge",
    "LiftUndefined",
    "ImproperCycle",
    "TypeZeroBranch",
    "NotInvariant",
    "SymmetryViolation",
    "FormSection",
    "JacobianData",
    "BranchRecord",
    "CycleLedger",
    "jacobian",
    "wedge",
    "beta_profile",
    "fiber_multiplicity_m0",
    "cycle_decomposition",
    "triple_product",
    "triple_product_intersections",
    "claim_ii_check",
    "ClaimIIReport",
    "local_contribution",
    "equality_case_diagnostics",
    "EqualityDiagnostics",
]


# --- errors -----------------------------------------------------------------------------


class CycleError(ArithmeticError):
    """Base class for failures of the cycle computation; ``kind`` is machine readable."""

    kind = "cycle-error"


class DegenerateWedge(CycleError):
    kind = "DegenerateWedge"


class LiftUndefined(CycleError):
    kind = "LiftUndefined"


class ImproperCycle(CycleError):
    kind = "ImproperCycle"


class TypeZeroBranch(CycleError):
    kind = "TypeZeroBranch"

    def __init__(self, component: BiPoly):
        self.component = component
        super().__init__("component %s divides both f and g" % component)


class NotInvariant(CycleError):
    kind = "NotInvariant"


class SymmetryViolation(AssertionError):
    """Exchanging f and g changed the triple number (internal error)."""


# --- basic objects ---------------------------------------------------------------------------


def jacobian(f: BiPoly, g: BiPoly) -> BiPoly:
    """f_u g_v - f_v g_u (du ^ dv positively oriented)."""
    return f.diff("u") * g.diff("v") - f.diff("v") * g.diff("u")


@dataclass(frozen=True)
class FormSection:
    """The 1-form P du + Q dv; ``exact`` when it is dH for the stored ``H``."""

    P: BiPoly
    Q: BiPoly
    H: BiPoly | None = None

    def __post_init__(self):
        if not self.P and not self.Q:
            raise ValueError("a form section needs a nonzero coefficient")

    @property
    def exact(self) -> bool:
        return self.H is not None

    @classmethod
    def of(cls, H: BiPoly) -> "FormSection":
        return cls(H.diff("u"), H.diff("v"), H)


@dataclass(frozen=True)
class JacobianData:
    f: BiPoly
    g: BiPoly
    J: BiPoly
    unit: BiPoly
    components: tuple  # ((A_k, n_k), ...)
    divides_f: tuple
    divides_g: tuple

    @property
    def h(self) -> BiPoly:
        out = BiPoly.one(self.J.field)
        for a, _ in self.components:
            out = out * a
        return out

    @property
    def reduced(self) -> bool:
        return all(n == 1 for _, n in self.components)


def wedge(f: BiPoly, g: BiPoly) -> JacobianData:
    """Jacobian of (f, g) with its squarefree decomposition and type flags."""
    f, g = f._unify(g)
    for name, p in (("f", f), ("g", g)):
        if p.is_constant():
            raise ValueError("%s must be nonconstant" % name)
        if not p.vanishes_at_origin():
            raise ValueError("%s must vanish at the origin" % name)
    J = jacobian(f, g)
    if not J:
        raise DegenerateWedge("df ^ dg vanishes identically")
    sq = squarefree_decomposition(J)
    comps = tuple(sq.factors)
    return JacobianData(
        f,
        g,
        J,
        sq.unit,
        comps,
        tuple(divides_locally(a, f) for a, _ in comps),
        tuple(divides_locally(a, g) for a, _ in comps),
    )


def _check_type_zero(f: BiPoly, g: BiPoly, jd: JacobianData | None = None):
    if jd is None:
        common = gcd(f, g)
    else:
        common = gcd(gcd(jd.h, f), g) if jd.components else BiPoly.one(f.field)
    if common.vanishes_at_origin() and not common.is_constant():
        raise TypeZeroBranch(common)


# --- per-branch data -------------------------------------------------------------------------


def beta_profile(branch: PuiseuxBranch, section: FormSection):
    """Common vanishing order of the pulled-back pair (P, Q) along the branch."""
    a = branch_order(branch, section.P)
    b = branch_order(branch, section.Q)
    if a == INFINITY and b == INFINITY:
        raise LiftUndefined("both coefficients of the section vanish on the branch")
    return min(a, b)


def _leading(branch: PuiseuxBranch, P: BiPoly, order):
    if order == INFINITY:
        return branch.field.zero
    return branch.substitute(P, order + 1)[order]


@dataclass(frozen=True)
class _Side:
    """One lift of a branch: orders along the branch for the pair (s_u, s_v)."""

    beta: object
    jac_order: object  # ord Jac(s, A_k)
    direction: tuple  # leading coefficients (p0, q0) of the pair


@dataclass(frozen=True)
class BranchRecord:
    component: int
    A: BiPoly
    n: int
    branch: PuiseuxBranch
    lift: str  # 'f' or 'g'
    beta: int
    gamma: int
    jac_order: int  # ord Jac(src, A_k) on the branch
    cross_order: int  # sum over j != k of ord A_j on the branch
    other: object = None  # beta/jac for the other side when defined

    @property
    def conj(self) -> int:
        return self.branch.conj_degree

    @property
    def e(self) -> int:
        return self.branch.e

    @property
    def pairing(self) -> int:
        """ord Jac(src, h) on the branch."""
        return self.jac_order + self.cross_order

    @property
    def section_term(self) -> int:
        """The C.B contribution: ord Jac(src, A_k) - beta - gamma (never negative)."""
        return self.jac_order - self.beta - self.gamma

    @property
    def local_value(self) -> int:
        """L_dh . C over this branch."""
        return self.pairing - self.beta

    def swapped_value(self):
        """Same quantity computed from the other lift, or None if undefined there."""
        if self.other is None:
            return None
        return self.other.jac_order + self.cross_order - self.other.beta


@dataclass(frozen=True)
class CycleLedger:
    jac: JacobianData
    records: tuple
    m0: int
    m0_other_chart: int
    w0: object
    w0_other_chart: object
    c_f: BiPoly
    c_g: BiPoly
    order: int

    @property
    def f(self):
        return self.jac.f

    @property
    def g(self):
        return self.jac.g

    @property
    def strict_hypothesis_violated(self) -> bool:
        """Some h_i divides f (the relaxed, per-branch lift rule was needed)."""
        return any(self.jac.divides_f)

    @property
    def all_f_side(self) -> bool:
        return all(r.lift == "f" for r in self.records)

    @property
    def pairing_term(self) -> int:
        return sum(r.n * r.conj * r.pairing for r in self.records)

    @property
    def beta_sum(self) -> int:
        return sum(r.n * r.conj * r.beta for r in self.records)

    @property
    def triple(self) -> int:
        return self.pairing_term - self.beta_sum + self.m0

    @property
    def triple_swapped(self) -> int:
        """Triple number with f and g exchanged (default lift from g)."""
        total = self.m0
        for r in self.records:
            if r.lift == "g":
                val = r.local_value
            else:
                val = r.swapped_value()
                if val is None:
                    val = r.local_value
            total += r.n * r.conj * val
        return total

    def lemma_consistency(self) -> dict:
        """Per component: I_0(Jac(src, A_k), A_k) against sum(gamma + beta) + C.B."""
        out = {}
        for r in self.records:
            d = out.setdefault(r.component, {"jac": 0, "gamma_beta": 0, "section": 0})
            d["jac"] += r.conj * r.jac_order
            d["gamma_beta"] += r.conj * (r.gamma + r.beta)
            d["section"] += r.conj * r.section_term
        return out


def _side(branch, s: BiPoly, A: BiPoly):
    P, Q = s.diff("u"), s.diff("v")
    a, b = branch_order(branch, P), branch_order(branch, Q)
    if a == INFINITY and b == INFINITY:
        return None
    beta = min(a, b)
    jac = branch_order(branch, jacobian(s, A))
    return _Side(beta, jac, (_leading(branch, P, beta), _leading(branch, Q, beta)))


def _common_factor(s: BiPoly) -> BiPoly:
    su, sv = s.diff("u"), s.diff("v")
    if not su and not sv:
        return s
    return gcd(su, sv)


def _w_candidates():
    yield 0
    for k in itertools.count(1):
        yield k
        yield -k


def _pick_direction(bad, chart: str):
    """First integer w avoiding the limit directions in ``bad``.

    ``bad`` holds leading pairs (p0, q0); in chart 'w' the point is bad when
    p0 + w q0 = 0, in the reversed chart when w p0 + q0 = 0.
    """
    for w in _w_candidates():
        ok = True
        for p0, q0 in bad:
            val = (p0 + q0 * w) if chart == "w" else (p0 * w + q0)
            if not val:
                ok = False
                break
        if ok:
            return w


def _m0_at(f: BiPoly, g: BiPoly, w, chart: str):
    fu, fv, gu, gv = f.diff("u"), f.diff("v"), g.diff("u"), g.diff("v")
    if chart == "w":
        A, B = fu + fv.scale(w), gu + gv.scale(w)
    else:
        A, B = fu.scale(w) + fv, gu.scale(w) + gv
    return intersection_multiplicity(A, B, method="resultant")


def cycle_decomposition(f: BiPoly, g: BiPoly, order: int = 8, jac: JacobianData | None = None) -> CycleLedger:
    """Branch-by-branch ledger of L_df . L_dg = sum n_i C_i + m0 F0."""
    jd = jac or wedge(f, g)
    f, g = jd.f, jd.g
    _check_type_zero(f, g, jd)
    comps = jd.components
    records = []
    bad_dirs = []
    for k, (A, n) in enumerate(comps):
        for b in branches(A, order):
            sf = _side(b, f, A)
            sg = _side(b, g, A)
            if sf is None and sg is None:
                raise LiftUndefined("no lift for a branch of %s" % A)
            lift, main, other = ("f", sf, sg) if sf is not None else ("g", sg, None)
            gamma = min(branch_order(b, A.diff("u")), branch_order(b, A.diff("v")))
            cross = 0
            for j, (Aj, _) in enumerate(comps):
                if j != k:
                    cross += branch_order(b, Aj)
            if cross == INFINITY or main.jac_order == INFINITY:
                raise ImproperCycle("a section curve meets L_dh improperly over %s" % A)
            for side in (sf, sg):
                if side is not None:
                    bad_dirs.append(side.direction)
            records.append(BranchRecord(k, A, n, b, lift, main.beta, gamma, main.jac_order, cross, other))
    w0 = _pick_direction(bad_dirs, "w")
    w1 = _pick_direction(bad_dirs, "rev")
    m0 = _m0_at(f, g, w0, "w")
    m1 = _m0_at(f, g, w1, "rev")
    if m0 == INFINITY or m1 == INFINITY:
        raise ImproperCycle("L_df and L_dg share a horizontal component")
    if m0 != m1:
        raise AssertionError("m0 differs between the fiber charts (%s vs %s)" % (m0, m1))
    return CycleLedger(jd, tuple(records), m0, m1, w0, w1, _common_factor(f), _common_factor(g), order)


def fiber_multiplicity_m0(f: BiPoly, g: BiPoly) -> int:
    """Multiplicity of the central fiber F0 in L_df . L_dg.

    Evaluated as I_0(f_u + w f_v, g_u + w g_v) at an integer w that avoids
    the limit directions of all section curves, and checked in the reversed
    chart.
    """
    return cycle_decomposition(f, g).m0


def triple_product(f: BiPoly, g: BiPoly, order: int = 8, method: str = "branches") -> int:
    """L_dh L_df L_dg at the origin.

    ``method`` is ``"branches"`` (ledger of Puiseux branches, default),
    ``"intersections"`` (branch-free) or ``"both"``.  The branch path also
    recomputes the number with f and g exchanged and raises
    :class:`SymmetryViolation` on a mismatch.
    """
    if method == "intersections":
        return triple_product_intersections(f, g)
    led = cycle_decomposition(f, g, order)
    t = led.triple
    if led.triple_swapped != t:
        raise SymmetryViolation("f/g exchange gives %s instead of %s" % (led.triple_swapped, t))
    if method == "both":
        t2 = triple_product_intersections(f, g)
        if t2 != t:
            raise AssertionError("branch ledger gives %s, intersection path %s" % (t, t2))
    elif method != "branches":
        raise ValueError("unknown method %r" % method)
    return t


# --- branch-free evaluation --------------------------------------------------------------------


def _origin_part(p: BiPoly) -> BiPoly | None:
    return p if (p.vanishes_at_origin() and not p.is_constant()) else None


def _min_generic(A: BiPoly, P: BiPoly, Q: BiPoly, count: int):
    """min over a = 0, 1, -1, ... (``count`` values) of I_0(A, P + a Q)."""
    best = INFINITY
    for a in itertools.islice(_w_candidates(), count):
        best = min(best, intersection_multiplicity(A, P + Q.scale(a), method="resultant"))
    return best


@dataclass(frozen=True)
class IntersectionLedger:
    pairing_term: int
    beta_sum: int
    m0: int
    split: tuple  # per component: (A_f-part, A_g-part)

    @property
    def triple(self) -> int:
        return self.pairing_term - self.beta_sum + self.m0


def intersection_ledger(f: BiPoly, g: BiPoly, jac: JacobianData | None = None) -> IntersectionLedger:
    """The ledger sums computed from intersection multiplicities only.

    For a component piece A lifted from s, sum over its branches of beta is
    I_0(A, s_u + a s_v) for all but at most (number of branches) values of
    a, hence the minimum over mult_0(A) + 1 values.  The same argument
    applied to the section curves gives m0.
    """
    jd = jac or wedge(f, g)
    f, g = jd.f, jd.g
    _check_type_zero(f, g, jd)
    h = jd.h
    c_f = _common_factor(f)
    jf, jg = jacobian(f, h), jacobian(g, h)
    pairing = beta = 0
    split = []
    for A, n in jd.components:
        Ag = gcd(A, c_f) if not c_f.is_constant() else BiPoly.one(A.field)
        Af = A.exquo(Ag)
        Af, Ag = _origin_part(Af), _origin_part(Ag)
        split.append((Af, Ag))
        for piece, s, js in ((Af, f, jf), (Ag, g, jg)):
            if piece is None:
                continue
            pairing += n * intersection_multiplicity(piece, js, method="resultant")
            beta += n * _min_generic(piece, s.diff("u"), s.diff("v"), piece.order + 1)
    fu, fv, gu, gv = f.diff("u"), f.diff("v"), g.diff("u"), g.diff("v")
    m0 = INFINITY
    for w in itertools.islice(_w_candidates(), h.order + 1 if jd.components else 1):
        m0 = min(m0, intersection_multiplicity(fu + fv.scale(w), gu + gv.scale(w), method="resultant"))
    if m0 == INFINITY or pairing == INFINITY:
        raise ImproperCycle("improper intersection in the branch-free ledger")
    return IntersectionLedger(pairing, beta, m0, tuple(split))


def triple_product_intersections(f: BiPoly, g: BiPoly) -> int:
    return intersection_ledger(f, g).triple


# --- Claim (ii) ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClaimIIReport:
    holds: bool
    lhs: object
    rhs: object
    terms: tuple  # per component (n, I(Jac(f,A),A), sum_j I(A_j, A))
    applicable: bool = True
    reason: str = ""


def claim_ii_check(f: BiPoly, g: BiPoly, jac: JacobianData | None = None) -> ClaimIIReport:
    """Check I_0(Jac(f,h), J) = sum_i n_i (I_0(Jac(f,A_i), A_i) + sum_{j != i} I_0(A_j, A_i))."""
    jd = jac or wedge(f, g)
    f = jd.f
    comps = jd.components
    if any(jd.divides_f):
        return ClaimIIReport(False, None, None, (), False, "a component divides f (g-side lift needed)")
    if not comps:
        return ClaimIIReport(True, 0, 0, (), True, "no components")
    lhs = intersection_multiplicity(jacobian(f, jd.h), jd.J, method="resultant")
    terms = []
    rhs = 0
    for i, (A, n) in enumerate(comps):
        self_term = intersection_multiplicity(jacobian(f, A), A, method="resultant")
        cross = sum(intersection_multiplicity(Aj, A, method="resultant") for j, (Aj, _) in enumerate(comps) if j != i)
        terms.append((n, self_term, cross))
        rhs += n * (self_term + cross)
    return ClaimIIReport(lhs == rhs, lhs, rhs, tuple(terms))


# --- local contribution and equality diagnostics ---------------------------------------------------


def local_contribution(f: BiPoly, g: BiPoly, G, method: str = "branches") -> Fraction:
    """triple / |G|, after checking that f and g are G-invariant."""
    from .groups import is_invariant

    for name, p in (("f", f), ("g", g)):
        if not is_invariant(p, G):
            raise NotInvariant("%s is not invariant under %s" % (name, G.label))
    return Fraction(triple_product(f, g, method=method), G.order)


@dataclass(frozen=True)
class EqualityDiagnostics:
    n: int
    mult0: object
    mult_ok: bool
    smooth: bool
    disjoint: bool
    criteria_met: bool
    note: str = ""


def equality_case_diagnostics(f: BiPoly, g: BiPoly, n: int) -> EqualityDiagnostics:
    """The two equality criteria at an A_(n-1) point.

    mult_0(J) = n, and after one blowup the strict transforms of the reduced
    Jacobian components are smooth and pairwise disjoint along E.
    """
    jd = wedge(f, g)
    if not jd.components:
        return EqualityDiagnostics(n, 0, True, True, True, True, "no Jacobian curve through the origin")
    m = jd.J.order
    rep = blowup_strict_transforms([A for A, _ in jd.components])
    ok = m == n and rep.smooth and rep.disjoint
    return EqualityDiagnostics(n, m, m == n, rep.smooth, rep.disjoint, ok)
