"""Finite subgroups of SL(2, C) of ADE type and the global Severi bookkeeping.

Labels: ``A0`` (trivial), ``A1``, ``A2``, ... (cyclic of order k + 1), ``Dk``
for k >= 4 (binary dihedral of order 4(k - 2)), ``E6``, ``E7``, ``E8``
(binary tetrahedral, octahedral, icosahedral).  Matrices act on polynomials
by ``(p . M)(u, v) = p(a u + b v, c u + d v)`` for ``M = [[a, b], [c, d]]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactalg.bipoly import BiPoly
from .exactalg.fields import QQ, FieldMismatch, cyclotomic_field

__all__ = [
    "GroupData",
    "UnsupportedField",
    "NonIntegralChi",
    "build_group",
    "parse_label",
    "is_invariant",
    "conjecture_rhs",
    "orbifold_correction",
    "severi_ledger",
    "SeveriLedger",
    "CATALOG",
]


class UnsupportedField(ValueError):
    """The cyclotomic field needed for a group could not be built."""


class NonIntegralChi(ValueError):
    """(K^2 + e) is not divisible by 12."""


CATALOG = ("A0", "A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7", "E8")


def parse_label(label: str) -> tuple:
    """Normalize a label to (family, k); accepts 'A_2', 'a2', 'trivial', 'E8'."""
    s = label.strip().replace("_", "").replace(" ", "").upper()
    if s in ("TRIVIAL", "1", "I"):
        return ("A", 0)
    m = re.fullmatch(r"([ADE])(\d+)", s)
    if not m:
        raise ValueError("unknown group label %r" % label)
    fam, k = m.group(1), int(m.group(2))
    if fam == "D" and k < 4:
        raise ValueError("D_k needs k >= 4")
    if fam == "E" and k not in (6, 7, 8):
        raise ValueError("E_k exists only for k = 6, 7, 8")
    return fam, k


# --- 2x2 matrices as 4-tuples ---------------------------------------------------------------


def _mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _inv(x):
    a, b, c, d = x
    return (d, -b, -c, a)  # determinant one


def _det(x):
    a, b, c, d = x
    return a * d - b * c


def _closure(gens, one):
    ident = (one, one * 0, one * 0, one)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _classes(elements, gens):
    """Conjugacy classes as orbits under conjugation by the generators."""
    remaining = set(elements)
    out = []
    ginv = [(g, _inv(g)) for g in gens]
    while remaining:
        x = next(iter(remaining))
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g, gi in ginv:
                z = _mul(_mul(g, y), gi)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        remaining -= orbit
        out.append(frozenset(orbit))
    return out


def act(p: BiPoly, M) -> BiPoly:
    """p(a u + b v, c u + d v)."""
    a, b, c, d = M
    return p.subs_linear(a, b, c, d)


@dataclass(frozen=True)
class GroupData:
    label: str
    family: str
    rank: int  # number of exceptional curves of the resolution
    field: object
    generators: tuple
    elements: frozenset
    classes: tuple  # sizes
    invariants: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def __repr__(self):
        return "GroupData(%s, order=%d, classes=%d)" % (self.label, self.order, self.class_count)


def _poly(terms, field=QQ):
    return BiPoly(terms, field)


def _tetra_forms():
    T = _poly({(5, 1): 1, (1, 5): -1})
    W = _poly({(8, 0): 1, (4, 4): 14, (0, 8): 1})
    chi = _poly({(12, 0): 1, (8, 4): -33, (4, 8): -33, (0, 12): 1})
    return T, W, chi


def _icosa_forms():
    f = _poly({(11, 1): 1, (6, 6): 11, (1, 11): -1})
    H = _poly({(20, 0): -1, (0, 20): -1, (15, 5): 228, (5, 15): -228, (10, 10): -494})
    T = _poly({(30, 0): 1, (0, 30): 1, (25, 5): 522, (5, 25): -522, (20, 10): -10005, (10, 20): -10005})
    return f, H, T


@lru_cache(maxsize=None)
def build_group(label: str) -> GroupData:
    """Enumerate an ADE subgroup of SL(2) from standard generators."""
    fam, k = parse_label(label)
    name = "%s%d" % (fam, k)
    u, v = BiPoly.u(), BiPoly.v()
    try:
        if fam == "A":
            n = k + 1
            K, z = cyclotomic_field(n)
            gens = [(z, K.zero, K.zero, K.one / z if K is not QQ else 1 / z)]
            invs = (u, v) if n == 1 else (u * v, u ** n, v ** n)
        elif fam == "D":
            m = k - 2
            K, z = cyclotomic_field(2 * m)
            gens = [(z, K.zero, K.zero, 1 / z), (K.zero, K.one, -K.one, K.zero)]
            invs = ((u * v) ** 2, u ** (2 * m) + v ** (2 * m), u * v * (u ** (2 * m) - v ** (2 * m)))
        elif k in (6, 7):
            K, z = cyclotomic_field(4 if k == 6 else 8)
            i = z if k == 6 else z ** 2
            half = K.one / 2
            I = (i, K.zero, K.zero, -i)
            J = (K.zero, K.one, -K.one, K.zero)
            S = ((1 + i) * half, (1 + i) * half, (-1 + i) * half, (1 - i) * half)
            gens = [I, J, S]
            T, W, chi = _tetra_forms()
            invs = (T, W, chi)
            if k == 7:
                gens.append((z, K.zero, K.zero, 1 / z))
                invs = (W, T * T, T * chi)
        else:
            K, z = cyclotomic_field(5)
            s5 = 1 + 2 * (z + z ** 4)
            inv5 = 1 / s5
            a = -(z - z ** 4) * inv5
            b = (z ** 2 - z ** 3) * inv5
            gens = [(a, b, b, -a), (z ** 3, K.zero, K.zero, z ** 2)]
            invs = _icosa_forms()
    except (ValueError, ArithmeticError) as exc:  # pragma: no cover - defensive
        raise UnsupportedField(str(exc)) from exc
    gens = [tuple(K(x) if K is not QQ else x for x in g) for g in gens]
    one = K.one
    elements = _closure(gens, one)
    for x in elements:
        if _det(x) != 1:
            raise AssertionError("%s has an element of determinant %s" % (name, _det(x)))
    classes = _classes(elements, gens)
    G = GroupData(
        name,
        fam,
        k,
        K,
        tuple(gens),
        frozenset(elements),
        tuple(sorted(len(c) for c in classes)),
        tuple(invs),
    )
    for p in invs:
        if not is_invariant(p, G):
            raise AssertionError("stored invariant %s of %s is not invariant" % (p, name))
    return G


def _as_group(G) -> GroupData:
    return build_group(G) if isinstance(G, str) else G


def is_invariant(p: BiPoly, G) -> bool:
    """True iff p . M = p for every generator M of G.

    Cyclic and binary dihedral groups act monomially, so their test is a
    congruence on exponents (plus the swap u -> v, v -> -u for D_k) and
    works over any coefficient field.  The E types substitute the generator
    matrices and need p's field to be QQ or the group's own field.
    """
    G = _as_group(G)
    if G.family == "A":
        n = G.rank + 1
        return all((a - b) % n == 0 for a, b in p.terms)
    if G.family == "D":
        m2 = 2 * (G.rank - 2)
        if any((a - b) % m2 for a, b in p.terms):
            return False
        return p.subs_linear(0, 1, -1, 0) == p
    if p.field is not QQ and p.field is not G.field:
        raise FieldMismatch("polynomial over %s, group %s over %s" % (p.field, G.label, G.field))
    P = p.to_field(G.field)
    return all(act(P, M) == P for M in G.generators)


def conjecture_rhs(G) -> int:
    """#classes * |G| - 1."""
    G = _as_group(G)
    return G.class_count * G.order - 1


def orbifold_correction(sings) -> Fraction:
    """Sum over singular points of (#classes - 1/|G|)."""
    total = Fraction(0)
    for s in sings:
        G = _as_group(s)
        total += G.class_count - Fraction(1, G.order)
    return total


@dataclass(frozen=True)
class SeveriLedger:
    k2: int
    euler_resolution: int  # e of the minimal resolution
    euler_singular: int  # e of the singular surface
    sings: tuple
    chi: int
    e_orb: Fraction
    correction: Fraction
    kll: Fraction  # (K + L) L^2
    deficit: Fraction  # K^2 - 4 chi

    @property
    def target_holds(self) -> bool:
        return self.kll >= self.correction

    def as_dict(self) -> dict:
        def q(x):
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)

        return {
            "k2": self.k2,
            "euler_resolution": self.euler_resolution,
            "euler_singular": self.euler_singular,
            "singularities": list(self.sings),
            "chi": self.chi,
            "e_orb": q(self.e_orb),
            "correction": q(self.correction),
            "kll": q(self.kll),
            "deficit": q(self.deficit),
            "target_holds": self.target_holds,
        }


def severi_ledger(k2: int, euler: int, sings=(), euler_kind: str = "resolution") -> SeveriLedger:
    """Global bookkeeping for a canonical surface with du Val points.

    ``euler`` is e of the minimal resolution (``euler_kind="resolution"``,
    the default) or of the singular surface (``"singular"``); the two differ
    by the number of exceptional curves.  Noether's formula uses the
    resolution.
    """
    groups = [_as_group(s) for s in sings]
    mu = sum(G.rank for G in groups)
    if euler_kind == "resolution":
        e_res, e_sing = euler, euler - mu
    elif euler_kind == "singular":
        e_res, e_sing = euler + mu, euler
    else:
        raise ValueError("euler_kind must be 'resolution' or 'singular'")
    if (k2 + e_res) % 12:
        raise NonIntegralChi("K^2 + e = %d is not divisible by 12" % (k2 + e_res))
    chi = (k2 + e_res) // 12
    e_orb = e_sing - sum((1 - Fraction(1, G.order) for G in groups), Fraction(0))
    corr = orbifold_correction(groups)
    kll = 2 * k2 - e_res + corr
    if kll != 2 * k2 - e_orb:
        raise AssertionError("orbifold Euler number and class counts disagree")
    deficit = Fraction(k2 - 4 * chi)
    if 3 * deficit != 2 * k2 - e_res:
        raise AssertionError("Noether consistency failed")
    return SeveriLedger(k2, e_res, e_sing, tuple(G.label for G in groups), chi, e_orb, corr, kll, deficit)
