import random

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import settings, strategies as st

from severi.cli.parser import parse_poly
from severi.exactalg import QQ, BiPoly

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

U, V = sympy.symbols("u v")


def P(text, field=QQ):
    return parse_poly(text, field)


def to_sympy(p: BiPoly):
    """Rational BiPoly -> sympy expression (independent oracle side)."""
    assert p.field is QQ
    return sum(
        (sympy.Rational(int(c.numerator), int(c.denominator)) * U**a * V**b for (a, b), c in p.terms.items()),
        sympy.Integer(0),
    )


def from_sympy(expr):
    poly = sympy.Poly(sympy.expand(expr), U, V)
    return BiPoly({m: mpq(int(c.p), int(c.q)) for m, c in poly.terms()}) if not poly.is_zero else BiPoly.zero()


def random_germ(rng, max_degree, terms=4, origin=True):
    """Small random polynomial; vanishes at the origin when ``origin``."""
    out = {}
    lo = 1 if origin else 0
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(lo, max_degree)
        a = rng.randint(0, d)
        out[(a, d - a)] = rng.choice((-3, -2, -1, 1, 2, 3))
    p = BiPoly(out)
    return p if not p.is_zero() else BiPoly.u()


@st.composite
def bipolys(draw, max_degree=4, max_terms=4, origin=False):
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        d = draw(st.integers(1 if origin else 0, max_degree))
        a = draw(st.integers(0, d))
        terms[(a, d - a)] = draw(st.integers(-4, 4))
    return BiPoly(terms)


@st.composite
def germs(draw, max_degree=4, max_terms=4):
    p = draw(bipolys(max_degree, max_terms, origin=True))
    if p.is_zero():
        p = BiPoly.u()
    return p


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance criteria report one line each at the end of the run
ACCEPTANCE = {}
FINDINGS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line("criterion %2d: %s" % (k, ACCEPTANCE[k]))
    for line in FINDINGS:
        terminalreporter.write_line("finding: " + line)
