"""Acceptance criteria 1-10, one test each.

Every test records PASS or FAIL in ``conftest.ACCEPTANCE``; the terminal
summary prints one line per criterion. Instances are seeded so a failure
reproduces exactly.
"""

import contextlib
import functools
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE, FINDINGS, P, random_germ
from severi.cli.report import Job, run_check
from severi.cli.sweep import draw_pair, invariant_blocks, run_sweep
from severi.cycles import (
    CycleError,
    claim_ii_check,
    cycle_decomposition,
    equality_case_diagnostics,
    triple_product,
)
from severi.exactalg import squarefree_decomposition
from severi.germ import INFINITY, intersection_multiplicity, quotient_dimension_oracle
from severi.groups import CATALOG, NonIntegralChi, build_group, severi_ledger
from severi.puiseux import branch_order, branches


@contextlib.contextmanager
def criterion(k):
    # parametrized criteria share one line; any failing case marks it FAIL
    try:
        yield
    except BaseException as exc:
        ACCEPTANCE[k] = "FAIL (%s: %s)" % (type(exc).__name__, str(exc)[:200])
        raise
    ACCEPTANCE.setdefault(k, "PASS")


def family(n):
    return "(u+v^%d)^%d" % (n - 1, n), "u*v"


# --- seeded instance sets, shared with the symmetry criterion --------------------


@functools.lru_cache(maxsize=None)
def finite_pairs(count=200, seed=3, max_degree=6):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        F, G = random_germ(rng, max_degree), random_germ(rng, max_degree)
        if intersection_multiplicity(F, G, method="resultant") != INFINITY:
            out.append((F, G))
    return tuple(out)


def squarefree(F):
    return all(k == 1 for _, k in squarefree_decomposition(F).factors)


@functools.lru_cache(maxsize=None)
def branch_law_pairs(count=100, seed=4, max_degree=5):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        F, H = random_germ(rng, max_degree), random_germ(rng, max_degree)
        if squarefree(F) and intersection_multiplicity(F, H) != INFINITY:
            out.append((F, H))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def f_side_pairs(label, count=100, seed=5, max_degree=6):
    rng = random.Random(seed)
    blocks = invariant_blocks(label, max_degree)
    out = []
    for _ in range(50 * count):
        if len(out) == count:
            break
        f, g = draw_pair(rng, blocks)
        try:
            if cycle_decomposition(f, g).all_f_side:
                out.append((f, g))
        except CycleError:
            continue
    return tuple(out)


# --- criteria --------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_criterion_01_family_regression(n):
    with criterion(1):
        f, g = family(n)
        t = time.perf_counter()
        rep = run_check(Job("A%d" % (n - 1), f, g))
        elapsed = time.perf_counter() - t
        assert rep["error"] is None
        assert rep["triple"] == n * n - 1 + n * (n - 2)
        assert rep["rhs"] == n * n - 1
        assert elapsed < 10, elapsed


def test_criterion_02_a1_equality():
    with criterion(2):
        rep = run_check(Job("A1", "u^2+v^2", "u*v"))
        assert rep["margin"] == 0 and rep["verdict"] == "equality"
        d = equality_case_diagnostics(P("u^2+v^2"), P("u*v"), 2)
        assert d.mult0 == 2
        assert d.smooth and d.disjoint and d.criteria_met


def test_criterion_03_oracle_equivalence():
    with criterion(3):
        t = time.perf_counter()
        pairs = finite_pairs()
        for F, G in pairs:
            a = intersection_multiplicity(F, G, method="fulton")
            assert a == intersection_multiplicity(F, G, method="resultant"), (F, G)
            assert a == quotient_dimension_oracle(F, G), (F, G)
        assert len(pairs) >= 200
        assert time.perf_counter() - t < 60


def test_criterion_04_branch_law():
    with criterion(4):
        pairs = branch_law_pairs()
        assert len(pairs) >= 100
        for F, H in pairs:
            total = sum(b.conj_degree * branch_order(b, H) for b in branches(F))
            assert total == intersection_multiplicity(F, H), (F, H)


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4"])
def test_criterion_05_claim_ii(label):
    with criterion(5):
        pairs = f_side_pairs(label)
        assert len(pairs) >= 100
        for f, g in pairs:
            rep = claim_ii_check(f, g)
            assert rep.applicable and rep.holds, (f, g, rep.lhs, rep.rhs)


def test_criterion_06_symmetry():
    with criterion(6):
        checked = 0
        invariant = [tuple(map(P, family(n))) for n in range(2, 7)]
        invariant.append((P("u^2+v^2"), P("u*v")))
        for label in ("A1", "A2", "A3", "A4"):
            invariant.extend(f_side_pairs(label))
        generic = list(finite_pairs()) + list(branch_law_pairs())
        for f, g in invariant + generic:
            try:
                t = triple_product(f, g)
            except CycleError:
                # only the successful instances are in scope
                assert (f, g) not in invariant
                continue
            assert t == triple_product(g, f), (f, g)
            checked += 1
        assert checked >= len(invariant)


@pytest.mark.parametrize("label", ["A1", "A2", "A3"])
def test_criterion_07_reduced_stratum(label):
    with criterion(7):
        reports, summary = run_sweep(label, 8, 500, seed=2024)
        assert summary["instances"] >= 500
        assert not summary["errors"], summary["errors"]
        assert summary["asymmetric"] == 0
        red = summary["reduced"]
        assert red["violations"] == [], red["violations"][:3]
        for v in summary["nonreduced"]["violations"]:
            FINDINGS.append("%s non-reduced margin %s: %s" % (label, v["margin"], v["reproducer"]))
        FINDINGS.append(
            "%s sweep: %d reduced (min margin %s), %d non-reduced (min margin %s, %d violations)"
            % (
                label,
                red["instances"],
                red["min_margin"],
                summary["nonreduced"]["instances"],
                summary["nonreduced"]["min_margin"],
                len(summary["nonreduced"]["violations"]),
            )
        )


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_criterion_08_m0(n):
    with criterion(8):
        led = cycle_decomposition(P("u^%d" % n), P("v^%d" % n))
        assert led.m0 == led.m0_other_chart == (n - 1) ** 2
        led = cycle_decomposition(P("u*v"), P("u^%d + v^%d" % (n, n)))
        assert led.m0 == led.m0_other_chart == n - 1


def test_criterion_09_ledger():
    with criterion(9):
        led = severi_ledger(8, 16)
        assert (led.chi, led.deficit, led.kll) == (2, 0, 0)
        led = severi_ledger(9, 15)
        assert (led.chi, led.deficit, led.kll) == (2, 1, 3)
        led = severi_ledger(7, 16, ["A1"], euler_kind="singular")
        assert led.e_orb == Fraction(31, 2) and led.euler_resolution == 17
        rng = random.Random(9)
        done = 0
        while done < 50:
            k2, e = rng.randint(1, 60), rng.randint(-30, 120)
            try:
                led = severi_ledger(k2, e)
            except NonIntegralChi:
                continue
            assert led.deficit == Fraction(2 * k2 - e, 3)
            done += 1


TABLE = {"A0": (1, 1), "D4": (8, 5), "D5": (12, 6), "D6": (16, 7), "E6": (24, 7), "E7": (48, 8), "E8": (120, 9)}
TABLE.update({"A%d" % k: (k + 1, k + 1) for k in range(1, 6)})


def _mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _enumerate(G):
    """Breadth-first closure of the generators."""
    one = G.field.one
    zero = one - one
    seen = {(one, zero, zero, one)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for s in G.generators:
                y = _mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@pytest.mark.parametrize("label", CATALOG)
def test_criterion_10_group_tables(label):
    with criterion(10):
        G = build_group(label)
        els = _enumerate(G)
        assert set(G.elements) == els
        assert (len(els), G.class_count) == TABLE[label]
        classes = []
        left = set(els)
        while left:
            x = next(iter(left))
            inv = (x[3], -x[1], -x[2], x[0])
            cls = {_mul(_mul(g, x), (g[3], -g[1], -g[2], g[0])) for g in els}
            assert x in cls and _mul(x, inv) in els
            left -= cls
            classes.append(len(cls))
        assert len(classes) == G.class_count
        assert sum(classes) == G.order
