from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from conftest import U, V, P, from_sympy, to_sympy
from severi.cli.sweep import draw_pair, invariant_blocks
from severi.cycles import (
    CycleError,
    DegenerateWedge,
    FormSection,
    NotInvariant,
    TypeZeroBranch,
    beta_profile,
    claim_ii_check,
    cycle_decomposition,
    equality_case_diagnostics,
    fiber_multiplicity_m0,
    intersection_ledger,
    jacobian,
    local_contribution,
    triple_product,
    wedge,
)
from severi.exactalg import BiPoly
from severi.germ import intersection_multiplicity
from severi.groups import build_group
from severi.puiseux import branches

A1_F, A1_G = P("u^2 + v^2"), P("u*v")


def family(n):
    return P("(u+v^%d)^%d" % (n - 1, n)), P("u*v")


def same_up_to_scalar(p, q):
    return p.monic() == q.monic()


# --- the Jacobian --------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_family_jacobian_matches_hand_formula(n):
    f, g = family(n)
    expr = sympy.diff(to_sympy(f), U) * sympy.diff(to_sympy(g), V) - sympy.diff(to_sympy(f), V) * sympy.diff(to_sympy(g), U)
    assert from_sympy(expr) == jacobian(f, g)
    hand = P("%d*(u+v^%d)^%d*(u-%d*v^%d)" % (n, n - 1, n - 1, n - 1, n - 1))
    J = jacobian(f, g)
    assert J == hand or J == -hand


@pytest.mark.parametrize("n, c", [(2, 1), (3, 2), (4, -1), (5, 3)])
def test_normal_form_pair_is_reduced(n, c):
    jd = wedge(P("u*v"), P("u^%d + %d*v^%d" % (n, c, n)))
    assert jd.reduced
    assert same_up_to_scalar(jd.h, P("u^%d - %d*v^%d" % (n, c, n)))


def test_transverse_pair_has_no_components():
    jd = wedge(P("u"), P("v"))
    assert jd.J == BiPoly.one() and jd.components == ()


def test_degenerate_wedge():
    with pytest.raises(DegenerateWedge):
        wedge(P("u^2"), P("u^3"))


def test_non_vanishing_input_rejected():
    with pytest.raises(ValueError):
        wedge(P("1 + u"), P("v"))


def test_family_component_flags():
    jd = wedge(*family(3))
    flags = {str(a): (n, df, dg) for (a, n), df, dg in zip(jd.components, jd.divides_f, jd.divides_g)}
    assert flags == {"v^2 + u": (2, True, False), "v^2 - 1/2*u": (1, False, False)}


# --- beta and m0 ---------------------------------------------------------------


def test_beta_on_a1_branches():
    bs = branches(P("u^2 - v^2"))
    assert len(bs) == 2
    for b in bs:
        assert beta_profile(b, FormSection.of(A1_F)) == 1
        assert beta_profile(b, FormSection(BiPoly.one(), BiPoly.zero())) == 0


def test_form_section_needs_a_coefficient():
    with pytest.raises(ValueError):
        FormSection(BiPoly.zero(), BiPoly.zero())


def test_m0_examples():
    assert fiber_multiplicity_m0(A1_F, A1_G) == 1
    assert fiber_multiplicity_m0(P("u"), P("v")) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_m0_for_coordinate_powers(n):
    # the sections are n u^(n-1) du and n v^(n-1) dv
    assert fiber_multiplicity_m0(P("u^%d" % n), P("v^%d" % n)) == (n - 1) ** 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_m0_for_normal_form(n):
    led = cycle_decomposition(P("u*v"), P("u^%d + 2*v^%d" % (n, n)))
    assert led.m0 == led.m0_other_chart == n - 1


# --- ledgers -------------------------------------------------------------------


def test_a1_ledger():
    led = cycle_decomposition(A1_F, A1_G)
    assert len(led.records) == 2
    assert all(r.n == 1 and r.beta == 1 and r.lift == "f" for r in led.records)
    assert led.m0 == 1
    assert led.pairing_term == 4 and led.beta_sum == 2
    assert led.triple == 3


def test_family_n3_ledger_lifts():
    led = cycle_decomposition(*family(3))
    lifts = {str(r.A): (r.n, r.lift) for r in led.records}
    assert lifts == {"v^2 + u": (2, "g"), "v^2 - 1/2*u": (1, "f")}
    assert led.strict_hypothesis_violated
    assert led.triple == 11


def test_type_zero_branch():
    with pytest.raises(TypeZeroBranch) as info:
        cycle_decomposition(P("u+v"), P("(u+v)*v"))
    assert same_up_to_scalar(info.value.component, P("u+v"))
    assert isinstance(info.value, CycleError) and info.value.kind == "TypeZeroBranch"


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_family_triple(n):
    f, g = family(n)
    expect = n * n - 1 + n * (n - 2)
    assert triple_product(f, g) == expect
    assert triple_product(g, f) == expect
    assert triple_product(f, g, method="intersections") == expect


@pytest.mark.parametrize(
    "f, g, expect",
    [
        ("u^2 + v^2", "u*v", 3),
        ("u*v", "u^3 + v^3", 8),
        ("u*v", "u^4 + 2*v^4", 15),
        ("u", "v", 0),
    ],
)
def test_triple_examples(f, g, expect):
    assert triple_product(P(f), P(g), method="both") == expect


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_normal_form_triple_is_n_squared_minus_one(n):
    assert triple_product(P("u*v"), P("u^%d + v^%d" % (n, n))) == n * n - 1


def test_lemma_bookkeeping_is_consistent():
    led = cycle_decomposition(*family(4))
    for comp, d in led.lemma_consistency().items():
        assert d["jac"] == d["gamma_beta"] + d["section"]
        assert d["section"] >= 0


def invariant_pairs(label, count, seed, max_degree=6):
    import random

    rng = random.Random(seed)
    blocks = invariant_blocks(label, max_degree)
    out = []
    while len(out) < count:
        f, g = draw_pair(rng, blocks)
        try:
            cycle_decomposition(f, g)
        except CycleError:
            continue
        out.append((f, g))
    return out


@pytest.mark.parametrize("label", ["A1", "A2", "A3"])
def test_branch_and_intersection_paths_agree(label):
    for f, g in invariant_pairs(label, 25, 7):
        a = triple_product(f, g)
        assert a == triple_product(f, g, method="intersections")
        assert a == triple_product(g, f)


def test_independent_pairing_term():
    # sum over components of n_k * I_0(Jac(src, h), A_k) computed without branches
    for f, g in invariant_pairs("A2", 15, 11):
        led = cycle_decomposition(f, g)
        if not led.all_f_side:
            continue
        jd = led.jac
        expect = sum(n * intersection_multiplicity(jacobian(f, jd.h), A) for A, n in jd.components)
        assert led.pairing_term == expect


# --- Claim (ii) ----------------------------------------------------------------


@pytest.mark.parametrize("f, g", [("u^2 + v^2", "u*v"), ("u^3 + v^3", "u*v"), ("u", "v")])
def test_claim_ii_examples(f, g):
    rep = claim_ii_check(P(f), P(g))
    assert rep.applicable and rep.holds


def test_claim_ii_a1_sides():
    rep = claim_ii_check(A1_F, A1_G)
    assert rep.lhs == rep.rhs == 4


def test_claim_ii_not_applicable_when_component_divides_f():
    rep = claim_ii_check(*family(3))
    assert not rep.applicable


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4"])
def test_claim_ii_on_invariant_pairs(label):
    for f, g in invariant_pairs(label, 15, 3):
        rep = claim_ii_check(f, g)
        if rep.applicable:
            assert rep.holds, (f, g, rep)


# --- local contributions and equality ----------------------------------------------


def test_local_contribution_examples():
    assert local_contribution(*family(3), build_group("A2")) == Fraction(11, 3)
    assert local_contribution(A1_F, A1_G, build_group("A1")) == Fraction(3, 2)
    assert local_contribution(P("u"), P("v"), build_group("A0")) == 0


def test_local_contribution_checks_invariance():
    with pytest.raises(NotInvariant):
        local_contribution(P("u+v"), P("u*v"), build_group("A1"))


def test_equality_diagnostics():
    d = equality_case_diagnostics(A1_F, A1_G, 2)
    assert d.mult0 == 2 and d.mult_ok and d.smooth and d.disjoint and d.criteria_met
    d = equality_case_diagnostics(*family(3), 3)
    assert not d.criteria_met
    assert equality_case_diagnostics(P("u"), P("v"), 1).criteria_met


@given(st.integers(2, 5), st.sampled_from([1, 2, 3, -1, -2]))
def test_equality_criteria_in_normal_form(n, c):
    d = equality_case_diagnostics(P("u*v"), P("u^%d + %d*v^%d" % (n, c, n)), n)
    assert d.criteria_met


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_symmetry_on_cyclic_monomial_combinations(a, b, c):
    f = P("u^%d*v^%d + %d*u^2" % (a, a, c))
    g = P("v^2 + %d*u*v" % b)
    try:
        t = triple_product(f, g)
    except CycleError:
        assume(False)
    assert t == triple_product(g, f)
    assert t == intersection_ledger(f, g).triple
