import pytest
from hypothesis import assume, given, strategies as st

from conftest import P, germs, random_germ
from severi.exactalg import BiPoly, ExtensionRequired, NumberField, squarefree_decomposition
from severi.germ import INFINITY, intersection_multiplicity
from severi.puiseux import branch_order, branches, newton_polygon


def test_newton_polygon_cusp():
    poly = newton_polygon(P("v^2 - u^3"))
    assert [(s.start, s.end) for s in poly.segments] == [((0, 2), (3, 0))]


def test_newton_polygon_node():
    poly = newton_polygon(P("u^2 - v^2"))
    assert [(s.start, s.end) for s in poly.segments] == [((0, 2), (2, 0))]


def test_newton_polygon_degenerate_hull():
    # uv touches neither axis: a single vertex and no edges
    poly = newton_polygon(P("u*v"))
    assert poly.vertices == ((1, 1),)
    assert poly.segments == ()


def test_cusp_branch():
    (b,) = branches(P("v^2 - u^3"))
    assert b.e == 2 and b.conj_degree == 1
    us, vs = b.series(8)
    assert us == [0, 0, 1, 0, 0, 0, 0, 0]
    assert vs == [0, 0, 0, 1, 0, 0, 0, 0]


def test_node_branches():
    bs = branches(P("u^2 - v^2"))
    assert len(bs) == 2
    pairs = {(tuple(b.series(3)[0]), tuple(b.series(3)[1])) for b in bs}
    assert pairs == {((0, 1, 0), (0, 1, 0)), ((0, 1, 0), (0, -1, 0))}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_family_component_branch(n):
    (b,) = branches(P("u + v^%d" % (n - 1)))
    assert b.e == 1
    us, vs = b.series(n + 1)
    # v = t, u = -t^(n-1) up to the choice of parameter
    assert vs[1] != 0 and all(c == 0 for k, c in enumerate(vs) if k != 1)
    assert us[n - 1] == -(vs[1] ** (n - 1))


def test_branch_orders_examples():
    (b,) = branches(P("v^2 - u^3"))
    assert branch_order(b, P("v")) == 3
    assert branch_order(b, BiPoly.one()) == 0
    for b in branches(P("u^2 - v^2")):
        assert branch_order(b, P("2*u")) == 1


def test_branch_on_curve_has_infinite_order():
    (b,) = branches(P("v^2 - u^3"))
    assert branch_order(b, P("(v^2 - u^3)*(1+u)")) == INFINITY


def test_gaussian_branches_need_extension():
    F = P("u^2 + v^2")
    bs = branches(F)
    assert sum(b.conj_degree for b in bs) == 2
    (b,) = bs
    assert b.conj_degree == 2 and b.field is not F.field
    with pytest.raises(ExtensionRequired):
        branches(F, allow_extensions=False)


def test_gaussian_branches_split_over_qi():
    K = NumberField([1, 0, 1])
    bs = branches(P("u^2 + v^2", K))
    assert len(bs) == 2 and all(b.conj_degree == 1 for b in bs)


@pytest.mark.parametrize("F", ["v^2 - u^3", "v^4 - u^5 + u^3*v", "(v^2 - u^3)*(u - v^2) + u^6", "v^3 - u^7 - u^4*v"])
def test_substitution_vanishes(F):
    F = P(F)
    for b in branches(F, order=12):
        assert all(c == 0 for c in b.substitute(F, 12))


def test_refinement_is_monotone():
    F = P("v^2 - u^2 - u^3")
    (b1, b2) = branches(F, order=4)
    before = b1.series(4)
    b1.refine(12)
    after = b1.series(12)
    assert after[0][:4] == before[0] and after[1][:4] == before[1]


def test_multiplicity_from_branches():
    # sum over branches of e (times conjugates) is the multiplicity
    for F in ["v^2 - u^3", "u^2 - v^2", "u*v*(u - v)", "v^5 - u^2", "u^3 + v^3 + u^4"]:
        F = P(F)
        assert sum(b.e * b.conj_degree for b in branches(F)) == F.order


def squarefree(F):
    return all(k == 1 for _, k in squarefree_decomposition(F).factors)


@given(germs(5, 4), germs(4, 4))
def test_branch_sum_law(F, H):
    assume(squarefree(F))
    total = intersection_multiplicity(F, H, method="resultant")
    assume(total != INFINITY)
    assert sum(b.conj_degree * branch_order(b, H) for b in branches(F)) == total


def test_branch_sum_law_seeded(rng):
    done = 0
    while done < 40:
        F, H = random_germ(rng, 5), random_germ(rng, 5)
        if not squarefree(F):
            continue
        total = intersection_multiplicity(F, H, method="resultant")
        if total == INFINITY:
            continue
        assert sum(b.conj_degree * branch_order(b, H) for b in branches(F)) == total
        done += 1


@given(st.integers(2, 6), st.integers(2, 7))
def test_quasi_homogeneous_branches(p, q):
    # v^p - u^q has gcd(p, q) branches of ramification p / gcd(p, q)
    from math import gcd

    F = P("v^%d - u^%d" % (p, q))
    bs = branches(F)
    d = gcd(p, q)
    assert sum(b.conj_degree for b in bs) == d
    assert {b.e for b in bs} == {min(p, q) // d}
