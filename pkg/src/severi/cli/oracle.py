"""Cross-validation suite behind ``severi oracle``.

Three independent comparisons on seeded random input:

``intersections``  Fulton's algorithm, the resultant path and the quotient
                   dimension oracle on random germ pairs.
``branches``       sum of branch orders against the intersection number for
                   squarefree F.
``triples``        branch ledger against the branch-free ledger on random
                   invariant pairs of a cyclic group.
"""

from __future__ import annotations

import random

from ..cycles import CycleError, triple_product
from ..exactalg.bipoly import BiPoly
from ..exactalg.polyalg import squarefree_decomposition
from ..germ import INFINITY, OVERFLOW, intersection_multiplicity, quotient_dimension_oracle
from ..germ import _intersection_fulton, _intersection_resultant
from ..puiseux import branch_order, branches
from .sweep import draw_pair, invariant_blocks

__all__ = ["random_germ", "run_oracle"]


def random_germ(rng: random.Random, max_degree: int, terms: int = 4) -> BiPoly:
    """A nonzero polynomial vanishing at the origin with small integer coefficients.

    Up to ``terms`` monomials u^a v^b with ``1 <= a + b <= max_degree`` are
    drawn, each with a coefficient from -3..3 minus zero.
    """
    while True:
        out = {}
        for _ in range(rng.randint(1, terms)):
            d = rng.randint(1, max_degree)
            a = rng.randint(0, d)
            out[(a, d - a)] = rng.choice((-3, -2, -1, 1, 2, 3))
        p = BiPoly(out)
        if not p.is_zero():
            return p


def _intersections(rng, n, max_degree):
    rows, bad, infinite = 0, [], 0
    while rows < n:
        F, G = random_germ(rng, max_degree), random_germ(rng, max_degree)
        a = _intersection_fulton(F, G)
        if a == INFINITY:
            infinite += 1
            continue
        b = _intersection_resultant(F, G)
        c = quotient_dimension_oracle(F, G)
        rows += 1
        if not (a == b == c) or c is OVERFLOW:
            bad.append({"F": str(F), "G": str(G), "fulton": a, "resultant": b, "quotient": str(c)})
    return {"pairs": rows, "skipped_infinite": infinite, "disagreements": bad}


def _branch_law(rng, n, max_degree):
    rows, bad = 0, []
    while rows < n:
        F, H = random_germ(rng, max_degree), random_germ(rng, max_degree)
        if any(k > 1 for _, k in squarefree_decomposition(F).factors):
            continue
        total = intersection_multiplicity(F, H, method="resultant")
        if total == INFINITY:
            continue
        s = sum(b.conj_degree * branch_order(b, H) for b in branches(F))
        rows += 1
        if s != total:
            bad.append({"F": str(F), "H": str(H), "branch_sum": s, "intersection": total})
    return {"pairs": rows, "disagreements": bad}


def _triples(rng, n, group, max_degree):
    blocks = invariant_blocks(group, max_degree)
    rows, bad, draws = 0, [], 0
    while rows < n and draws < 20 * n:
        draws += 1
        f, g = draw_pair(rng, blocks)
        try:
            a = triple_product(f, g, method="branches")
        except CycleError:
            continue
        b = triple_product(f, g, method="intersections")
        rows += 1
        if a != b:
            bad.append({"f": str(f), "g": str(g), "branches": a, "intersections": b})
    return {"group": group, "pairs": rows, "disagreements": bad}


def run_oracle(count: int = 50, seed: int = 0, max_degree: int = 5, group: str = "A2") -> dict:
    rng = random.Random(seed)
    out = {
        "schema": "severi.oracle",
        "version": 1,
        "seed": seed,
        "intersections": _intersections(rng, count, max_degree),
        "branches": _branch_law(rng, count, max_degree),
        "triples": _triples(rng, count, group, max_degree + 2),
    }
    out["agree"] = not any(out[k]["disagreements"] for k in ("intersections", "branches", "triples"))
    return out
