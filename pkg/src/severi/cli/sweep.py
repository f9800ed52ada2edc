"""Seeded random sweeps over group-invariant pairs.

Generation procedure (stable; sweep output is citable by seed):

* PRNG: :class:`random.Random` seeded with the integer ``seed`` (Mersenne
  Twister, as shipped with CPython).
* Building blocks: every product of the group's invariant generators
  (with repetition) whose total degree in u, v lies in ``1..max_degree``,
  listed in canonical text order.
* Each of f and g is ``sum c_i m_i`` over ``rng.randint(1, 3)`` distinct
  blocks picked with ``rng.sample``, each coefficient drawn with
  ``rng.choice(COEFFICIENTS)``.  f is drawn before g.
* Draws whose wedge vanishes or which have a type-0 component are degenerate:
  they are counted in the summary and do not count towards ``count``.  At
  most ``20 * count`` draws are made.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from ..exactalg.bipoly import BiPoly
from ..groups import build_group, conjecture_rhs
from .report import Job, run_check

__all__ = ["COEFFICIENTS", "invariant_blocks", "draw_pair", "run_sweep", "SUMMARY_VERSION", "DEGENERATE_KINDS"]

COEFFICIENTS = (-3, -2, -1, 1, 2, 3)
SUMMARY_VERSION = 1
DEGENERATE_KINDS = ("DegenerateWedge", "TypeZeroBranch")
DRAW_FACTOR = 20


def invariant_blocks(group, max_degree: int) -> list:
    """All products of invariant generators of total degree 1..max_degree."""
    G = build_group(group)
    gens = sorted(G.invariants, key=lambda p: (p.degree, str(p)))
    seen = {}

    def grow(start, current):
        for i in range(start, len(gens)):
            nxt = gens[i] if current is None else current * gens[i]
            if nxt.degree > max_degree:
                continue
            seen.setdefault(str(nxt), nxt)
            grow(i, nxt)

    grow(0, None)
    return [seen[k] for k in sorted(seen, key=lambda s: (seen[s].degree, s))]


def _combo(rng: random.Random, blocks: list) -> BiPoly:
    k = rng.randint(1, min(3, len(blocks)))
    picked = rng.sample(range(len(blocks)), k)
    out = BiPoly.zero(blocks[0].field)
    for i in picked:
        out = out + blocks[i].scale(rng.choice(COEFFICIENTS))
    return out


def draw_pair(rng: random.Random, blocks: list):
    f = _combo(rng, blocks)
    g = _combo(rng, blocks)
    return f, g


def _run(args):
    job, method = args
    return run_check(job, method=method)


def run_sweep(group, max_degree: int, count: int, seed: int, puiseux_order: int = 8, jobs: int = 1, method: str = "branches"):
    """Return ``(reports, summary)``; reports hold the non-degenerate instances in draw order.

    Job generation is serial so the job list depends on the seed alone;
    ``jobs > 1`` only parallelizes evaluation, and results are kept in job
    order, so the output is independent of ``jobs``.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    G = build_group(group)
    blocks = invariant_blocks(G.label, max_degree)
    if not blocks:
        raise ValueError("no invariant of degree <= %d for %s" % (max_degree, G.label))
    rng = random.Random(seed)
    reports = []
    degenerate = 0
    draws = 0
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while len(reports) < count and draws < DRAW_FACTOR * count:
            batch = []
            need = count - len(reports)
            while len(batch) < need and draws < DRAW_FACTOR * count:
                f, g = draw_pair(rng, blocks)
                batch.append(Job(G.label, str(f), str(g), None, puiseux_order, False, seed))
                draws += 1
            args = [(j, method) for j in batch]
            results = list(pool.map(_run, args)) if pool else [_run(a) for a in args]
            for rep in results:
                kind = (rep.get("error") or {}).get("kind")
                if kind in DEGENERATE_KINDS:
                    degenerate += 1
                elif len(reports) < count:
                    rep["index"] = len(reports)
                    reports.append(rep)
    finally:
        if pool:
            pool.shutdown()
    return reports, summarize(G.label, max_degree, count, seed, reports, degenerate, draws)


def _stratum(reports):
    done = [r for r in reports if r["verdict"] != "error"]
    margins = [Fraction(r["margin"]) for r in done]
    return {
        "instances": len(done),
        "min_margin": (None if not margins else _q(min(margins))),
        "equalities": sum(1 for r in done if r["verdict"] == "equality"),
        "violations": [
            {"index": r["index"], "f": r["job"]["f"], "g": r["job"]["g"], "margin": r["margin"], "reproducer": r["reproducer"]}
            for r in done
            if r["verdict"] == "VIOLATION"
        ],
    }


def _q(x: Fraction):
    return x.numerator if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def summarize(label, max_degree, count, seed, reports, degenerate, draws) -> dict:
    reduced = [r for r in reports if r.get("jacobian", {}).get("reduced")]
    nonreduced = [r for r in reports if "jacobian" in r and not r["jacobian"]["reduced"]]
    errors = {}
    for r in reports:
        if r["verdict"] == "error":
            k = r["error"]["kind"]
            errors[k] = errors.get(k, 0) + 1
    return {
        "schema": "severi.sweep_summary",
        "version": SUMMARY_VERSION,
        "group": label,
        "max_degree": max_degree,
        "count": count,
        "seed": seed,
        "rhs": conjecture_rhs(label),
        "draws": draws,
        "instances": len(reports),
        "degenerate": degenerate,
        "errors": dict(sorted(errors.items())),
        "asymmetric": sum(1 for r in reports if r.get("symmetric") is False),
        "reduced": _stratum(reduced),
        "nonreduced": _stratum(nonreduced),
    }
