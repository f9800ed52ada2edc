"""Jobs and JSON reports for single conjecture checks."""

from __future__ import annotations

import shlex
import time
from dataclasses import dataclass
from fractions import Fraction

from ..cycles import CycleError, NotInvariant, cycle_decomposition, intersection_ledger, triple_product, wedge
from ..exactalg.factor import ExtensionRequired
from ..exactalg.serialize import field_descriptor
from ..germ import INFINITY
from ..groups import build_group, conjecture_rhs, is_invariant
from .parser import ParseError, parse_field, parse_poly

__all__ = ["Job", "run_check", "report_exit_code", "render_report", "REPORT_VERSION", "jsonable"]

REPORT_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATION = 3
EXIT_MATH = 4


@dataclass(frozen=True)
class Job:
    group: str
    f: str
    g: str
    field: str | None = None
    puiseux_order: int = 8
    oracle: bool = False
    seed: int | None = None

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "f": self.f,
            "g": self.g,
            "field": self.field or "QQ",
            "puiseux_order": self.puiseux_order,
            "oracle": self.oracle,
            "seed": self.seed,
        }

    def command(self) -> str:
        parts = ["severi", "check", "--group", self.group, "-f", self.f, "-g", self.g]
        if self.field:
            parts += ["--field", self.field]
        if self.puiseux_order != 8:
            parts += ["--puiseux-order", str(self.puiseux_order)]
        return " ".join(shlex.quote(p) for p in parts)


def jsonable(x):
    """Exact numbers for JSON: ints stay ints, other rationals become 'a/b', infinity 'inf'."""
    if x == INFINITY:
        return "inf"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
    return int(x)


def _verdict(margin: int) -> str:
    if margin > 0:
        return "holds"
    if margin == 0:
        return "equality"
    return "VIOLATION"


def run_check(job: Job, timing: bool = False, method: str = "branches") -> dict:
    """Run one job and return its report dictionary (never raises on math errors).

    ``method="intersections"`` evaluates the triple product from
    intersection multiplicities alone; the report then has an empty branch
    table.
    """
    t0 = time.perf_counter()
    rep: dict = {"schema": "severi.report", "version": REPORT_VERSION, "job": job.as_dict()}
    try:
        K = parse_field(job.field)
        f = parse_poly(job.f, K)
        g = parse_poly(job.g, K)
        G = build_group(job.group)
        rep["job"]["group"] = G.label
    except ParseError as exc:
        return _error(rep, exc.kind, str(exc), t0, timing)
    except ValueError as exc:
        return _error(rep, "UsageError", str(exc), t0, timing)
    try:
        for name, p in (("f", f), ("g", g)):
            if not is_invariant(p, G):
                raise NotInvariant("%s is not invariant under %s" % (name, G.label))
        jd = wedge(f, g)
        if method == "branches":
            led = cycle_decomposition(f, g, job.puiseux_order, jac=jd)
            triple, swapped = led.triple, led.triple_swapped
        else:
            led = intersection_ledger(f, g, jac=jd)
            triple, swapped = led.triple, intersection_ledger(g, f).triple
    except CycleError as exc:
        return _error(rep, exc.kind, str(exc), t0, timing)
    except ExtensionRequired as exc:
        return _error(rep, "ExtensionRequired", str(exc), t0, timing)
    except ValueError as exc:
        return _error(rep, "InvalidInput", str(exc), t0, timing)
    rhs = conjecture_rhs(G)
    margin = triple - rhs
    rep["jacobian"] = {
        "J": str(jd.J),
        "unit": str(jd.unit),
        "reduced": jd.reduced,
        "components": [
            {"poly": str(a), "multiplicity": n, "divides_f": df, "divides_g": dg}
            for (a, n), df, dg in zip(jd.components, jd.divides_f, jd.divides_g)
        ],
    }
    rep["branches"] = [
        {
            "component": r.component,
            "e": r.e,
            "conj_degree": r.conj,
            "lift": r.lift,
            "beta": jsonable(r.beta),
            "gamma": jsonable(r.gamma),
            "pairing": jsonable(r.pairing),
            "section_term": jsonable(r.section_term),
            "field": field_descriptor(r.branch.field),
        }
        for r in getattr(led, "records", ())
    ]
    rep["method"] = method
    rep["m0"] = led.m0
    rep["pairing_term"] = jsonable(led.pairing_term)
    rep["beta_sum"] = jsonable(led.beta_sum)
    rep["triple"] = jsonable(triple)
    rep["triple_swapped"] = jsonable(swapped)
    rep["symmetric"] = triple == swapped
    rep["order"] = G.order
    rep["class_count"] = G.class_count
    rep["rhs"] = rhs
    rep["margin"] = jsonable(margin)
    rep["local_contribution"] = jsonable(Fraction(triple, G.order))
    rep["verdict"] = _verdict(margin)
    rep["strict_hypothesis_violated"] = any(jd.divides_f)
    rep["error"] = None
    if job.oracle:
        other = "intersections" if method == "branches" else "branches"
        alt = triple_product(f, g, job.puiseux_order, method=other)
        rep["oracle"] = {"method": other, "triple": jsonable(alt), "agree": alt == triple}
    if margin < 0:
        rep["reproducer"] = job.command()
    if timing:
        rep["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    return rep


def _error(rep, kind, message, t0, timing):
    rep["verdict"] = "error"
    rep["error"] = {"kind": kind, "message": message}
    if timing:
        rep["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    return rep


def report_exit_code(rep: dict) -> int:
    v = rep.get("verdict")
    if v in ("holds", "equality"):
        return EXIT_OK
    if v == "VIOLATION":
        return EXIT_VIOLATION
    kind = (rep.get("error") or {}).get("kind")
    if kind in ("ParseError", "UnknownSymbol", "UsageError"):
        return EXIT_USAGE
    return EXIT_MATH


def render_report(rep: dict) -> str:
    """Plain-text view of a report dictionary."""
    job = rep["job"]
    lines = ["group %s   f = %s   g = %s" % (job["group"], job["f"], job["g"])]
    if rep.get("error"):
        lines.append("error: %s: %s" % (rep["error"]["kind"], rep["error"]["message"]))
        return "\n".join(lines)
    jac = rep["jacobian"]
    lines.append("J = %s" % jac["J"])
    for k, c in enumerate(jac["components"]):
        flags = []
        if c["divides_f"]:
            flags.append("divides f")
        if c["divides_g"]:
            flags.append("divides g")
        lines.append("  h%d = %s  (n = %d%s)" % (k + 1, c["poly"], c["multiplicity"], ", " + ", ".join(flags) if flags else ""))
    if rep["branches"]:
        lines.append("  branch  comp  e  conj  lift  beta  gamma  pairing")
        for i, b in enumerate(rep["branches"]):
            lines.append(
                "  %6d  %4d  %d  %4d  %4s  %4s  %5s  %7s"
                % (i, b["component"] + 1, b["e"], b["conj_degree"], b["lift"], b["beta"], b["gamma"], b["pairing"])
            )
    lines.append("m0 = %s" % rep["m0"])
    lines.append(
        "triple = %s   rhs = %s   margin = %s   verdict: %s" % (rep["triple"], rep["rhs"], rep["margin"], rep["verdict"])
    )
    if rep["strict_hypothesis_violated"]:
        lines.append("note: some h_i divides f; components were lifted from g where needed")
    if "reproducer" in rep:
        lines.append("reproduce with: %s" % rep["reproducer"])
    return "\n".join(lines)
