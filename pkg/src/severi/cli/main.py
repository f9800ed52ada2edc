"""Command-line entry point: ``severi {check,sweep,ledger,groups,oracle}``.

Exit statuses: 0 when the conjecture holds (or holds with equality), 3 on a
VIOLATION, 4 on a mathematical error (non-invariant input, degenerate
wedge, ...), 2 on unparsable input or bad usage; ``oracle`` exits 1 when two
independent computations disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from ..groups import CATALOG, NonIntegralChi, build_group, severi_ledger
from .oracle import run_oracle
from .report import EXIT_MATH, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, Job, render_report, report_exit_code, run_check
from .sweep import run_sweep

__all__ = ["main", "build_parser"]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="severi", description="Local triple products at ADE quotient singularities.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="print the JSON document instead of text")
        sp.add_argument("--timing", action="store_true", help="add wall-clock timing to the output")

    c = sub.add_parser("check", help="evaluate one (f, g) pair")
    c.add_argument("--group", required=True)
    c.add_argument("-f", required=True)
    c.add_argument("-g", required=True)
    c.add_argument("--field", default=None, help="QQ, cyclo:n, or a monic polynomial in theta")
    c.add_argument("--puiseux-order", type=int, default=8)
    c.add_argument("--method", choices=("branches", "intersections"), default="branches")
    c.add_argument("--oracle", action="store_true", help="recompute the triple product by the other method")
    common(c)

    s = sub.add_parser("sweep", help="seeded random sweep over invariant pairs")
    s.add_argument("--group", required=True)
    s.add_argument("--max-degree", type=int, default=6)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--puiseux-order", type=int, default=8)
    s.add_argument("--method", choices=("branches", "intersections"), default="branches")
    s.add_argument("--jobs", type=int, default=1, help="worker processes (output does not depend on this)")
    s.add_argument("--reports", action="store_true", help="with --json, also emit every per-instance report")
    common(s)

    l = sub.add_parser("ledger", help="global Severi bookkeeping for a surface with du Val points")
    l.add_argument("--k2", type=int, required=True)
    l.add_argument("--euler", type=int, required=True)
    l.add_argument("--sing", action="append", default=[], help="ADE label; repeat for several points")
    l.add_argument("--euler-kind", choices=("resolution", "singular"), default="resolution")
    common(l)

    g = sub.add_parser("groups", help="group catalog")
    g.add_argument("--list", action="store_true")
    g.add_argument("--group", default=None)
    common(g)

    o = sub.add_parser("oracle", help="cross-validation of independent algorithms")
    o.add_argument("--count", type=int, default=50)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--max-degree", type=int, default=5)
    o.add_argument("--group", default="A2")
    common(o)
    return p


def _cmd_check(a, out):
    job = Job(a.group, a.f, a.g, a.field, a.puiseux_order, a.oracle, None)
    rep = run_check(job, timing=a.timing, method=a.method)
    out.write((_dump(rep) if a.json else render_report(rep)) + "\n")
    code = report_exit_code(rep)
    if code == EXIT_OK and a.oracle and not rep["oracle"]["agree"]:
        return 1
    return code


def _cmd_sweep(a, out):
    if a.count < 1:
        raise _Usage("--count must be at least 1")
    t0 = time.perf_counter()
    try:
        reports, summary = run_sweep(a.group, a.max_degree, a.count, a.seed, a.puiseux_order, a.jobs, a.method)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    if a.timing:
        summary["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    if a.json:
        doc = {"summary": summary, "reports": reports} if a.reports else summary
        out.write(_dump(doc) + "\n")
    else:
        out.write(_render_summary(summary) + "\n")
    bad = summary["reduced"]["violations"] or summary["nonreduced"]["violations"]
    return EXIT_VIOLATION if bad else EXIT_OK


def _render_summary(s) -> str:
    lines = [
        "group %s  max_degree %d  seed %d  rhs %d" % (s["group"], s["max_degree"], s["seed"], s["rhs"]),
        "instances %d  degenerate draws %d  total draws %d" % (s["instances"], s["degenerate"], s["draws"]),
    ]
    for name in ("reduced", "nonreduced"):
        st = s[name]
        lines.append(
            "%-10s  instances %4d  min margin %s  equalities %d  violations %d"
            % (name, st["instances"], st["min_margin"], st["equalities"], len(st["violations"]))
        )
        for v in st["violations"]:
            lines.append("  VIOLATION margin %s: %s" % (v["margin"], v["reproducer"]))
    if s["errors"]:
        lines.append("errors: " + ", ".join("%s x%d" % kv for kv in s["errors"].items()))
    if "timing" in s:
        lines.append("time %.2fs" % s["timing"]["seconds"])
    return "\n".join(lines)


def _cmd_ledger(a, out):
    try:
        led = severi_ledger(a.k2, a.euler, tuple(a.sing), a.euler_kind)
    except NonIntegralChi as exc:
        doc = {"schema": "severi.ledger", "version": 1, "error": {"kind": "NonIntegralChi", "message": str(exc)}}
        out.write((_dump(doc) if a.json else "error: NonIntegralChi: %s" % exc) + "\n")
        return EXIT_MATH
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    doc = {"schema": "severi.ledger", "version": 1, **led.as_dict()}
    if a.json:
        out.write(_dump(doc) + "\n")
    else:
        for k, v in doc.items():
            if k not in ("schema", "version"):
                out.write("%-17s %s\n" % (k, v))
    return EXIT_OK


def _cmd_groups(a, out):
    labels = [a.group] if a.group else list(CATALOG)
    rows = []
    for lab in labels:
        try:
            G = build_group(lab)
        except ValueError as exc:
            raise _Usage(str(exc)) from None
        rows.append(
            {
                "label": G.label,
                "order": G.order,
                "class_count": G.class_count,
                "class_sizes": list(G.classes),
                "rhs": G.class_count * G.order - 1,
                "field": str(G.field),
                "invariants": [str(p) for p in G.invariants],
            }
        )
    if a.json:
        out.write(_dump({"schema": "severi.groups", "version": 1, "groups": rows}) + "\n")
    else:
        out.write("%-5s %6s %8s %8s\n" % ("label", "order", "classes", "rhs"))
        for r in rows:
            out.write("%-5s %6d %8d %8d\n" % (r["label"], r["order"], r["class_count"], r["rhs"]))
    return EXIT_OK


def _cmd_oracle(a, out):
    t0 = time.perf_counter()
    try:
        doc = run_oracle(a.count, a.seed, a.max_degree, a.group)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    if a.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    if a.json:
        out.write(_dump(doc) + "\n")
    else:
        for k in ("intersections", "branches", "triples"):
            out.write("%-13s pairs %4d  disagreements %d\n" % (k, doc[k]["pairs"], len(doc[k]["disagreements"])))
        out.write("agree: %s\n" % doc["agree"])
    return EXIT_OK if doc["agree"] else 1


class _Usage(Exception):
    pass


_COMMANDS = {
    "check": _cmd_check,
    "sweep": _cmd_sweep,
    "ledger": _cmd_ledger,
    "groups": _cmd_groups,
    "oracle": _cmd_oracle,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        return _COMMANDS[a.command](a, out)
    except _Usage as exc:
        sys.stderr.write("severi: error: %s\n" % exc)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
