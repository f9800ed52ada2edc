"""The A1 pair (u^2 + v^2, uv) sits exactly on the bound.

We look at it three ways: the report, the branch ledger that produces the
number 3, and the geometric diagnostics (multiplicity of the Jacobian and
one blowup) that explain why equality is expected here.
"""

from severi.cli.parser import parse_poly
from severi.cycles import cycle_decomposition, equality_case_diagnostics
from severi.groups import build_group, conjecture_rhs

f, g = parse_poly("u^2 + v^2"), parse_poly("u*v")

led = cycle_decomposition(f, g)
print("Jacobian components:", [(str(a), n) for a, n in led.jac.components])
for r in led.records:
    print("  branch of %s: lift=%s beta=%s pairing=%s" % (r.A, r.lift, r.beta, r.pairing))
print("pairing %s - beta %s + m0 %s = %s" % (led.pairing_term, led.beta_sum, led.m0, led.triple))
print("bound for A1:", conjecture_rhs(build_group("A1")))

d = equality_case_diagnostics(f, g, 2)
print("mult0 = %d, smooth after blowup: %s, disjoint: %s" % (d.mult0, d.smooth, d.disjoint))
print("equality criteria met:", d.criteria_met)
