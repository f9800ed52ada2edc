"""A small seeded sweep followed by the cross-validation oracle.

The sweep draws random invariant pairs for a cyclic group and splits the
results by whether the Jacobian is reduced. The oracle then re-derives
intersection numbers three independent ways on random germs. Both runs are
deterministic in the seed, so the numbers printed here never change.
"""

import json

from severi.cli.oracle import run_oracle
from severi.cli.sweep import run_sweep

reports, summary = run_sweep("A2", 6, 40, seed=11)
for stratum in ("reduced", "nonreduced"):
    s = summary[stratum]
    print("%-10s instances=%3d min margin=%s equalities=%d" % (stratum, s["instances"], s["min_margin"], s["equalities"]))

tight = [r for r in reports if r.get("margin") == 0]
if tight:
    print("one pair on the bound:", tight[0]["job"]["f"], "|", tight[0]["job"]["g"])

result = run_oracle(count=20, seed=1)
print(json.dumps({k: result[k] for k in ("schema", "agree")}))
