"""Walk through the cyclic family f = (u + v^(n-1))^n, g = uv.

For each n the script prints the Jacobian factorization, the per-branch
ledger and the final comparison with the group-theoretic bound n^2 - 1.
Run with ``python3 demos/family_inequality.py``.
"""

from severi.cli.report import Job, render_report, run_check


def main():
    for n in range(2, 7):
        job = Job("A%d" % (n - 1), "(u+v^%d)^%d" % (n - 1, n), "u*v")
        rep = run_check(job)
        print(render_report(rep))
        # the surplus over the bound grows like n(n - 2)
        print("surplus n(n-2) = %d, margin = %d" % (n * (n - 2), rep["margin"]))
        print()


if __name__ == "__main__":
    main()
