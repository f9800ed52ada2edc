"""Exact dense linear algebra over a field (lists of lists)."""

from __future__ import annotations


def det(rows):
    """Determinant by fraction-based Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    result = None
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return a[0][0] * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        result = p if result is None else result * p
        inv = 1 / p
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f = f * inv
                row, prow = a[r], a[col]
                for c in range(col + 1, n):
                    if prow[c]:
                        row[c] = row[c] - f * prow[c]
    return result if sign > 0 else -result


def sparse_rank(rows):
    """Rank of a list of sparse rows ``{column: value}`` (values in a field).

    Rows are reduced against pivots keyed by their smallest column index.
    """
    pivots: dict = {}
    rank = 0
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        while r:
            lead = min(r)
            prow = pivots.get(lead)
            if prow is None:
                inv = 1 / r[lead]
                pivots[lead] = {k: v * inv for k, v in r.items()}
                rank += 1
                break
            f = r[lead]
            for k, v in prow.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank
