"""Dense univariate polynomials over a field, as plain coefficient lists.

Lists are ordered from the constant term upwards and are kept trimmed (no
trailing zeros); the zero polynomial is ``[]``.  Coefficients are any exact
field elements (``mpq`` or :class:`~severi.exactalg.fields.NFElement`).
"""

from __future__ import annotations


def trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return trim(out)


def sub(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else None
        b = q[i] if i < len(q) else None
        if b is None:
            out.append(a)
        elif a is None:
            out.append(-b)
        else:
            out.append(a - b)
    return trim(out)


def scale(p, c):
    if not c:
        return []
    return trim([a * c for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                t = a * b
                k = i + j
                out[k] = t if out[k] is None else out[k] + t
    zero = p[0] * 0
    return trim([zero if c is None else c for c in out])


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    if len(r) <= dq:
        return [], trim(r)
    inv = 1 / q[-1]
    quo = [q[-1] * 0] * (len(r) - dq)
    while len(r) > dq and r:
        k = len(r) - 1 - dq
        c = r[-1] * inv
        quo[k] = c
        for i in range(dq):
            if q[i]:
                r[k + i] = r[k + i] - c * q[i]
        r.pop()
        trim(r)
    return trim(quo), r


def rem(p, q):
    return divmod_(p, q)[1]


def exquo(p, q):
    quo, r = divmod_(p, q)
    if r:
        raise ArithmeticError("inexact univariate division")
    return quo


def monic(p):
    if not p:
        return []
    inv = 1 / p[-1]
    return [c * inv for c in p]


def gcd(p, q):
    """Monic gcd (``[]`` only when both inputs are zero)."""
    a, b = trim(list(p)), trim(list(q))
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def derivative(p):
    return trim([p[i] * i for i in range(1, len(p))])


def evaluate(p, x):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    return acc if acc is not None else x * 0


def compose(p, q):
    """p(q(x))."""
    acc: list = []
    for c in reversed(p):
        acc = add(mul(acc, q), [c]) if acc else trim([c])
    return acc


def shift(p, a):
    """p(x + a)."""
    if not p:
        return []
    one = p[-1] ** 0 if hasattr(p[-1], "__pow__") else 1
    return compose(p, trim([a, one * 1]))


def squarefree_parts(p):
    """Yun's algorithm: list of (monic squarefree factor, multiplicity)."""
    out = []
    if len(p) <= 1:
        return out
    dp = derivative(p)
    a = gcd(p, dp)
    b = exquo(p, a)
    c = exquo(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = exquo(b, a)
        c = exquo(d, a)
        d = sub(c, derivative(b))
        i += 1
    return out


def is_squarefree(p) -> bool:
    return len(gcd(p, derivative(p))) <= 1
