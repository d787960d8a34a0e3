"""Dense univariate polynomials over an exact field.

A polynomial is a list of coefficients, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).  Coefficients may be ``Fraction`` or
:class:`~adedefect.fields.FieldElem`; only ring operations, division by a
nonzero scalar and truthiness are used, so the helpers work at every level of a
field tower.
"""

from fractions import Fraction


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        out.append(a + b)
    return trim(out)


def sub(p, q):
    return add(p, [-c for c in q])


def scale(p, c):
    if not c:
        return []
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_(p, q):
    """Quotient and remainder of ``p`` by a nonzero ``q``."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(p)
    lead = q[-1]
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [], trim(r)
    quo = [0] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq]
        if not c:
            continue
        c = c / lead
        quo[k] = c
        for j, b in enumerate(q):
            r[k + j] = r[k + j] - c * b
    return trim(quo), trim(r[:dq])


def monic(p):
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def gcd(p, q):
    """Monic gcd; ``gcd(0, 0) == []``."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def xgcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quo, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return monic(r0), [c / lead for c in s0], [c / lead for c in t0]


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def shift(p, c):
    """Return ``p(t + c)``."""
    out = []
    for a in reversed(p):
        # out = out * (t + c) + a
        nxt = [0] * (len(out) + 1)
        for i, b in enumerate(out):
            nxt[i + 1] = nxt[i + 1] + b
            nxt[i] = nxt[i] + c * b
        nxt[0] = nxt[0] + a
        out = nxt
    return trim(out)


def squarefree_decomposition(p):
    """Yun's algorithm (characteristic zero).

    Returns ``[(factor, multiplicity), ...]`` with monic, pairwise coprime,
    squarefree factors whose product (with multiplicities) is ``monic(p)``.
    """
    f = monic(trim(p))
    if len(f) <= 1:
        return []
    out = []
    df = derivative(f)
    a = gcd(f, df)
    b = divmod_(f, a)[0]
    c = divmod_(df, a)[0]
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        b = divmod_(b, a)[0]
        c = divmod_(d, a)[0]
        if len(a) > 1:
            out.append((a, i))
        d = sub(c, derivative(b))
        i += 1
    return out


def is_squarefree(p):
    return len(gcd(p, derivative(p))) <= 1


def interpolate(xs, ys):
    """Newton interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [coef[-1]] if n else []
    for i in range(n - 2, -1, -1):
        # out = out * (t - xs[i]) + coef[i]
        nxt = [0] * (len(out) + 1)
        for k, b in enumerate(out):
            nxt[k + 1] = nxt[k + 1] + b
            nxt[k] = nxt[k] - xs[i] * b
        nxt[0] = nxt[0] + coef[i]
        out = nxt
    return trim(out)
