"""Dense univariate polynomials over an exact field.

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  Coefficients may be any
exact field element supporting ``+ - * /`` and truth testing
(``Fraction`` or :class:`~lfoode.core.field.ParamRational`).
"""

from __future__ import annotations

from fractions import Fraction

ONE = Fraction(1)


def trim(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    if n != len(a):
        del a[n:]
    return a


def deg(a):
    return len(a) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    if not c:
        return []
    return trim([c * t for t in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, s in enumerate(a):
        if not s:
            continue
        for j, t in enumerate(b):
            if t:
                out[i + j] = out[i + j] + s * t
    return trim(out)


def divmod_(a, b):
    """Quotient and remainder of ``a`` by nonzero ``b``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    if len(r) - 1 < db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c / lc
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = r[k - db + j] - c * b[j]
    del r[db:]
    return trim(q), trim(r)


def quo_exact(a, b):
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def monic(a):
    if not a:
        return []
    lc = a[-1]
    if lc == 1:
        return list(a)
    return [c / lc for c in a]


def gcd(a, b):
    """Monic gcd; ``gcd([], [])`` is ``[]``."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def ext_gcd(a, b):
    """Return ``(s, t, g)`` with ``s*a + t*b = g``, ``g`` monic."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    lc = r0[-1]
    return scale(s0, ONE / lc), scale(t0, ONE / lc), monic(r0)


def derivative(a):
    return trim([a[i] * i for i in range(1, len(a))])


def antiderivative(a):
    """Polynomial antiderivative with zero constant term."""
    if not a:
        return []
    return [0] + [a[i] / (i + 1) for i in range(len(a))]


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def squarefree(a):
    """Yun's algorithm: monic ``[a1, a2, ...]`` with ``a ~ a1 * a2**2 * ...``."""
    a = monic(a)
    if len(a) <= 1:
        return []
    da = derivative(a)
    g = gcd(a, da)
    b = quo_exact(a, g)
    c = quo_exact(da, g)
    d = sub(c, derivative(b))
    out = []
    while len(b) > 1:
        h = gcd(b, d)
        out.append(h)
        b = quo_exact(b, h)
        c = quo_exact(d, h)
        d = sub(c, derivative(b))
    while out and len(out[-1]) == 1:
        out.pop()
    return out


def power(a, n):
    out = [ONE]
    for _ in range(n):
        out = mul(out, a)
    return out
