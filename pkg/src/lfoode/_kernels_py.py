"""Pure-Python hot kernels.  ``_kernels.pyx`` mirrors these signatures exactly."""

from math import gcd


def mul2(a, b):
    """Product of two bivariate term dicts keyed by ``(i, j)``."""
    out = {}
    get = out.get
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            v = get(k)
            out[k] = c1 * c2 if v is None else v + c1 * c2
    return {k: v for k, v in out.items() if v}


def muln(a, b):
    """Product of two term dicts keyed by exponent tuples of equal length."""
    out = {}
    get = out.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = tuple([s + t for s, t in zip(e1, e2)])
            v = get(k)
            out[k] = c1 * c2 if v is None else v + c1 * c2
    return {k: v for k, v in out.items() if v}


def axpy(a, c, b, shift=None):
    """Return ``a + c * (m * b)`` for term dicts; ``shift`` is the exponent of ``m``."""
    out = dict(a)
    if shift is None:
        for e, v in b.items():
            w = out.get(e)
            s = c * v if w is None else w + c * v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    else:
        for e, v in b.items():
            k = tuple([s + t for s, t in zip(e, shift)])
            w = out.get(k)
            s = c * v if w is None else w + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def bareiss(rows, ncols):
    """Fraction-free row echelon form of an integer matrix, in place.

    Returns the list of pivot columns.  Rows are lists of Python ints; the
    pivot row for each column is the one with the fewest nonzeros among the
    candidates (ties to the lowest index).  Each finished row is divided by
    the gcd of its entries to keep the integers short.
    """
    m = len(rows)
    pivots = []
    r = 0
    prev = 1
    for col in range(ncols):
        if r >= m:
            break
        best = -1
        best_nz = 0
        for i in range(r, m):
            if rows[i][col]:
                nz = 0
                for v in rows[i]:
                    if v:
                        nz += 1
                if best < 0 or nz < best_nz:
                    best = i
                    best_nz = nz
        if best < 0:
            continue
        if best != r:
            rows[r], rows[best] = rows[best], rows[r]
        pr = rows[r]
        p = pr[col]
        for i in range(r + 1, m):
            ri = rows[i]
            f = ri[col]
            if f:
                for k in range(col, ncols):
                    ri[k] = (p * ri[k] - f * pr[k]) // prev
            else:
                for k in range(col, ncols):
                    ri[k] = (p * ri[k]) // prev
        prev = p
        pivots.append(col)
        r += 1
    for i in range(m):
        row = rows[i]
        g = 0
        for v in row:
            if v:
                g = gcd(g, v)
        if g > 1:
            rows[i] = [v // g for v in row]
    return pivots
