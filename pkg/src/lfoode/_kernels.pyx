# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same contract as ``_kernels_py``."""

from math import gcd


def mul2(dict a, dict b):
    cdef dict out = {}
    cdef long i1, j1, i2, j2
    cdef object c1, c2, v, k
    cdef tuple e1, e2
    for e1, c1 in a.items():
        i1 = e1[0]
        j1 = e1[1]
        for e2, c2 in b.items():
            i2 = e2[0]
            j2 = e2[1]
            k = (i1 + i2, j1 + j2)
            v = out.get(k)
            if v is None:
                out[k] = c1 * c2
            else:
                out[k] = v + c1 * c2
    return {k: v for k, v in out.items() if v}


cdef inline tuple _addexp(tuple e1, tuple e2):
    cdef Py_ssize_t n = len(e1)
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>e1[i] + <long>e2[i]
    return tuple(out)


def muln(dict a, dict b):
    cdef dict out = {}
    cdef tuple e1, e2, k
    cdef object c1, c2, v
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = _addexp(e1, e2)
            v = out.get(k)
            if v is None:
                out[k] = c1 * c2
            else:
                out[k] = v + c1 * c2
    return {k: v for k, v in out.items() if v}


def axpy(dict a, object c, dict b, shift=None):
    cdef dict out = dict(a)
    cdef tuple e, k, sh
    cdef object v, w, s
    if shift is None:
        for e, v in b.items():
            w = out.get(e)
            s = c * v if w is None else w + c * v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    else:
        sh = shift
        for e, v in b.items():
            k = _addexp(e, sh)
            w = out.get(k)
            s = c * v if w is None else w + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def bareiss(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t m = len(rows)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, col, i, k, best, nz, best_nz
    cdef object prev = 1, p, f, g, v
    cdef list pr, ri, row
    for col in range(ncols):
        if r >= m:
            break
        best = -1
        best_nz = 0
        for i in range(r, m):
            ri = rows[i]
            if ri[col]:
                nz = 0
                for v in ri:
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
