"""Independent reference computations built on sympy.

Nothing here calls into the package's algebra; values are converted through
plain strings (``render`` output uses a sympy-compatible syntax once ``^``
becomes ``**``).
"""

from __future__ import annotations

import sympy as sp

x, y = sp.symbols("x y")


def to_sympy(text: str, params=()):
    names = {"x": x, "y": y}
    for p in params:
        names[p] = sp.Symbol(p)
    return sp.sympify(text.replace("^", "**"), locals=names)


def trial_gcd_linear(a, b):
    """Common degree-1 factors of ``a`` and ``b`` by brute-force trial division.

    Candidates are ``u*x + v*y + w`` with small integer coefficients.
    """
    found = sp.Integer(1)
    for u in range(-3, 4):
        for v in range(-3, 4):
            for w in range(-3, 4):
                if (u, v) == (0, 0):
                    continue
                cand = u * x + v * y + w
                lead = next(c for c in (u, v) if c)
                if lead < 0:
                    continue
                while True:
                    qa, ra = sp.div(sp.expand(a), cand, x, y)
                    qb, rb = sp.div(sp.expand(b), cand, x, y)
                    if ra == 0 and rb == 0:
                        found *= cand
                        a, b = qa, qb
                    else:
                        break
    return sp.expand(found)


def d_operator(m, n, f):
    return sp.expand(n * sp.diff(f, x) + m * sp.diff(f, y))


def divergence_source(m, n):
    return sp.expand(-(sp.diff(n, x) + sp.diff(m, y)))


def factor_expr(r0: str, factors, params=()):
    """``exp(r0) * prod(p ** c)`` from text pieces."""
    expr = sp.exp(to_sympy(r0, params))
    for p, c in factors:
        expr *= to_sympy(p, params) ** sp.Rational(c)
    return expr


def exactness_residual(R, m, n):
    """``((R N)_x + (R M)_y) / R`` simplified; zero iff R is an integrating factor."""
    res = sp.diff(R * n, x) + sp.diff(R * m, y)
    return sp.simplify(sp.together(sp.expand(res / R)))


def stage1_consistent(m, n, cofactors, var):
    """Is there a constant vector c with d/d(other)((N_x + M_y + sum c g)/P) = 0?"""
    cs = sp.symbols(f"c0:{len(cofactors)}")
    s = sp.diff(n, x) + sp.diff(m, y) + sum(c * g for c, g in zip(cs, cofactors))
    P, other = (n, y) if var == "x" else (m, x)
    num = sp.numer(sp.together(sp.diff(s / P, other)))
    eqs = sp.Poly(sp.expand(num), x, y).coeffs()
    return bool(sp.solve(eqs, cs, dict=True)) or all(e == 0 for e in eqs)


def is_irreducible(p) -> bool:
    """Irreducibility over Q of an MPoly (through its rendered text) or a text."""
    if not isinstance(p, str):
        from lfoode.parser import render

        p = render(p)
    _, factors = sp.factor_list(to_sympy(p), x, y)
    return len(factors) == 1 and factors[0][1] == 1
