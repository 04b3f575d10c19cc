"""Structured integrating factors ``R = exp(r0) * prod(p_i ** c_i)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..core.foode import FOODE, d_operator
from ..core.mpoly import MPoly, RatFunc, poly_gcd, poly_sort_key


@dataclass(frozen=True)
class IntegratingFactor:
    """``exp(r0) * prod(p ** c for p, c in factors)``; never expanded.

    ``factors`` holds distinct, non-constant, primitive-positive polynomials
    with nonzero exponents, in (degree, graded-lex) order.  Constant scale
    is dropped since integrating factors are only defined up to it.
    """

    r0: RatFunc = field(default_factory=lambda: RatFunc(0))
    factors: tuple = ()

    @classmethod
    def build(cls, r0=None, factors=()):
        if r0 is None:
            r0 = RatFunc(0)
        elif not isinstance(r0, RatFunc):
            r0 = RatFunc(r0)
        merged = {}
        order = []
        for p, c in factors:
            if not c or p.is_constant():
                continue
            p = p.normalize()
            if p not in merged:
                merged[p] = 0
                order.append(p)
            merged[p] = merged[p] + c
        items = [(p, merged[p]) for p in order if merged[p]]
        items.sort(key=lambda t: poly_sort_key(t[0]))
        return cls(r0, tuple(items))

    @property
    def exponents(self):
        return {p: c for p, c in self.factors}

    def is_rational(self) -> bool:
        """True when R is a rational function (r0 = 0, integer exponents)."""
        return not self.r0 and all(
            isinstance(c, (int, Fraction)) and Fraction(c).denominator == 1 for _, c in self.factors
        )

    def log_derivative(self, eq: FOODE) -> RatFunc:
        """``D[R]/R = D[r0] + sum c_i D[p_i]/p_i`` as a rational function."""
        acc = d_operator(eq, self.r0)
        for p, c in self.factors:
            acc = acc + RatFunc(d_operator(eq, p).scale(c), p)
        return acc

    def evaluate(self, x0, y0):
        """Numeric value as a float (exponential and fractional powers)."""
        import math

        v = math.exp(float(self.r0.evaluate(x0, y0)))
        for p, c in self.factors:
            v *= float(p.evaluate(x0, y0)) ** float(c)
        return v

    def __str__(self):
        from ..parser import render

        return render(self)


def coprime_basis(polys):
    """A gcd-free basis: pairwise coprime non-constant polynomials whose
    products generate every input up to constants."""
    basis = []
    for p in polys:
        if p.is_constant():
            continue
        pending = [p.normalize()]
        while pending:
            q = pending.pop()
            if q.is_constant():
                continue
            for i, b in enumerate(basis):
                g = poly_gcd(q, b)
                if not g.is_constant():
                    del basis[i]
                    pending.extend([g, b.exquo(g).normalize(), q.exquo(g).normalize()])
                    break
            else:
                basis.append(q)
    return basis


def exponent_map(factors, basis):
    """Rewrite ``prod p**c`` as ``{b: e}`` over a coprime basis."""
    out = {}
    for p, c in factors:
        rest = p
        for b in basis:
            while True:
                q, r = rest.divmod_glex(b)
                if r:
                    break
                rest = q
                out[b] = out.get(b, 0) + c
        if not rest.is_constant():
            raise ValueError("polynomial not covered by basis")
    return {b: e for b, e in out.items() if e}


def equivalent(a: IntegratingFactor, b: IntegratingFactor) -> bool:
    """Equality up to a nonzero constant factor.

    ``r0`` must agree up to an additive constant, and the power products
    must agree after rewriting both over a common coprime basis, so that
    ``(x^3+1)^(-3/2)`` matches ``(x+1)^(-3/2) * (x^2-x+1)^(-3/2)``.
    """
    dr = a.r0 - b.r0
    if dr.diff_x() or dr.diff_y():
        return False
    basis = coprime_basis([p for p, _ in a.factors] + [p for p, _ in b.factors])
    return exponent_map(a.factors, basis) == exponent_map(b.factors, basis)
