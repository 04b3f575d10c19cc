"""The equation dy/dx = M/N and its flow operator ``D = N d/dx + M d/dy``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd, lcm as ilcm

from .field import ONE, field_of
from .mpoly import MPoly, RatFunc, poly_gcd


class ZeroDenominatorError(ZeroDivisionError):
    """The right-hand side has a vanishing denominator."""


@dataclass(frozen=True, eq=True)
class FOODE:
    """``dy/dx = m/n`` with ``m``, ``n`` coprime and jointly normalized."""

    m: MPoly
    n: MPoly

    @classmethod
    def from_pair(cls, m: MPoly, n: MPoly) -> "FOODE":
        """Cancel the gcd and fix the scale so the pair is jointly canonical.

        Over Q the coefficients of ``m`` and ``n`` together are coprime
        integers and ``n`` has a positive leading coefficient; over Q(b)
        ``n`` is monic.
        """
        if not n:
            raise ZeroDenominatorError("N normalizes to 0")
        if not m:
            return cls(MPoly(), MPoly.const(1))
        g = poly_gcd(m, n)
        if not g.is_constant():
            m = m.exquo(g)
            n = n.exquo(g)
        coeffs = list(m.terms.values()) + list(n.terms.values())
        if field_of(coeffs) is None:
            den = 1
            for c in coeffs:
                den = ilcm(den, c.denominator)
            num = 0
            for c in coeffs:
                num = igcd(num, c.numerator * (den // c.denominator))
            s = Fraction(den, num)
            if n.leading()[1] < 0:
                s = -s
        else:
            s = ONE / n.leading()[1]
        if s != 1:
            m, n = m.scale(s), n.scale(s)
        return cls(m, n)

    @classmethod
    def from_rhs(cls, rhs: RatFunc) -> "FOODE":
        return cls.from_pair(rhs.num, rhs.den)

    def degree(self) -> int:
        return max(self.m.degree(), self.n.degree())

    def field(self):
        return field_of(list(self.m.terms.values()) + list(self.n.terms.values()))

    def rhs(self) -> RatFunc:
        return RatFunc(self.m, self.n)

    def __str__(self):
        from ..parser import render_foode

        return render_foode(self)


def d_operator(eq: FOODE, f):
    """``N f_x + M f_y`` for a polynomial or rational function ``f``."""
    if isinstance(f, RatFunc):
        # D[u/v] = (D[u] v - u D[v]) / v^2
        du = d_operator(eq, f.num)
        dv = d_operator(eq, f.den)
        return RatFunc(du * f.den - f.num * dv, f.den * f.den)
    return eq.n * f.diff_x() + eq.m * f.diff_y()


def divergence_source(eq: FOODE) -> MPoly:
    """``-(N_x + M_y)``, the right-hand side of ``D[R]/R``."""
    return -(eq.n.diff_x() + eq.m.diff_y())


def eval_at(f, x0, y0):
    """Exact value at a rational point; raises PoleError at a pole."""
    return f.evaluate(Fraction(x0) if isinstance(x0, int) else x0, Fraction(y0) if isinstance(y0, int) else y0)
