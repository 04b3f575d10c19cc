"""Hermite reduction of univariate rational functions with affine numerators.

A numerator may depend affinely on parameter labels, ``A = A_0 + sum t_k A_k``,
while the denominator is parameter-free.  With the denominator fixed, every
step of Hermite reduction is linear in the numerator, so each component is
reduced on its own against shared denominators and the results are
recombined.  This is what lets "no logarithmic terms" become a set of linear
equations in the labels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import upoly
from .core.field import ONE, ZERO, ParamRational, is_rational
from .core.mpoly import MPoly, RatFunc


class NotRational(ArithmeticError):
    """The integral has a nonzero logarithmic part."""


@dataclass(frozen=True)
class AffineRational:
    """``(num[None] + sum(t * num[t] for t in labels)) / den`` in ``var``.

    ``num`` maps ``None`` (the constant component) or a label to a dense
    coefficient list; ``den`` is a nonzero parameter-free dense list.
    """

    var: str
    num: dict
    den: list

    @classmethod
    def from_ratfunc(cls, f: RatFunc, var=None, param=None):
        """Wrap a one-variable :class:`RatFunc`.

        With ``param`` set, coefficients in ``Q(param)`` that are affine in it
        become a labelled component named after the parameter.
        """
        if var is None:
            x_free = f.num.free_of_x() and f.den.free_of_x()
            y_free = f.num.free_of_y() and f.den.free_of_y()
            var = "y" if x_free and not y_free else "x"
        num = f.num.to_upoly(var)
        den = f.den.to_upoly(var)
        if any(not is_rational(c) for c in den):
            raise ValueError("denominator must be free of parameters")
        if param is None:
            return cls(var, {None: num}, den)
        const, lin = [], []
        for c in num:
            a, b = _split_affine(c, param)
            const.append(a)
            lin.append(b)
        return cls(var, {None: upoly.trim(const), param: upoly.trim(lin)}, den)

    @property
    def labels(self):
        return sorted((k for k in self.num if k is not None), key=str)

    def specialize(self, values=None) -> RatFunc:
        values = values or {}
        acc = []
        for label, comp in self.num.items():
            c = ONE if label is None else values.get(label, ZERO)
            if c:
                acc = upoly.add(acc, upoly.scale(comp, c))
        return RatFunc(MPoly.from_upoly(acc, self.var), MPoly.from_upoly(self.den, self.var))

    def is_zero(self) -> bool:
        return not any(self.num.values())


def _split_affine(c, param):
    """``c = a + b * param`` for ``c`` in ``Q(param)``; raises if not affine."""
    if not isinstance(c, ParamRational):
        return c, ZERO
    if c.field.name != param or len(c.den) != 1 or len(c.num) > 2:
        raise ValueError(f"coefficient {c!r} is not affine in {param}")
    num = list(c.num) + [ZERO] * 2
    return num[0] / c.den[0], num[1] / c.den[0]


@dataclass(frozen=True)
class HermiteResult:
    """``f = d(rational_part)/dt + log_remainder`` with affine numerators.

    ``log_remainder`` is proper with squarefree denominator.
    """

    rational_part: AffineRational
    log_remainder: AffineRational

    @property
    def var(self):
        return self.rational_part.var


def _solve_bezout(a, b, c):
    """``(s, t)`` with ``s*a + t*b = c`` and ``deg s < deg b`` (``a``, ``b`` coprime)."""
    s0, _, g = upoly.ext_gcd(a, b)
    if len(g) != 1:
        raise ArithmeticError("Bezout operands are not coprime")
    s = upoly.divmod_(upoly.mul(s0, c), b)[1]
    t = upoly.quo_exact(upoly.sub(c, upoly.mul(s, a)), b)
    return s, t


def _reduce_component(a, plan, gden, hden):
    """Reduce one numerator over the fixed plan; returns numerators over ``gden``/``hden``."""
    den = plan["den"]
    poly, a = upoly.divmod_(a, den)
    gnum = upoly.mul(upoly.antiderivative(poly), gden)
    for step in plan["steps"]:
        u, v, dv, j = step["u"], step["v"], step["dv"], step["j"]
        b, c = _solve_bezout(upoly.mul(u, dv), v, upoly.scale(a, -ONE / j))
        gnum = upoly.add(gnum, upoly.mul(b, upoly.quo_exact(gden, upoly.power(v, j))))
        a = upoly.sub(upoly.scale(c, -j), upoly.mul(u, upoly.derivative(b)))
    q, a = upoly.divmod_(a, hden)
    if q:
        gnum = upoly.add(gnum, upoly.mul(upoly.antiderivative(q), gden))
    return gnum, a


def _plan(den):
    """Squarefree layout of a monic denominator and the reduction steps."""
    parts = upoly.squarefree(den)
    steps = []
    d = list(den)
    gden = [ONE]
    for i, v in enumerate(parts, start=1):
        if i >= 2 and len(v) > 1:
            u = upoly.quo_exact(d, upoly.power(v, i))
            dv = upoly.derivative(v)
            gden = upoly.mul(gden, upoly.power(v, i - 1))
            for j in range(i - 1, 0, -1):
                steps.append({"u": u, "v": v, "dv": dv, "j": j})
            d = upoly.mul(u, v)
    hden = [ONE]
    for v in parts:
        hden = upoly.mul(hden, v)
    return {"den": den, "steps": steps}, gden, hden


def hermite_reduce(f, params=()) -> HermiteResult:
    """Split ``f`` into a rational antiderivative part and a log-producing remainder.

    ``f`` is an :class:`AffineRational` or a one-variable :class:`RatFunc`;
    for the latter ``params`` may name the single coefficient parameter in
    which the numerator is affine.
    """
    if isinstance(f, RatFunc):
        param = params[0] if params else None
        if len(params) > 1:
            raise ValueError("a RatFunc carries at most one parameter")
        f = AffineRational.from_ratfunc(f, param=param)
    den = upoly.trim(list(f.den))
    if not den:
        raise ZeroDivisionError("zero denominator")
    lc = den[-1]
    den = upoly.monic(den)
    plan, gden, hden = _plan(den)
    gnum, hnum = {}, {}
    for label, comp in f.num.items():
        comp = upoly.scale(comp, ONE / lc)
        if len(den) == 1:
            gnum[label] = upoly.antiderivative(comp)
            hnum[label] = []
            continue
        gnum[label], hnum[label] = _reduce_component(comp, plan, gden, hden)
    if len(den) == 1:
        gden, hden = [ONE], [ONE]
    return HermiteResult(AffineRational(f.var, gnum, gden), AffineRational(f.var, hnum, hden))


def rationality_constraints(res: HermiteResult, labels=None):
    """Linear rows ``(A, b)`` over ``labels`` equivalent to ``log_remainder == 0``.

    Row ``k`` states that the coefficient of ``t**k`` in the remainder's
    numerator vanishes.
    """
    h = res.log_remainder
    if labels is None:
        labels = h.labels
    width = max((len(c) for c in h.num.values()), default=0)
    A, b = [], []
    for k in range(width):
        const = h.num.get(None, [])
        rhs = -(const[k] if k < len(const) else ZERO)
        row = []
        for label in labels:
            comp = h.num.get(label, [])
            row.append(comp[k] if k < len(comp) else ZERO)
        if any(row) or rhs:
            A.append(row)
            b.append(rhs)
    return A, b


def integrate_rational_part(res: HermiteResult, values=None) -> RatFunc:
    """The rational antiderivative (constant 0) once the labels take ``values``.

    Raises :class:`NotRational` when the remainder does not vanish there.
    """
    if res.log_remainder.specialize(values):
        raise NotRational("integral has a logarithmic part")
    return res.rational_part.specialize(values)
