"""First integrals ``F`` with ``F_x = R M`` and ``F_y = -R N`` from a small table.

Two closed shapes are tried, each by an exact linear ansatz:

* ``F = R * A / (P * E)`` with ``P`` the product of the factors of ``R``,
  ``E`` the denominator of ``r0`` and ``A`` an unknown polynomial;
* for rational ``R``, ``F = A / B + sum(l_k * log(p_k))`` with ``B`` the
  denominator of ``R``.

Anything else is reported as :class:`Unevaluated` carrying the exact closed
one-form ``R M dx - R N dy``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core.field import ONE, ZERO
from ..core.foode import FOODE
from ..core.mpoly import MPoly, RatFunc
from ..darboux import monomials
from ..linear import NoSolution, solve_parametric
from .factor import IntegratingFactor


@dataclass(frozen=True)
class ClosedForm:
    """``F = R * rational + sum(l * log(p) for p, l in logs)``.

    ``factor`` is ``None`` when ``F`` has no ``R`` prefactor.
    """

    factor: IntegratingFactor | None
    rational: RatFunc
    logs: tuple = ()
    rational_factor: RatFunc | None = None

    @property
    def integrating_factor(self) -> RatFunc:
        """``R`` itself when it is rational (needed only without a prefactor)."""
        return self.rational_factor if self.rational_factor is not None else RatFunc(1)

    def check(self, eq: FOODE) -> bool:
        """Exact test of ``F_x = R M`` and ``F_y = -R N``."""
        if self.factor is not None:
            rx, ry = _log_gradient(self.factor)
            h = self.rational
            return rx * h + h.diff_x() == RatFunc(eq.m) and ry * h + h.diff_y() == RatFunc(-eq.n)
        fx = self.rational.diff_x()
        fy = self.rational.diff_y()
        for p, lam in self.logs:
            fx = fx + RatFunc(p.diff_x().scale(lam), p)
            fy = fy + RatFunc(p.diff_y().scale(lam), p)
        r = self.integrating_factor
        return fx == r * RatFunc(eq.m) and fy == r * RatFunc(-eq.n)

    def render(self, style="plain") -> str:
        from ..parser import render

        sp = style == "plain"
        mul = " * " if sp else "*"
        if self.factor is not None:
            body = render(self.rational, style)
            if not self.factor.r0 and not self.factor.factors:
                return body
            return f"{render(self.factor, style)}{mul}({body})"
        out = render(self.rational, style) if self.rational else ""
        for p, lam in self.logs:
            neg = _is_negative(lam)
            a = -lam if neg else lam
            term = f"log({render(p, style)})"
            if a != 1:
                term = f"{render(RatFunc(a), style)}{mul}{term}"
            if not out:
                out = f"-{term}" if neg else term
            elif sp:
                out += f" - {term}" if neg else f" + {term}"
            else:
                out += f"-{term}" if neg else f"+{term}"
        return out or "0"


@dataclass(frozen=True)
class Unevaluated:
    """The closed one-form ``R M dx - R N dy`` whose potential is left as a quadrature."""

    factor: IntegratingFactor
    m: MPoly
    n: MPoly

    def render(self, style="plain") -> str:
        from ..parser import render

        R = render(self.factor, style)
        M = render(self.m, style)
        N = render(self.n, style)
        if style == "plain":
            return f"{R} * (({M}) dx - ({N}) dy)"
        return f"{R}*(({M})dx-({N})dy)"


def _is_negative(c):
    try:
        return c < 0
    except TypeError:
        return False


def _as_ratfunc(R: IntegratingFactor) -> RatFunc:
    """A rational ``R`` (``r0 = 0``, integer exponents) as a single fraction."""
    num = MPoly.const(1)
    den = MPoly.const(1)
    for p, c in R.factors:
        if c > 0:
            num = num * p ** int(c)
        else:
            den = den * p ** int(-c)
    return RatFunc(num, den)


def _log_gradient(R: IntegratingFactor):
    """``(R_x / R, R_y / R)`` as rational functions."""
    gx = R.r0.diff_x()
    gy = R.r0.diff_y()
    for p, c in R.factors:
        gx = gx + RatFunc(p.diff_x().scale(c), p)
        gy = gy + RatFunc(p.diff_y().scale(c), p)
    return gx, gy


def _solve_columns(cols_x, cols_y, tx: MPoly, ty: MPoly):
    """Coefficients ``u`` with ``sum u_k cols_x[k] = tx`` and likewise in y."""
    mons_x = sorted(set(tx.terms).union(*(c.terms for c in cols_x)))
    mons_y = sorted(set(ty.terms).union(*(c.terms for c in cols_y)))
    A = [[c.terms.get(m, ZERO) for c in cols_x] for m in mons_x]
    A += [[c.terms.get(m, ZERO) for c in cols_y] for m in mons_y]
    b = [tx.terms.get(m, ZERO) for m in mons_x] + [ty.terms.get(m, ZERO) for m in mons_y]
    try:
        return solve_parametric(A, b).particular
    except NoSolution:
        return None


def _product(polys):
    out = MPoly.const(1)
    for p in polys:
        out = out * p
    return out


def _exp_shape(eq: FOODE, R: IntegratingFactor, extra: int):
    """``F = R * A / (P * E)``, solved as polynomial identities in ``A``."""
    P = _product(p for p, _ in R.factors)
    E = R.r0.den
    num = R.r0.num
    dn = P * E
    # R_x / R = Ux / (P * E^2), likewise for y
    ux = (num.diff_x() * E - num * E.diff_x()) * P
    uy = (num.diff_y() * E - num * E.diff_y()) * P
    E2 = E * E
    for p, c in R.factors:
        rest = P.exquo(p)
        ux = ux + (E2 * p.diff_x() * rest).scale(c)
        uy = uy + (E2 * p.diff_y() * rest).scale(c)
    dnx, dny = dn.diff_x(), dn.diff_y()
    # R_x/R * A/dn + (A/dn)_x = M  <=>  Ux A + E (A_x dn - A dn_x) = M P^2 E^3
    dA = dn.degree() + eq.degree() + extra
    mons = monomials(dA)
    cols_x, cols_y = [], []
    for m in mons:
        a = MPoly._raw({m: ONE})
        cols_x.append(ux * a + E * (a.diff_x() * dn - a * dnx))
        cols_y.append(uy * a + E * (a.diff_y() * dn - a * dny))
    scale = P * P * E2 * E
    u = _solve_columns(cols_x, cols_y, eq.m * scale, -(eq.n * scale))
    if u is None:
        return None
    A = MPoly({m: v for m, v in zip(mons, u) if v})
    H = RatFunc(A, dn)
    if R.is_rational():
        r = _as_ratfunc(R)
        return ClosedForm(None, r * H, (), r)
    return ClosedForm(R, H)


def _log_shape(eq: FOODE, R: IntegratingFactor, extra: int):
    """``F = A / B + sum(l_k log p_k)`` for rational ``R = Rn / B``."""
    if not R.is_rational():
        return None
    ps = [p for p, _ in R.factors]
    P = _product(ps)
    Rn = _product(p ** int(c) for p, c in R.factors if c > 0)
    B = _product(p ** int(-c) for p, c in R.factors if c < 0)
    dA = B.degree() + eq.degree() + extra
    mons = monomials(dA)
    B2 = B * B
    Bx, By = B.diff_x(), B.diff_y()
    cols_x, cols_y = [], []
    # (A/B)_x + sum l p_x/p = M Rn/B  <=>  (A_x B - A B_x) P + B^2 sum l p_x P/p = M Rn B P
    for m in mons:
        a = MPoly._raw({m: ONE})
        cols_x.append((a.diff_x() * B - a * Bx) * P)
        cols_y.append((a.diff_y() * B - a * By) * P)
    for p in ps:
        rest = P.exquo(p)
        cols_x.append(B2 * p.diff_x() * rest)
        cols_y.append(B2 * p.diff_y() * rest)
    u = _solve_columns(cols_x, cols_y, eq.m * Rn * B * P, -(eq.n * Rn * B * P))
    if u is None:
        return None
    A = MPoly({m: v for m, v in zip(mons, u[: len(mons)]) if v})
    logs = tuple((p, lam) for p, lam in zip(ps, u[len(mons) :]) if lam)
    return ClosedForm(None, RatFunc(A, B), logs, _as_ratfunc(R))


def first_integral(eq: FOODE, R: IntegratingFactor, extra_degree: int = 1):
    """A :class:`ClosedForm` from the table, else :class:`Unevaluated`.

    ``R`` must already be a verified integrating factor of ``eq``.
    """
    for shape in (_exp_shape, _log_shape):
        out = shape(eq, R, extra_degree)
        if out is not None:
            return out
    return Unevaluated(R, eq.m, eq.n)
