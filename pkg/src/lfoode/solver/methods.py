"""Exponent and ``r0`` determination for ``R = exp(r0) * prod(p_i ** c_i)``.

All methods reduce to exact linear algebra in the unknown exponents (plus,
for the two-variable case, the numerator coefficients of ``r'`` and ``s'``),
followed by Hermite "no logarithm" constraints.  Every factor a method
returns has passed :func:`verify_integrating_factor`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..core import upoly
from ..core.field import ONE, ZERO
from ..core.foode import FOODE, d_operator
from ..core.mpoly import MPoly, RatFunc
from ..darboux import DarbouxPair
from ..hermite import AffineRational, hermite_reduce, integrate_rational_part, rationality_constraints
from ..linear import NoSolution, solve_parametric
from .factor import IntegratingFactor

log = logging.getLogger(__name__)


class NoResult(ArithmeticError):
    """The method found no integrating factor of its form."""


class AnsatzExhausted(NoResult):
    """Every candidate denominator of the two-variable ansatz failed."""


def verify_integrating_factor(eq: FOODE, R: IntegratingFactor) -> bool:
    """Exact check of ``D[r0] + sum c_i g_i + N_x + M_y == 0``.

    Each ``g_i`` is recomputed as the exact quotient ``D[p_i] / p_i``; a
    factor that does not divide its image under ``D`` fails the check.
    """
    try:
        acc = d_operator(eq, R.r0) + RatFunc(eq.n.diff_x() + eq.m.diff_y())
        for p, c in R.factors:
            g, r = d_operator(eq, p).divmod_glex(p)
            if r:
                return False
            acc = acc + RatFunc(g.scale(c))
        return not acc
    except (ArithmeticError, TypeError, ValueError):
        return False


def _match_rows(columns, target):
    """Rows of ``sum_k u_k * columns[k] == target`` by coefficient matching."""
    mons = set(target.terms)
    for col in columns:
        mons.update(col.terms)
    mons = sorted(mons)
    A = [[col.terms.get(m, ZERO) for col in columns] for m in mons]
    b = [target.terms.get(m, ZERO) for m in mons]
    return A, b


def _finish(eq, pairs, cs, r0):
    R = IntegratingFactor.build(r0, [(pr.p, c) for pr, c in zip(pairs, cs)])
    if not verify_integrating_factor(eq, R):
        log.warning("candidate factor failed verification: %s", R)
        raise NoResult("candidate failed verification")
    return R


def classic_ps(eq: FOODE, pairs) -> IntegratingFactor:
    """Solve ``sum n_i g_i = -(N_x + M_y)`` for rational ``n_i`` (``r0 = 0``)."""
    pairs = list(pairs)
    target = -(eq.n.diff_x() + eq.m.diff_y())
    A, b = _match_rows([pr.g for pr in pairs], target)
    try:
        space = solve_parametric(A, b, names=[f"n{i + 1}" for i in range(len(pairs))])
    except NoSolution:
        raise NoResult("exponent system is inconsistent") from None
    return _finish(eq, pairs, space.particular, None)


def _solve_labels(A, b, labels, what):
    """Particular solution (free labels at 0) of the no-logarithm constraints."""
    if not labels:
        if any(b):
            raise NoResult(f"{what}: logarithmic terms cannot vanish")
        return ()
    try:
        return solve_parametric(A, b, names=labels).particular
    except NoSolution:
        raise NoResult(f"{what}: logarithmic terms cannot vanish") from None


def _source(eq: FOODE, pairs, cs):
    """``S = N_x + M_y + sum c_i g_i`` for concrete exponents."""
    s = eq.n.diff_x() + eq.m.diff_y()
    for pr, c in zip(pairs, cs):
        if c:
            s = s + pr.g.scale(c)
    return s


def _sample_point(poly: MPoly, var: str):
    """A small integer at which ``poly`` stays nonzero after substituting ``var``."""
    for k in range(0, 64):
        for v in (k, -k) if k else (0,):
            sub = poly.subs_y(v) if var == "y" else poly.subs_x(v)
            if sub:
                return v
    raise ArithmeticError("no admissible substitution point")


def _one_variable_case(eq: FOODE, pairs, var: str) -> IntegratingFactor:
    """Shared pipeline for ``r0 = r0(x)`` (``var='x'``) and ``r0 = r0(y)``.

    With ``P = N`` for x and ``P = M`` for y: ``r0' = -S/P`` must be free of
    the other variable and have a rational antiderivative.
    """
    pairs = list(pairs)
    k = len(pairs)
    names = [f"c{i + 1}" for i in range(k)]
    P = eq.n if var == "x" else eq.m
    if not P:
        raise NoResult(f"case {var} needs a nonzero {'N' if var == 'x' else 'M'}")
    other_diff = (lambda f: f.diff_y()) if var == "x" else (lambda f: f.diff_x())
    dP = other_diff(P)
    s0 = eq.n.diff_x() + eq.m.diff_y()

    # stage 1: the other-variable derivative of S/P vanishes (linear in c)
    def wr(f):
        return other_diff(f) * P - f * dP

    A, b = _match_rows([wr(pr.g) for pr in pairs], -wr(s0))
    try:
        space = solve_parametric(A, b, names=names)
    except NoSolution:
        raise NoResult(f"case {var}: S/P depends on both variables") from None

    # stage 2: no logarithms in the integral of -S/P
    point = _sample_point(P, "y" if var == "x" else "x")

    def restrict(f: MPoly):
        g = f.subs_y(point) if var == "x" else f.subs_x(point)
        return g.to_upoly(var)

    labels = [f"t{j + 1}" for j in range(space.dimension)]
    num = {None: upoly.neg(restrict(_source(eq, pairs, space.particular)))}
    for label, vec in zip(labels, space.basis):
        src = MPoly()
        for pr, c in zip(pairs, vec):
            if c:
                src = src + pr.g.scale(c)
        num[label] = upoly.neg(restrict(src))
    res = hermite_reduce(AffineRational(var, num, restrict(P)))
    A2, b2 = rationality_constraints(res, labels)
    tvals = _solve_labels(A2, b2, labels, f"case {var}")
    cs = space.point(tvals)
    r0 = integrate_rational_part(res, dict(zip(labels, tvals)))
    return _finish(eq, pairs, cs, r0)


def liouvillian_case_x(eq: FOODE, pairs) -> IntegratingFactor:
    """``r0 = r0(x)`` with ``r0' = -(N_x + M_y + sum c_i g_i)/N``."""
    return _one_variable_case(eq, pairs, "x")


def liouvillian_case_y(eq: FOODE, pairs) -> IntegratingFactor:
    """``r0 = r0(y)`` with ``r0' = -(N_x + M_y + sum c_i g_i)/M``."""
    return _one_variable_case(eq, pairs, "y")


def _content(p: MPoly, var: str):
    """Content of ``p`` as a dense polynomial in ``var`` (monic, possibly ``[1]``)."""
    rows = p.as_y_major() if var == "x" else p.as_x_major()
    g = []
    for row in rows:
        g = upoly.gcd(g, row)
        if len(g) == 1:
            break
    return g or [ONE]


@dataclass(frozen=True)
class AnsatzConfig:
    """Knobs of the two-variable ansatz: multiplicities ``1..mult``, numerator slack."""

    mult: int = 2
    slack: int | None = None


def liouvillian_case_xy(eq: FOODE, pairs, ansatz: AnsatzConfig = AnsatzConfig()) -> IntegratingFactor:
    """``r0 = r(x) + s(y)`` via ``r' = a/q``, ``s' = b/w`` with fixed denominators.

    ``q`` is a power of the y-free content of ``N`` and ``w`` the same power
    of the x-free content of ``M``.  Clearing denominators turns
    ``N r' + M s' + S = 0`` into one linear system in the coefficients of
    ``a``, ``b`` and the exponents.
    """
    pairs = list(pairs)
    slack = eq.degree() if ansatz.slack is None else ansatz.slack
    qbase = _content(eq.n, "x")
    wbase = _content(eq.m, "y") if eq.m else [ONE]
    last = None
    for k in range(1, ansatz.mult + 1):
        try:
            return _xy_attempt(eq, pairs, upoly.power(qbase, k), upoly.power(wbase, k), slack)
        except NoResult as exc:
            last = exc
            log.debug("case xy, multiplicity %d: %s", k, exc)
    raise AnsatzExhausted(
        f"case xy: no solution for multiplicities 1..{ansatz.mult} with slack {slack}"
        + (f" (last: {last})" if last else "")
    )


def _xy_attempt(eq, pairs, q, w, slack):
    da = upoly.deg(q) + slack
    db = upoly.deg(w) + slack
    qx = MPoly.from_upoly(q, "x")
    wy = MPoly.from_upoly(w, "y")
    k = len(pairs)
    names = (
        [f"a{i}" for i in range(da + 1)] + [f"b{j}" for j in range(db + 1)] + [f"c{i + 1}" for i in range(k)]
    )
    cols = []
    nw = eq.n * wy
    for i in range(da + 1):
        cols.append(nw.shift(i, 0))
    mq = eq.m * qx
    for j in range(db + 1):
        cols.append(mq.shift(0, j))
    qw = qx * wy
    for pr in pairs:
        cols.append(pr.g * qw)
    target = -((eq.n.diff_x() + eq.m.diff_y()) * qw)
    A, b = _match_rows(cols, target)
    try:
        space = solve_parametric(A, b, names=names)
    except NoSolution:
        raise NoResult("cleared equation is inconsistent") from None

    labels = [f"t{j + 1}" for j in range(space.dimension)]

    def side(lo, hi, var, den):
        num = {None: upoly.trim(list(space.particular[lo:hi]))}
        for label, vec in zip(labels, space.basis):
            num[label] = upoly.trim(list(vec[lo:hi]))
        return hermite_reduce(AffineRational(var, num, den))

    rx = side(0, da + 1, "x", q)
    sy = side(da + 1, da + db + 2, "y", w)
    A1, b1 = rationality_constraints(rx, labels)
    A2, b2 = rationality_constraints(sy, labels)
    tvals = _solve_labels(A1 + A2, b1 + b2, labels, "case xy")
    vals = dict(zip(labels, tvals))
    point = space.point(tvals)
    r = integrate_rational_part(rx, vals)
    s = integrate_rational_part(sy, vals)
    cs = point[da + db + 2 :]
    return _finish(eq, pairs, cs, r + s)


def split_r0(r0: RatFunc):
    """Split ``r0 = r(x) + s(y)`` when it has that shape, else ``None``."""
    if r0.free_of_y() or r0.free_of_x():
        return (r0, RatFunc(0)) if r0.free_of_y() else (RatFunc(0), r0)
    dx = r0.diff_x()
    if not dx.free_of_y():
        return None
    # r = r0 - r0(x0, y) + const; pick the point x = 0 when admissible
    for x0 in range(0, 16):
        try:
            s = RatFunc(r0.num.subs_x(x0), r0.den.subs_x(x0))
        except ZeroDivisionError:
            continue
        return r0 - s, s
    return None


__all__ = [
    "AnsatzConfig",
    "AnsatzExhausted",
    "DarbouxPair",
    "NoResult",
    "classic_ps",
    "liouvillian_case_x",
    "liouvillian_case_xy",
    "liouvillian_case_y",
    "split_r0",
    "verify_integrating_factor",
]
