"""Small polynomial systems over Q (or Q(b)): elimination and exact solving.

The systems that arise from Darboux ansatzes are bilinear in two groups of
unknowns and small at desk degrees.  :func:`solve_system` first removes
every unknown that occurs linearly with a constant coefficient, then
computes a lexicographic Groebner basis of what is left and back-solves
the triangular result.  Only solutions in the coefficient field are kept.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .budget import NEVER, Timeout  # noqa: F401  (Timeout re-exported)
from .core.field import ONE, ZERO, ParamRational, field_of, make as _make_param

log = logging.getLogger(__name__)


class CapExceeded(ValueError):
    """Too many unknowns for the configured cap."""


class SPoly:
    """Sparse polynomial in ``nvars`` unknowns; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars):
        self.terms = {k: v for k, v in terms.items() if v}
        self.nvars = nvars

    @classmethod
    def var(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): ONE}, nvars)

    @classmethod
    def const(cls, c, nvars):
        return cls({(0,) * nvars: c}, nvars)

    def _wrap(self, other):
        if isinstance(other, SPoly):
            return other
        return SPoly.const(other, self.nvars)

    def __add__(self, other):
        return SPoly(kernels.axpy(self.terms, ONE, self._wrap(other).terms), self.nvars)

    __radd__ = __add__

    def __sub__(self, other):
        return SPoly(kernels.axpy(self.terms, -ONE, self._wrap(other).terms), self.nvars)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __neg__(self):
        return SPoly({k: -v for k, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, SPoly):
            return SPoly(kernels.muln(self.terms, other.terms), self.nvars)
        if not other:
            return SPoly({}, self.nvars)
        return SPoly({k: v * other for k, v in self.terms.items()}, self.nvars)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SPoly):
            return self.terms == other.terms
        return self.terms == SPoly.const(other, self.nvars).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, ZERO)

    def variables(self):
        return sorted({i for e in self.terms for i, k in enumerate(e) if k})

    def evaluate(self, values):
        acc = ZERO
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v**k
            acc = acc + t
        return acc

    def substitute(self, i, value):
        """Replace unknown ``i`` by a field value or an SPoly."""
        return SPoly(_subst(self.terms, i, value), self.nvars)

    def __repr__(self):
        return f"SPoly({self.terms!r})"


@dataclass
class CoeffSystem:
    """Equations ``p = 0`` in the named unknowns; zero equations are dropped."""

    unknowns: tuple
    equations: list

    def __post_init__(self):
        self.unknowns = tuple(self.unknowns)
        self.equations = [e for e in self.equations if e.terms]

    def gens(self):
        n = len(self.unknowns)
        return [SPoly.var(i, n) for i in range(n)]


@dataclass
class SolutionBranch:
    """Assignments of every unknown to an SPoly in the ``free`` unknowns."""

    unknowns: tuple
    assignments: dict
    free: tuple = field(default=())

    def is_concrete(self):
        return not self.free

    def value(self, name):
        p = self.assignments[name]
        if not p.is_constant():
            raise ValueError(f"{name} depends on free unknowns {self.free}")
        return p.constant_value()

    def values(self):
        return {k: self.value(k) for k in self.unknowns}

    def specialize(self, params):
        """Concrete branch with the free unknowns set to ``params`` (name -> value)."""
        n = len(self.unknowns)
        point = [ZERO] * n
        for name, v in params.items():
            point[self.unknowns.index(name)] = v
        out = {}
        for name in self.unknowns:
            out[name] = SPoly.const(self.assignments[name].evaluate(point), n)
        return SolutionBranch(self.unknowns, out, ())

    def check(self, system: CoeffSystem) -> bool:
        """Substitute into every equation and test for the zero polynomial."""
        n = len(self.unknowns)
        for eq in system.equations:
            p = eq
            for i, name in enumerate(self.unknowns):
                a = self.assignments[name]
                if a == SPoly.var(i, n):
                    continue
                p = p.substitute(i, a)
            if p.terms:
                return False
        return True

    def sort_key(self):
        return tuple(
            (0, c) if isinstance(c, Fraction) else (1, str(c))
            for name in self.unknowns
            for c in [self.assignments[name].constant_value() if self.assignments[name].is_constant() else None]
            if c is not None
        )


# ---------------------------------------------------------------------------
# term-dict helpers


def _subst(terms, i, value):
    if not isinstance(value, SPoly):
        out = {}
        powers = {}
        for e, c in terms.items():
            k = e[i]
            if k:
                pw = powers.get(k)
                if pw is None:
                    pw = powers[k] = value**k
                c = c * pw
                if not c:
                    continue
                e = e[:i] + (0,) + e[i + 1 :]
            v = out.get(e)
            out[e] = c if v is None else v + c
        return {e: c for e, c in out.items() if c}
    powers = {}
    out = {e: c for e, c in terms.items() if not e[i]}
    for e, c in terms.items():
        k = e[i]
        if not k:
            continue
        pw = powers.get(k)
        if pw is None:
            pw = dict(value.terms)
            for _ in range(k - 1):
                pw = kernels.muln(pw, value.terms)
            powers[k] = pw
        base = e[:i] + (0,) + e[i + 1 :]
        out = kernels.axpy(out, c, pw, base)
    return out


def _monic(terms):
    if not terms:
        return terms
    lc = terms[max(terms)]
    if lc == 1:
        return terms
    inv = ONE / lc
    return {e: c * inv for e, c in terms.items()}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _reduce(p, G, lms):
    """Full reduction of ``p`` modulo ``G`` (monic, leading monomials ``lms``)."""
    p = dict(p)
    r = {}
    while p:
        m = max(p)
        c = p[m]
        for g, lm in zip(G, lms):
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                p = kernels.axpy(p, -c, g, shift)
                break
        else:
            r[m] = c
            del p[m]
    return r


def _spoly(f, fl, g, gl):
    l = _lcm(fl, gl)
    sf = tuple(x - y for x, y in zip(l, fl))
    sg = tuple(x - y for x, y in zip(l, gl))
    out = kernels.axpy({}, ONE, f, sf)
    return kernels.axpy(out, -ONE, g, sg)


def _update(polys, G, B, ih):
    """Gebauer-Moeller update of basis indices ``G`` and pairs ``B`` by ``ih``."""
    mh = max(polys[ih])
    C = list(G)
    D = []
    while C:
        ig = C.pop()
        mg = max(polys[ig])
        l = _lcm(mh, mg)
        coprime = all(not (a and b) for a, b in zip(mh, mg))

        def hits(ip):
            return _divides(_lcm(mh, max(polys[ip])), l)

        if coprime or not (any(hits(ip) for ip in C) or any(hits(jg) for _, jg in D)):
            D.append((ih, ig))
    E = {
        (i, j)
        for i, j in D
        if not all(not (a and b) for a, b in zip(mh, max(polys[j])))
    }
    keep = set()
    for i, j in B:
        mi, mj = max(polys[i]), max(polys[j])
        l = _lcm(mi, mj)
        if not _divides(mh, l) or _lcm(mi, mh) == l or _lcm(mj, mh) == l:
            keep.add((i, j))
    keep |= E
    newG = {ig for ig in G if not _divides(mh, max(polys[ig]))}
    newG.add(ih)
    return newG, keep


def _interreduce(polys):
    """Repeatedly reduce each input by its predecessors until nothing changes."""
    cur = [_monic(dict(p)) for p in polys if p]
    while True:
        nxt = []
        for i, p in enumerate(cur):
            prev = cur[:i]
            r = _reduce(p, prev, [max(q) for q in prev]) if prev else p
            if r:
                nxt.append(_monic(r))
        if nxt == cur:
            return cur
        cur = nxt


def groebner(polys, deadline=NEVER):
    """Reduced lexicographic Groebner basis of term dicts (unknown 0 is largest).

    Buchberger's algorithm with the Gebauer-Moeller criteria and the normal
    selection strategy.  Returns monic term dicts sorted by decreasing
    leading monomial; a constant basis ``[{0: 1}]`` signals the unit ideal.
    """
    polys = _interreduce(polys)
    if not polys:
        return []
    nv = len(next(iter(polys[0])))
    unit = [{(0,) * nv: ONE}]
    if any(not any(max(p)) for p in polys):
        return unit
    G, B = set(), set()
    for ih in sorted(range(len(polys)), key=lambda i: max(polys[i])):
        G, B = _update(polys, G, B, ih)
    while B:
        deadline.check()
        pair = min(B, key=lambda ij: (_lcm(max(polys[ij[0]]), max(polys[ij[1]])), ij))
        B.discard(pair)
        i, j = pair
        basis = sorted(G, key=lambda k: max(polys[k]))
        h = _reduce(
            _spoly(polys[i], max(polys[i]), polys[j], max(polys[j])),
            [polys[k] for k in basis],
            [max(polys[k]) for k in basis],
        )
        if not h:
            continue
        h = _monic(h)
        if not any(max(h)):
            return unit
        polys.append(h)
        G, B = _update(polys, G, B, len(polys) - 1)
    out = []
    for ig in G:
        others = [polys[k] for k in G if k != ig]
        r = _reduce(polys[ig], others, [max(q) for q in others])
        if r:
            out.append(_monic(r))
    out.sort(key=max, reverse=True)
    return out


# ---------------------------------------------------------------------------
# root finding in the coefficient field


def _sympy_coeff(c, bsym):
    import sympy

    if isinstance(c, ParamRational):
        num = sum(sympy.Rational(v.numerator, v.denominator) * bsym**k for k, v in enumerate(c.num))
        den = sum(sympy.Rational(v.numerator, v.denominator) * bsym**k for k, v in enumerate(c.den))
        return num / den
    c = Fraction(c)
    return sympy.Rational(c.numerator, c.denominator)


def _from_sympy(expr, pfield, bsym):
    import sympy

    expr = sympy.cancel(sympy.together(expr))
    if pfield is None or not expr.has(bsym):
        r = sympy.Rational(expr)
        return Fraction(int(r.p), int(r.q))
    num, den = sympy.fraction(expr)
    nc = [Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q)) for v in reversed(sympy.Poly(num, bsym).all_coeffs())]
    dc = [Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q)) for v in reversed(sympy.Poly(den, bsym).all_coeffs())]
    return _make_param(pfield, nc, dc)


def field_roots(coeffs):
    """Distinct roots in the coefficient field of ``sum(coeffs[k] * t**k)``.

    Backed by sympy's factorization over Q (or Q[b] for one parameter);
    irrational roots are dropped.  Sorted deterministically.
    """
    import sympy

    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    pfield = field_of(coeffs)
    t = sympy.Symbol("_t")
    bsym = sympy.Symbol(pfield.name) if pfield is not None else None
    expr = sum(_sympy_coeff(c, bsym) * t**k for k, c in enumerate(coeffs))
    num, _ = sympy.fraction(sympy.together(expr))
    gens = (t, bsym) if bsym is not None else (t,)
    _, factors = sympy.factor_list(sympy.expand(num), *gens)
    roots = []
    for fac, _mult in factors:
        p = sympy.Poly(fac, t)
        if p.degree() != 1:
            continue
        a1, a0 = p.all_coeffs()
        roots.append(_from_sympy(-a0 / a1, pfield, bsym))
    uniq = []
    for r in roots:
        if r not in uniq:
            uniq.append(r)
    dropped = sum(1 for fac, _ in factors if sympy.Poly(fac, t).degree() > 1)
    if dropped:
        log.info("discarded %d non-rational root factor(s)", dropped)
    uniq.sort(key=lambda r: (0, r) if isinstance(r, Fraction) else (1, str(r)))
    return uniq


# ---------------------------------------------------------------------------
# solving


def _find_linear(eqs, active, affine_only=True):
    """An unknown occurring only as ``c * v`` (constant ``c``) in some equation.

    With ``affine_only`` the equation itself must be affine, so the
    substitution never raises the degree of the remaining system.
    """
    best = None
    for idx, eq in enumerate(eqs):
        if best is not None and len(eq) >= best[0]:
            continue
        counts = {}
        for e in eq:
            for v in active:
                if e[v]:
                    counts[v] = counts.get(v, 0) + 1
        for v in sorted(active, reverse=True):
            if counts.get(v) != 1:
                continue
            unit = tuple(1 if k == v else 0 for k in range(len(next(iter(eq)))))
            if unit in eq and (not affine_only or all(sum(e) <= 1 for e in eq)):
                best = (len(eq), idx, v, unit)
                break
    if best is None:
        return None
    _, idx, v, unit = best
    eq = eqs[idx]
    c = eq[unit]
    inv = -ONE / c
    expr = {e: a * inv for e, a in eq.items() if e != unit}
    return v, expr


def _monomial_split(eqs):
    """The shortest equation with a non-constant common monomial factor, if any."""
    best = None
    for idx, eq in enumerate(eqs):
        it = iter(eq)
        mono = next(it)
        for e in it:
            mono = tuple(min(a, b) for a, b in zip(mono, e))
            if not any(mono):
                break
        if any(mono) and (best is None or len(eq) < len(eqs[best[0]])):
            best = (idx, mono)
    return best


def _block(eqs, active):
    """A proper subset of unknowns with at least as many equations living in it.

    Grows a variable set from each equation in turn, adding the equation
    that brings in the fewest new unknowns, and keeps the smallest set that
    becomes square (or overdetermined) before exhausting all unknowns.
    Darboux ansatz systems split this way by total degree: the top
    homogeneous block is small and the rest turns linear once it is fixed.
    """
    vs = [frozenset(v for v in active if any(e[v] for e in eq)) for eq in eqs]
    allv = frozenset().union(*vs)
    best = None
    for start in sorted(range(len(eqs)), key=lambda i: (len(vs[i]), i)):
        V = set(vs[start])
        if best is not None and len(V) >= len(best[0]):
            continue
        while len(V) < len(allv):
            inside = [i for i, w in enumerate(vs) if w <= V]
            if len(inside) >= len(V):
                if best is None or len(V) < len(best[0]):
                    best = (frozenset(V), inside)
                break
            nxt = min((i for i, w in enumerate(vs) if not w <= V), key=lambda i: (len(vs[i] - V), i))
            V |= vs[nxt]
    if best is None or len(best[1]) == len(eqs):
        return None
    return best


def _is_unit_ideal(eqs):
    return any(len(e) == 1 and not any(next(iter(e))) for e in eqs)


def _close(order, assign, sol, nv):
    """Back-substitute recorded expressions in reverse order into ``sol``."""
    sol = dict(sol)
    for v in reversed(order):
        expr = assign[v]
        for u, val in sol.items():
            if any(e[u] for e in expr):
                expr = _subst(expr, u, SPoly(val, nv) if isinstance(val, dict) else val)
        sol[v] = expr
    return sol


def _solve(eqs, active, nv, deadline, depth=0):
    deadline.check()
    eqs = [_monic(e) for e in eqs if e]
    order = []
    assign = {}
    active = set(active)
    while True:
        if _is_unit_ideal(eqs):
            return []
        found = _find_linear(eqs, active)
        if found is None:
            break
        v, expr = found
        order.append(v)
        assign[v] = expr
        active.discard(v)
        wrapped = SPoly(expr, nv)
        new = []
        seen = set()
        for e in eqs:
            s = _monic(_subst(e, v, wrapped)) if any(m[v] for m in e) else e
            if s:
                key = frozenset(s.items())
                if key not in seen:
                    seen.add(key)
                    new.append(s)
        eqs = new
    if not eqs:
        return [_close(order, assign, {}, nv)]
    blk = _block(eqs, active)
    if blk is not None:
        V, inside = blk
        rest = [e for i, e in enumerate(eqs) if i not in set(inside)]
        out = []
        for br in _solve([eqs[i] for i in inside], V, nv, deadline, depth + 1):
            sub = rest
            for v, expr in br.items():
                val = SPoly(expr, nv)
                sub = [_subst(e, v, val) if any(m[v] for m in e) else e for e in sub]
            for br2 in _solve(sub, active - set(br), nv, deadline, depth + 1):
                full = _close(list(br), br, br2, nv)
                out.append(_close(order, assign, full, nv))
        return out
    split = _monomial_split(eqs)
    if split is not None:
        idx, mono = split
        out = []
        for v in (i for i, k in enumerate(mono) if k):
            sub = [_subst(e, v, ZERO) for e in eqs]
            for br in _solve(sub, active - {v}, nv, deadline, depth + 1):
                br = dict(br)
                br[v] = {}
                out.append(_close(order, assign, br, nv))
        rest = list(eqs)
        q = {tuple(a - b for a, b in zip(e, mono)): c for e, c in eqs[idx].items()}
        rest[idx] = q
        for br in _solve(rest, active, nv, deadline, depth + 1):
            out.append(_close(order, assign, br, nv))
        return out
    G = groebner(eqs, deadline)
    if _is_unit_ideal(G):
        return []
    rest = []
    for g in G:
        lm = max(g)
        if sum(lm) == 1:
            v = lm.index(1)
            order.append(v)
            assign[v] = {e: -c for e, c in g.items() if e != lm}
            active.discard(v)
        else:
            rest.append(g)
    if not rest:
        return [_close(order, assign, {}, nv)]
    last = max(i for g in rest for e in g for i, k in enumerate(e) if k)
    uni = [g for g in rest if all(not any(k for i, k in enumerate(e) if i != last) for e in g)]
    if uni:
        h = uni[0]
        dense = [ZERO] * (max(e[last] for e in h) + 1)
        for e, c in h.items():
            dense[e[last]] = c
        values = field_roots(dense)
    else:
        log.info("positive-dimensional component; sampling unknown %d at 0 and 1", last)
        values = [ZERO, ONE]
    out = []
    for r in values:
        sub = [_subst(g, last, r) for g in rest]
        for br in _solve(sub, active - {last}, nv, deadline, depth + 1):
            br = dict(br)
            br[last] = {(0,) * nv: r} if r else {}
            out.append(_close(order, assign, br, nv))
    return out


def solve_system(system: CoeffSystem, cap: int = 30, deadline=NEVER):
    """All solution branches of ``system`` over the coefficient field.

    Free unknowns stay symbolic where the remaining system is solved by
    linear substitution; a positive-dimensional nonlinear remainder is
    sampled at 0 and 1 (logged).  Raises :class:`CapExceeded` or
    :class:`~lfoode.budget.Timeout`.
    """
    n = len(system.unknowns)
    if n > cap:
        raise CapExceeded(f"{n} unknowns exceed the cap of {cap}")
    raw = _solve([e.terms for e in system.equations], range(n), n, deadline)
    branches = []
    seen = set()
    for sol in raw:
        assigned = {}
        free = []
        for i, name in enumerate(system.unknowns):
            if i in sol:
                assigned[name] = SPoly(sol[i], n)
            else:
                assigned[name] = SPoly.var(i, n)
                free.append(name)
        key = tuple(frozenset(assigned[k].terms.items()) for k in system.unknowns)
        if key in seen:
            continue
        seen.add(key)
        branches.append(SolutionBranch(system.unknowns, assigned, tuple(free)))
    branches.sort(key=lambda b: (len(b.free), b.sort_key()))
    return branches
