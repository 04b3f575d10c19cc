"""Darboux polynomials: ``p`` with ``D[p] = g * p`` for ``D = N d/dx + M d/dy``."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .budget import NEVER, Timeout
from .core.field import ONE, ZERO
from .core.foode import FOODE, d_operator
from .core.mpoly import MPoly, glex_key, poly_sort_key
from .linear import NoSolution, solve_parametric
from .polysys import CoeffSystem, SPoly, solve_system

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DarbouxPair:
    """An eigenpolynomial ``p`` (primitive-positive, non-constant) and its cofactor ``g``."""

    p: MPoly
    g: MPoly

    def holds(self, eq: FOODE) -> bool:
        return d_operator(eq, self.p) == self.g * self.p


class DarbouxTimeout(Timeout):
    """Raised with the pairs found before the budget ran out."""

    def __init__(self, pairs):
        super().__init__(f"Darboux search timed out after {len(pairs)} pair(s)")
        self.pairs = pairs


def cofactor_bound(eq: FOODE) -> int:
    return max(eq.m.degree(), eq.n.degree()) - 1


def monomials(deg):
    """Exponent pairs of total degree <= deg in descending graded-lex order."""
    out = [(i, d - i) for d in range(deg, -1, -1) for i in range(d, -1, -1)]
    return out


def cofactor(eq: FOODE, p: MPoly):
    """``D[p]/p`` when ``p`` divides ``D[p]``, else None."""
    q, r = d_operator(eq, p).divmod_glex(p)
    return None if r else q


def _ansatz(eq: FOODE, deg: int, lead: int, gdeg: int):
    """Coefficient system for ``D[p] = g p`` with the ``lead``-th top monomial of ``p`` fixed to 1."""
    top = [(i, deg - i) for i in range(deg, -1, -1)]
    lower = monomials(deg - 1)
    pmons = [top[lead]] + top[lead + 1 :] + lower
    gmons = monomials(gdeg) if gdeg >= 0 else []
    names = [f"a{i}_{j}" for i, j in pmons[1:]] + [f"g{i}_{j}" for i, j in gmons]
    n = len(names)
    na = len(pmons) - 1

    def unit(*idx):
        e = [0] * n
        for k in idx:
            e[k] += 1
        return tuple(e)

    zero = (0,) * n
    eqs = {}

    def add(mon, key, c):
        row = eqs.setdefault(mon, {})
        v = row.get(key)
        s = c if v is None else v + c
        if s:
            row[key] = s
        else:
            row.pop(key, None)

    for k, m in enumerate(pmons):
        key = zero if k == 0 else unit(k - 1)
        dm = d_operator(eq, MPoly._raw({m: ONE}))
        for e, c in dm.terms.items():
            add(e, key, c)
        for l, gm in enumerate(gmons):
            gk = na + l
            prod = (m[0] + gm[0], m[1] + gm[1])
            add(prod, unit(gk) if k == 0 else unit(k - 1, gk), -ONE)
    system = CoeffSystem(tuple(names), [SPoly(row, n) for row in eqs.values()])
    return system, pmons, gmons


def _samples(branch):
    """Concrete members of a solution family: all free at 0, then each free at 1."""
    if branch.is_concrete():
        return [branch]
    log.warning(
        "family of Darboux polynomials with %d free parameter(s); sampling at 0 and 1",
        len(branch.free),
    )
    out = [branch.specialize({})]
    for name in branch.free:
        out.append(branch.specialize({name: ONE}))
    return out


def _in_span(p: MPoly, others):
    """True when ``p`` is a linear combination of ``others`` (exact)."""
    if not others:
        return False
    mons = sorted({e for q in others + [p] for e in q.terms}, key=glex_key)
    A = [[q.terms.get(e, ZERO) for q in others] for e in mons]
    b = [p.terms.get(e, ZERO) for e in mons]
    try:
        solve_parametric(A, b)
    except NoSolution:
        return False
    return True


def iter_darboux(eq: FOODE, max_degree: int, deadline=NEVER, cap: int = 30):
    """Yield ``(d, pairs)`` after each degree pass ``d = 1..max_degree``.

    ``pairs`` is a fresh sorted list of everything found up to degree ``d``.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    gdeg = cofactor_bound(eq)
    found = []
    for deg in range(1, max_degree + 1):
        candidates = {}
        try:
            for lead in range(deg + 1):
                deadline.check()
                system, pmons, gmons = _ansatz(eq, deg, lead, gdeg)
                for br in solve_system(system, cap=cap, deadline=deadline):
                    for sb in _samples(br):
                        vals = sb.values()
                        pt = {pmons[0]: ONE}
                        for m in pmons[1:]:
                            v = vals[f"a{m[0]}_{m[1]}"]
                            if v:
                                pt[m] = v
                        gt = {}
                        for m in gmons:
                            v = vals[f"g{m[0]}_{m[1]}"]
                            if v:
                                gt[m] = v
                        p = MPoly._raw(pt).normalize()
                        candidates.setdefault(p, MPoly._raw(gt))
        except Timeout:
            found.sort(key=lambda pr: poly_sort_key(pr.p))
            raise DarbouxTimeout(list(found)) from None
        for p in sorted(candidates, key=poly_sort_key):
            g = candidates[p]
            if any(q.p.divides(p) for q in found):
                continue
            same = [q.p for q in found if q.g == g and q.p.degree() == deg]
            if _in_span(p, same):
                continue
            found.append(DarbouxPair(p, g))
        found.sort(key=lambda pr: poly_sort_key(pr.p))
        yield deg, list(found)


def find_darboux(eq: FOODE, max_degree: int, deadline=NEVER, cap: int = 30):
    """Darboux pairs with ``deg p <= max_degree`` in (degree, term count, graded-lex) order.

    Candidates divisible by an already accepted ``p`` are dropped, which
    removes products of lower-degree pairs without factoring.  Members of a
    family sharing a cofactor are kept only when they are not in the span of
    accepted polynomials with that cofactor.  Raises :class:`DarbouxTimeout`
    carrying the pairs found so far.
    """
    pairs = []
    for _, pairs in iter_darboux(eq, max_degree, deadline, cap):
        pass
    return pairs
