"""Exact linear systems over Q (or Q(b)) with affine solution spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm as ilcm

from . import kernels
from .core.field import ONE, ZERO, field_of


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


@dataclass(frozen=True)
class AffineSolutionSpace:
    """``particular + sum(t_j * basis[j])``.

    Each basis vector has a 1 in its own free coordinate and 0 in the free
    coordinates of the other basis vectors, so ``particular`` is the member
    with every free parameter at 0.
    """

    particular: tuple
    basis: tuple = ()
    variable_names: tuple = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.particular)

    def point(self, params=None):
        """The member for the given free-parameter values (default all 0)."""
        v = list(self.particular)
        for t, vec in zip(params or (), self.basis):
            if t:
                v = [a + t * b for a, b in zip(v, vec)]
        return tuple(v)

    def value(self, name):
        """Particular value of a named variable."""
        return self.particular[self.variable_names.index(name)]

    def is_determined(self, index) -> bool:
        return all(not vec[index] for vec in self.basis)

    def as_dict(self):
        return dict(zip(self.variable_names, self.particular))

    def contains(self, v) -> bool:
        """Membership test for a concrete vector (exact)."""
        d = [a - b for a, b in zip(v, self.particular)]
        if not self.basis:
            return not any(d)
        cols = [list(row) for row in zip(*self.basis)]
        try:
            solve_parametric(cols, d)
        except NoSolution:
            return False
        return True


def residual(A, v, b):
    """``A v - b`` as a list (exact)."""
    return [sum((a * x for a, x in zip(row, v)), ZERO) - bi for row, bi in zip(A, b)]


def _rref_rational(aug, ncols):
    """Row-reduce an augmented rational matrix through the integer Bareiss kernel."""
    rows = []
    for row in aug:
        den = 1
        for v in row:
            if v:
                den = ilcm(den, Fraction(v).denominator)
        rows.append([int(Fraction(v) * den) for v in row])
    pivots = kernels.bareiss(rows, ncols + 1)
    r = len(pivots)
    out = [[Fraction(v) for v in rows[i]] for i in range(r)]
    # back-substitution to reduced form
    for k in range(r - 1, -1, -1):
        pc = pivots[k]
        row = out[k]
        p = row[pc]
        if p != 1:
            out[k] = row = [v / p for v in row]
        for i in range(k):
            f = out[i][pc]
            if f:
                out[i] = [a - f * b for a, b in zip(out[i], row)]
    return out, pivots


def _rref_field(aug, ncols):
    """Gauss-Jordan over a general exact field (used for Q(b) entries)."""
    rows = [list(r) for r in aug]
    m = len(rows)
    pivots = []
    r = 0
    for col in range(ncols + 1):
        if r >= m:
            break
        best = -1
        best_nz = 0
        for i in range(r, m):
            if rows[i][col]:
                nz = sum(1 for v in rows[i] if v)
                if best < 0 or nz < best_nz:
                    best, best_nz = i, nz
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        p = rows[r][col]
        rows[r] = [v / p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def solve_parametric(A, b, names=None) -> AffineSolutionSpace:
    """Solve ``A v = b`` exactly.

    Raises :class:`NoSolution` when inconsistent.  Rows of ``A`` must all
    have the same length; an empty ``A`` needs ``names`` to fix the width.
    """
    A = [list(r) for r in A]
    b = list(b)
    if len(A) != len(b):
        raise ValueError("A and b have different numbers of rows")
    if A:
        n = len(A[0])
        if any(len(r) != n for r in A):
            raise ValueError("inconsistent row lengths")
    else:
        n = len(names) if names is not None else 0
    if names is None:
        names = tuple(f"v{i}" for i in range(n))
    names = tuple(names)
    if len(names) != n:
        raise ValueError("wrong number of variable names")
    aug = [row + [bi] for row, bi in zip(A, b) if any(row) or bi]
    if not aug:
        basis = tuple(tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n))
        return AffineSolutionSpace(tuple([ZERO] * n), basis, names)
    entries = [v for row in aug for v in row]
    if field_of(entries) is None:
        red, pivots = _rref_rational(aug, n)
    else:
        red, pivots = _rref_field(aug, n)
    if pivots and pivots[-1] == n:
        raise NoSolution("inconsistent linear system")
    particular = [ZERO] * n
    for k, pc in enumerate(pivots):
        particular[pc] = red[k][n]
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        vec = [ZERO] * n
        vec[f] = ONE
        for k, pc in enumerate(pivots):
            vec[pc] = -red[k][f]
        basis.append(tuple(vec))
    return AffineSolutionSpace(tuple(particular), tuple(basis), names)


def intersect_constraints(space: AffineSolutionSpace, A, b) -> AffineSolutionSpace:
    """Restrict ``space`` to the vectors that also satisfy ``A v = b``."""
    A = [list(r) for r in A]
    b = list(b)
    if not A:
        return space
    if any(len(r) != len(space) for r in A):
        raise ValueError("constraint width does not match the space")
    p = space.particular
    B = space.basis
    # substitute v = p + sum t_j B_j
    At = [[sum((a * x for a, x in zip(row, vec)), ZERO) for vec in B] for row in A]
    bt = [bi - sum((a * x for a, x in zip(row, p)), ZERO) for row, bi in zip(A, b)]
    if not B:
        if any(bt):
            raise NoSolution("constraints exclude the only solution")
        return space
    sub = solve_parametric(At, bt, names=tuple(f"t{j}" for j in range(len(B))))
    newp = list(p)
    for tj, vec in zip(sub.particular, B):
        if tj:
            newp = [a + tj * x for a, x in zip(newp, vec)]
    newb = []
    for cvec in sub.basis:
        acc = [ZERO] * len(p)
        for cj, vec in zip(cvec, B):
            if cj:
                acc = [a + cj * x for a, x in zip(acc, vec)]
        newb.append(tuple(acc))
    return AffineSolutionSpace(tuple(newp), tuple(newb), space.variable_names)
