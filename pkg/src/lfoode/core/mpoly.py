"""Sparse bivariate polynomials in ``x, y`` and rational functions over them."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, lcm as ilcm

from .. import kernels
from . import upoly
from .field import ONE, ZERO, ParamRational, field_of


class PoleError(ZeroDivisionError):
    """A denominator vanishes at the evaluation point."""


def _coerce(c):
    if isinstance(c, (Fraction, ParamRational)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def glex_key(e):
    """Sort key for exponent pairs: graded, then by x-degree (x > y)."""
    return (e[0] + e[1], e[0])


def poly_sort_key(p):
    """Deterministic order: degree, term count, then graded-lex terms (x before y)."""
    ts = p.sorted_terms()
    return (
        p.degree(),
        len(ts),
        tuple((-a, -b) for a, b in (glex_key(e) for e, _ in ts)),
        tuple((0, c) if isinstance(c, Fraction) else (1, str(c)) for _, c in ts),
    )


class MPoly:
    """Immutable polynomial in ``x, y``: ``terms`` maps ``(i, j)`` to a nonzero coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {k: _coerce(v) for k, v in terms.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def x(cls):
        return cls._raw({(1, 0): ONE})

    @classmethod
    def y(cls):
        return cls._raw({(0, 1): ONE})

    # structure --------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or list(self.terms) == [(0, 0)]

    def constant_value(self):
        return self.terms.get((0, 0), ZERO)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def deg_x(self):
        return max((i for i, _ in self.terms), default=-1)

    def deg_y(self):
        return max((j for _, j in self.terms), default=-1)

    def leading(self):
        """``(exponent, coefficient)`` of the graded-lex leading term."""
        e = max(self.terms, key=glex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: glex_key(t[0]), reverse=True)

    def field(self):
        return field_of(self.terms.values())

    def free_of_y(self):
        return all(j == 0 for _, j in self.terms)

    def free_of_x(self):
        return all(i == 0 for i, _ in self.terms)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction, ParamRational)):
                other = MPoly.const(other)
            else:
                return NotImplemented
        return MPoly._raw(kernels.axpy(self.terms, ONE, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction, ParamRational)):
                other = MPoly.const(other)
            else:
                return NotImplemented
        return MPoly._raw(kernels.axpy(self.terms, -ONE, other.terms))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MPoly):
            if not self.terms or not other.terms:
                return MPoly._raw({})
            return MPoly._raw(kernels.mul2(self.terms, other.terms))
        if isinstance(other, (int, Fraction, ParamRational)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c):
        if not c:
            return MPoly._raw({})
        c = _coerce(c)
        return MPoly._raw({k: v * c for k, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, di: int, dj: int):
        return MPoly._raw({(i + di, j + dj): v for (i, j), v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, ParamRational)):
            return self.terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # calculus ---------------------------------------------------------
    def diff_x(self):
        return MPoly._raw({(i - 1, j): v * i for (i, j), v in self.terms.items() if i})

    def diff_y(self):
        return MPoly._raw({(i, j - 1): v * j for (i, j), v in self.terms.items() if j})

    def __call__(self, x0, y0):
        return self.evaluate(x0, y0)

    def evaluate(self, x0, y0):
        acc = ZERO
        for (i, j), v in self.terms.items():
            acc += v * x0**i * y0**j
        return acc

    def subs_x(self, x0):
        """Substitute a field value for ``x``; the result is free of ``x``."""
        out = {}
        for (i, j), v in self.terms.items():
            out[(0, j)] = out.get((0, j), ZERO) + v * x0**i
        return MPoly(out)

    def subs_y(self, y0):
        out = {}
        for (i, j), v in self.terms.items():
            out[(i, 0)] = out.get((i, 0), ZERO) + v * y0**j
        return MPoly(out)

    def map_coeffs(self, f):
        return MPoly({k: f(v) for k, v in self.terms.items()})

    # division ---------------------------------------------------------
    def divmod_glex(self, other: "MPoly"):
        """Division by a single divisor in graded-lex order: ``(q, r)``."""
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        (li, lj), lc = other.leading()
        rem = dict(self.terms)
        q = {}
        r = {}
        while rem:
            e = max(rem, key=glex_key)
            c = rem[e]
            if e[0] >= li and e[1] >= lj:
                f = c / lc
                s = (e[0] - li, e[1] - lj)
                q[s] = f
                rem = kernels.axpy(rem, -f, other.terms, s)
            else:
                r[e] = c
                del rem[e]
        return MPoly._raw(q), MPoly._raw(r)

    def divides(self, other: "MPoly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if not self.terms:
            return not other.terms
        return not other.divmod_glex(self)[1].terms

    def exquo(self, other: "MPoly") -> "MPoly":
        q, r = self.divmod_glex(other)
        if r.terms:
            raise ArithmeticError("inexact polynomial division")
        return q

    # normalization ----------------------------------------------------
    def primitive(self):
        """Return ``(content, primitive_part)`` with ``self = content * pp``.

        Over Q the primitive part has coprime integer coefficients and a
        positive graded-lex leading coefficient.  Over Q(b) it is monic.
        """
        if not self.terms:
            return ZERO, self
        coeffs = list(self.terms.values())
        if field_of(coeffs) is None:
            den = 1
            num = 0
            for c in coeffs:
                den = ilcm(den, c.denominator)
            for c in coeffs:
                num = igcd(num, c.numerator * (den // c.denominator))
            content = Fraction(num, den)
            if self.leading()[1] < 0:
                content = -content
        else:
            content = self.leading()[1]
        if content == 1:
            return ONE, self
        inv = ONE / content
        return content, MPoly._raw({k: v * inv for k, v in self.terms.items()})

    def normalize(self):
        return self.primitive()[1]

    # conversions ------------------------------------------------------
    def as_y_major(self):
        """Coefficients in y as dense univariate polys in x: ``[c_0(x), c_1(x), ...]``."""
        dy = self.deg_y()
        out = [[] for _ in range(dy + 1)]
        for (i, j), v in self.terms.items():
            row = out[j]
            if len(row) <= i:
                row.extend([ZERO] * (i + 1 - len(row)))
            row[i] = v
        return out

    def as_x_major(self):
        dx = self.deg_x()
        out = [[] for _ in range(dx + 1)]
        for (i, j), v in self.terms.items():
            row = out[i]
            if len(row) <= j:
                row.extend([ZERO] * (j + 1 - len(row)))
            row[j] = v
        return out

    @classmethod
    def from_y_major(cls, rows):
        t = {}
        for j, row in enumerate(rows):
            for i, v in enumerate(row):
                if v:
                    t[(i, j)] = v
        return cls._raw(t)

    @classmethod
    def from_x_major(cls, rows):
        t = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    t[(i, j)] = v
        return cls._raw(t)

    @classmethod
    def from_upoly(cls, coeffs, var: str = "x"):
        if var == "x":
            return cls._raw({(i, 0): c for i, c in enumerate(coeffs) if c})
        return cls._raw({(0, j): c for j, c in enumerate(coeffs) if c})

    def to_upoly(self, var: str = "x"):
        """Dense coefficients of a polynomial in one variable only."""
        if var == "x":
            if not self.free_of_y():
                raise ValueError("polynomial depends on y")
            out = [ZERO] * (self.deg_x() + 1)
            for (i, _), v in self.terms.items():
                out[i] = v
        else:
            if not self.free_of_x():
                raise ValueError("polynomial depends on x")
            out = [ZERO] * (self.deg_y() + 1)
            for (_, j), v in self.terms.items():
                out[j] = v
        return upoly.trim(out)

    def __repr__(self):
        from ..parser import render

        return f"MPoly({render(self)!r})"

    def __str__(self):
        from ..parser import render

        return render(self)


X = MPoly.x()
Y = MPoly.y()


class RatFunc:
    """``num/den`` in lowest terms with ``den`` primitive-positive."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        if not isinstance(num, MPoly):
            num = MPoly.const(num)
        if den is None:
            den = MPoly.const(1)
        elif not isinstance(den, MPoly):
            den = MPoly.const(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if not num:
                den = MPoly.const(1)
            elif not den.is_constant():
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = num.exquo(g)
                    den = den.exquo(g)
            c, den = den.primitive()
            if c != 1:
                num = num.scale(ONE / c)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p, MPoly.const(1), reduce=False)

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_constant()

    def __add__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("rational function division by zero")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff_x(self):
        return RatFunc(self.num.diff_x() * self.den - self.num * self.den.diff_x(), self.den * self.den)

    def diff_y(self):
        return RatFunc(self.num.diff_y() * self.den - self.num * self.den.diff_y(), self.den * self.den)

    def evaluate(self, x0, y0):
        d = self.den.evaluate(x0, y0)
        if not d:
            raise PoleError(f"denominator vanishes at ({x0}, {y0})")
        return self.num.evaluate(x0, y0) / d

    __call__ = evaluate

    def free_of_y(self):
        return self.num.free_of_y() and self.den.free_of_y()

    def free_of_x(self):
        return self.num.free_of_x() and self.den.free_of_x()

    def __repr__(self):
        from ..parser import render

        return f"RatFunc({render(self)!r})"

    def __str__(self):
        from ..parser import render

        return render(self)


def _as_rf(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, MPoly):
        return RatFunc.from_poly(v)
    if isinstance(v, (int, Fraction, ParamRational)):
        return RatFunc.from_poly(MPoly.const(v))
    return None


# gcd ------------------------------------------------------------------------


def _ucontent(rows):
    g = []
    for r in rows:
        if r:
            g = upoly.gcd(g, r)
            if len(g) == 1:
                break
    return g


def _prem(a, b):
    """Pseudo-remainder in y of y-major polys with K[x] coefficients."""
    r = [list(c) for c in a]
    db = len(b) - 1
    lc = b[-1]
    steps = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        dr = len(r) - 1
        c = r[-1]
        r = [upoly.mul(t, lc) for t in r]
        for k in range(db + 1):
            r[dr - db + k] = upoly.sub(r[dr - db + k], upoly.mul(c, b[k]))
        while r and not r[-1]:
            r.pop()
        steps -= 1
    if steps > 0 and r:
        f = upoly.power(lc, steps)
        r = [upoly.mul(t, f) for t in r]
    return r


def _subresultant_gcd(a, b):
    """Gcd (up to K[x] content) of y-major polys ``a``, ``b`` with deg a >= deg b >= 1."""
    g = [ONE]
    h = [ONE]
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return [[ONE]]
        div = upoly.mul(g, upoly.power(h, delta))
        r = [upoly.quo_exact(c, div) for c in r]
        a, b = b, r
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = upoly.quo_exact(upoly.power(g, delta), upoly.power(h, delta - 1))


def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Primitive-positive gcd of two bivariate polynomials."""
    if not a.terms:
        return b.normalize()
    if not b.terms:
        return a.normalize()
    if a.is_constant() or b.is_constant():
        return MPoly.const(1)
    ay, by = a.as_y_major(), b.as_y_major()
    ca, cb = _ucontent(ay), _ucontent(by)
    cont = upoly.gcd(ca, cb)
    if len(ay) == 1 or len(by) == 1:
        return MPoly.from_upoly(cont, "x").normalize()
    pa = [upoly.quo_exact(c, ca) if c else [] for c in ay]
    pb = [upoly.quo_exact(c, cb) if c else [] for c in by]
    if len(pa) < len(pb):
        pa, pb = pb, pa
    g = _subresultant_gcd(pa, pb)
    gc = _ucontent(g)
    g = [upoly.quo_exact(c, gc) if c else [] for c in g]
    out = MPoly.from_y_major(g) * MPoly.from_upoly(cont, "x")
    return out.normalize()


def poly_lcm(a: MPoly, b: MPoly) -> MPoly:
    g = poly_gcd(a, b)
    return (a * b).exquo(g).normalize()
