"""Coefficient fields: the rationals, and rational functions in one parameter.

Rationals are plain :class:`fractions.Fraction`.  A named parameter ``b``
(as in ``dy/dx = -b*y/(x*y + 1)``) turns the coefficient field into
``Q(b)``; its elements are :class:`ParamRational`.  Arithmetic that
produces a parameter-free value collapses back to ``Fraction`` so that
ordinary equations never see the wrapper type.
"""

from __future__ import annotations

from fractions import Fraction

from . import upoly

ONE = Fraction(1)
ZERO = Fraction(0)


class ParamField:
    """The field Q(name).  Identity matters: elements of distinct fields don't mix."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def gen(self) -> "ParamRational":
        return ParamRational(self, [ZERO, ONE], [ONE])

    def __repr__(self):
        return f"ParamField({self.name!r})"

    def __eq__(self, other):
        return isinstance(other, ParamField) and other.name == self.name

    def __hash__(self):
        return hash(("ParamField", self.name))


def _lift(field, v):
    if isinstance(v, ParamRational):
        if v.field != field:
            raise ValueError(f"cannot mix parameters {v.field.name!r} and {field.name!r}")
        return v.num, v.den
    if isinstance(v, (int, Fraction)):
        v = Fraction(v)
        return ([v] if v else []), [ONE]
    return None


def make(field, num, den):
    """Build ``num/den`` in lowest terms, collapsing to Fraction if b-free."""
    num = upoly.trim(list(num))
    den = upoly.trim(list(den))
    if not den:
        raise ZeroDivisionError("parameter rational function with zero denominator")
    if not num:
        return ZERO
    g = upoly.gcd(num, den)
    if len(g) > 1:
        num = upoly.quo_exact(num, g)
        den = upoly.quo_exact(den, g)
    lc = den[-1]
    if lc != 1:
        num = [c / lc for c in num]
        den = [c / lc for c in den]
    if len(den) == 1 and len(num) == 1:
        return num[0]
    return ParamRational(field, num, den)


class ParamRational:
    """An element ``num(b)/den(b)`` of Q(b) with monic denominator, gcd 1."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den):
        self.field = field
        self.num = tuple(num)
        self.den = tuple(den)
        self._hash = None

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _lift(self.field, other)
        if o is None:
            return NotImplemented
        on, od = o
        if od == [ONE] or od == (ONE,):
            return make(self.field, upoly.add(list(self.num), upoly.mul(on, list(self.den))), self.den)
        n = upoly.add(upoly.mul(list(self.num), od), upoly.mul(on, list(self.den)))
        return make(self.field, n, upoly.mul(list(self.den), od))

    __radd__ = __add__

    def __neg__(self):
        return ParamRational(self.field, [-c for c in self.num], self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _lift(self.field, other)
        if o is None:
            return NotImplemented
        on, od = o
        return make(self.field, upoly.mul(list(self.num), on), upoly.mul(list(self.den), od))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(self.field, other)
        if o is None:
            return NotImplemented
        on, od = o
        if not on:
            raise ZeroDivisionError("division by zero in Q(%s)" % self.field.name)
        return make(self.field, upoly.mul(list(self.num), od), upoly.mul(list(self.den), on))

    def __rtruediv__(self, other):
        o = _lift(self.field, other)
        if o is None:
            return NotImplemented
        on, od = o
        return make(self.field, upoly.mul(on, list(self.den)), upoly.mul(od, list(self.num)))

    def __pow__(self, n: int):
        if n < 0:
            return ONE / (self ** (-n))
        return make(self.field, upoly.power(list(self.num), n), upoly.power(list(self.den), n))

    # comparison -------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, ParamRational):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            # a normalized ParamRational is never b-free
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.name, self.num, self.den))
        return self._hash

    def evaluate(self, value):
        """Substitute a rational value for the parameter."""
        d = upoly.evaluate(self.den, value)
        if not d:
            raise ZeroDivisionError(f"{self.field.name} = {value} is a pole")
        return Fraction(upoly.evaluate(self.num, value)) / d

    def __repr__(self):
        return f"ParamRational({self.field.name}: {list(self.num)}/{list(self.den)})"


def is_rational(c) -> bool:
    return not isinstance(c, ParamRational)


def field_of(coeffs):
    """The parameter field among ``coeffs``, or None for plain Q."""
    for c in coeffs:
        if isinstance(c, ParamRational):
            return c.field
    return None
