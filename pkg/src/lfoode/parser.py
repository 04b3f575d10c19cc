"""Text input and output.

Input grammar (whitespace-insensitive)::

    equation  := side '=' side          (dy/dx must appear, linearly)
    side      := term (('+' | '-') term)*
    term      := unary (('*' | '/') unary)*
    unary     := ('-' | '+') unary | power
    power     := atom ('^' INTEGER)?
    atom      := INTEGER | 'x' | 'y' | PARAM | 'dy/dx' | '(' side ')'

so ``-x^2`` is ``-(x^2)``, multiplication is always explicit, and both
``dy/dx = <expr>`` and ``<expr1> * dy/dx + <expr2> = 0`` are accepted.
Integrating factors use a product syntax::

    factor_product := factor (('*' | '/') factor)*
    factor         := 'exp' '(' side ')' | base ('^' EXPONENT)?
    EXPONENT       := ['-'] INTEGER | '(' ['-'] INTEGER ['/' INTEGER] ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core.field import ParamField, ParamRational
from .core.foode import FOODE, ZeroDenominatorError
from .core.mpoly import MPoly, RatFunc
from .solver.factor import IntegratingFactor


class OdeSyntaxError(SyntaxError):
    """Malformed input; ``position`` is the 0-based character offset."""

    def __init__(self, message, text="", position=0):
        self.position = position
        self.source = text
        pointer = ""
        if text:
            pointer = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} at position {position}{pointer}")


class NonRationalError(ValueError):
    """Input outside the rational grammar (functions, floats, unknown symbols)."""


_TOKEN = re.compile(
    r"\s*(?:(?P<d>dy\s*/\s*dx)|(?P<num>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()=]))"
)


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise OdeSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "num" and not val.isdigit():
            raise NonRationalError(f"non-integer literal {val!r} at position {start}; use p/q")
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Lin:
    """``a + b * dy/dx`` with rational-function ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=None):
        self.a = a
        self.b = b if b is not None else RatFunc(0)


class _Parser:
    def __init__(self, text, params=()):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.symbols = {"x": MPoly.x(), "y": MPoly.y()}
        params = list(params)
        if len(params) > 1:
            raise ValueError("at most one named parameter is supported")
        self.field = None
        for name in params:
            if name in ("x", "y", "exp") or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"invalid parameter name {name!r}")
            self.field = ParamField(name)
            self.symbols[name] = MPoly.const(self.field.gen())

    # token helpers
    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            self.fail(f"expected {val!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def fail(self, msg, pos):
        raise OdeSyntaxError(msg, self.text, pos)

    def at(self, *vals):
        t = self.peek()
        return t[0] in ("op",) and t[1] in vals

    # grammar
    def side(self):
        v = self.term()
        while self.at("+", "-"):
            op = self.take()[1]
            w = self.term()
            v = _Lin(v.a + w.a, v.b + w.b) if op == "+" else _Lin(v.a - w.a, v.b - w.b)
        return v

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if self.at("*", "/"):
                self.take()
                w = self.unary()
                v = self._mul(v, w, t) if t[1] == "*" else self._div(v, w, t)
            elif t[0] in ("num", "id", "d") or (t[0] == "op" and t[1] == "("):
                self.fail("implicit multiplication; write '*'", t[2])
            else:
                return v

    def _mul(self, v, w, tok):
        if v.b and w.b:
            raise NonRationalError(f"dy/dx appears nonlinearly (position {tok[2]})")
        return _Lin(v.a * w.a, v.a * w.b + v.b * w.a)

    def _div(self, v, w, tok):
        if w.b:
            raise NonRationalError(f"division by an expression containing dy/dx (position {tok[2]})")
        if not w.a:
            raise ZeroDenominatorError(f"division by zero at position {tok[2]}")
        return _Lin(v.a / w.a, v.b / w.a)

    def unary(self):
        if self.at("-"):
            self.take()
            v = self.unary()
            return _Lin(-v.a, -v.b)
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            t = self.take()
            e = self.peek()
            if e[0] == "op" and e[1] == "-":
                raise NonRationalError(f"negative exponent at position {e[2]}; exponents are nonnegative integers")
            if e[0] != "num":
                self.fail("exponent must be a nonnegative integer", e[2])
            self.take()
            n = int(e[1])
            if self.at("^"):
                self.fail("chained '^' is ambiguous; add parentheses", self.peek()[2])
            if base.b and n > 1:
                raise NonRationalError(f"dy/dx appears nonlinearly (position {t[2]})")
            if n == 0:
                return _Lin(RatFunc(1))
            a = RatFunc(base.a.num**n, base.a.den**n)
            return _Lin(a, base.b if n == 1 else None)
        return base

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            return _Lin(RatFunc(int(val)))
        if kind == "d":
            return _Lin(RatFunc(0), RatFunc(1))
        if kind == "id":
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                raise NonRationalError(f"function {val!r} at position {pos} is outside the rational grammar")
            if val not in self.symbols:
                raise NonRationalError(
                    f"unknown symbol {val!r} at position {pos}; declare parameters with --param"
                )
            return _Lin(RatFunc.from_poly(self.symbols[val]))
        if kind == "op" and val == "(":
            v = self.side()
            self.expect(")")
            return v
        if kind == "end":
            self.fail("unexpected end of input", pos)
        self.fail(f"unexpected {val!r}", pos)

    def finish(self):
        t = self.peek()
        if t[0] != "end":
            self.fail(f"unexpected {t[1]!r}", t[2])

    # integrating factors
    def factor_product(self):
        r0 = RatFunc(0)
        factors = []
        sign = 1
        while True:
            e, f = self.if_factor()
            if e is not None:
                r0 = r0 + e if sign > 0 else r0 - e
            for p, c in f or ():
                factors.append((p, c * sign))
            if self.at("*"):
                self.take()
                sign = 1
            elif self.at("/"):
                self.take()
                sign = -1
            else:
                break
        self.finish()
        return IntegratingFactor.build(r0, factors)

    def if_factor(self):
        t = self.peek()
        if t[0] == "id" and t[1] == "exp":
            self.take()
            self.expect("(")
            v = self.side()
            self.expect(")")
            if v.b:
                raise NonRationalError("dy/dx inside an integrating factor")
            return v.a, None
        if t[0] == "op" and t[1] == "(":
            self.take()
            v = self.side()
            self.expect(")")
        elif t[0] in ("id", "num"):
            v = self.atom()
        else:
            self.fail(f"unexpected {t[1] or 'end of input'!r}", t[2])
        if v.b:
            raise NonRationalError("dy/dx inside an integrating factor")
        c = Fraction(1)
        if self.at("^"):
            self.take()
            c = self.exponent()
        a = v.a
        if not a:
            raise ZeroDenominatorError("zero factor in integrating factor")
        out = [(a.num, c)]
        if not a.den.is_constant():
            out.append((a.den, -c))
        return None, out

    def exponent(self):
        paren = self.at("(")
        if paren:
            self.take()
        neg = False
        if self.at("-"):
            self.take()
            neg = True
        t = self.take()
        if t[0] != "num":
            self.fail("exponent must be a rational literal", t[2])
        c = Fraction(int(t[1]))
        if paren and self.at("/"):
            self.take()
            d = self.take()
            if d[0] != "num" or int(d[1]) == 0:
                self.fail("bad exponent denominator", d[2])
            c = c / int(d[1])
        if paren:
            self.expect(")")
        return -c if neg else c


def parse_expr(text: str, params=()) -> RatFunc:
    """Parse a rational expression in ``x, y`` (and the declared parameter)."""
    p = _Parser(text, params)
    v = p.side()
    p.finish()
    if v.b:
        raise NonRationalError("dy/dx in a plain expression")
    return v.a


def parse_poly(text: str, params=()) -> MPoly:
    r = parse_expr(text, params)
    if not r.is_polynomial():
        raise NonRationalError(f"{text!r} is not a polynomial")
    return r.num


def parse_foode(text: str, params=()) -> FOODE:
    """Parse ``dy/dx = <expr>`` (or any equation linear in dy/dx) to a FOODE."""
    p = _Parser(text, params)
    lhs = p.side()
    t = p.peek()
    if not (t[0] == "op" and t[1] == "="):
        p.fail("expected '='", t[2])
    p.take()
    rhs = p.side()
    p.finish()
    a = lhs.a - rhs.a
    b = lhs.b - rhs.b
    if not b:
        raise OdeSyntaxError("equation does not contain dy/dx", text, 0)
    slope = -a / b
    return FOODE.from_rhs(slope)


def parse_integrating_factor(text: str, params=()) -> IntegratingFactor:
    """Parse ``exp(<expr>) * p1^c1 * ...``; constant factors are dropped."""
    p = _Parser(text, params)
    return p.factor_product()


# rendering ------------------------------------------------------------------


def _upoly_str(coeffs, name):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
        terms.append((c, mono))
    return _join_terms(terms)


def _join_terms(terms):
    """``terms`` are ``(Fraction, monomial_text)`` pairs."""
    if not terms:
        return "0"
    parts = []
    for idx, (c, mono) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_frac_str(a)}*{mono}"
        else:
            body = _frac_str(a)
        if idx == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def _frac_str(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _param_str(c: ParamRational):
    name = c.field.name
    num = _upoly_str(list(c.num), name)
    if len(c.den) == 1:
        return num
    return f"({num})/({_upoly_str(list(c.den), name)})"


def _mono(i, j):
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def _coeff_parts(c, mono):
    """``(negative, text)`` for a signed term."""
    if isinstance(c, ParamRational):
        nz = [k for k, v in enumerate(c.num) if v]
        dz = [k for k, v in enumerate(c.den) if v]
        if len(nz) == 1 and len(dz) == 1:
            name = c.field.name
            k, j = nz[0], dz[0]
            lead = c.num[k] / c.den[j]
            a = abs(lead)
            bpow = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            if not bpow:
                factor = _frac_str(a)
            else:
                factor = bpow if a == 1 else f"{_frac_str(a)}*{bpow}"
            if j:
                factor += f"/{name}" if j == 1 else f"/{name}^{j}"
            return lead < 0, (f"{factor}*{mono}" if mono else factor)
        s = _param_str(c)
        return False, (f"({s})*{mono}" if mono else f"({s})")
    neg = c < 0
    a = -c if neg else c
    if not mono:
        return neg, _frac_str(a)
    return neg, (mono if a == 1 else f"{_frac_str(a)}*{mono}")


def _poly_str(p: MPoly, spaced=True):
    if not p.terms:
        return "0"
    out = []
    for idx, ((i, j), c) in enumerate(p.sorted_terms()):
        neg, body = _coeff_parts(c, _mono(i, j))
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        elif spaced:
            out.append(f" - {body}" if neg else f" + {body}")
        else:
            out.append(f"-{body}" if neg else f"+{body}")
    return "".join(out)


def _is_atomic(p: MPoly):
    """A lone variable power that needs no parentheses before ``^``."""
    if len(p.terms) != 1:
        return False
    (i, j), c = next(iter(p.terms.items()))
    return c == 1 and (i == 0 or j == 0) and i + j == 1


def _ratfunc_str(r: RatFunc, spaced=True):
    num = _poly_str(r.num, spaced)
    if r.den == MPoly.const(1):
        return num
    if len(r.num.terms) != 1:
        num = f"({num})"
    den = _poly_str(r.den, spaced)
    (i, j), c = next(iter(r.den.terms.items()))
    if len(r.den.terms) != 1 or c != 1 or (i and j):
        den = f"({den})"
    return f"{num}/{den}"


def _exp_str(c):
    if isinstance(c, ParamRational):
        return f"({_param_str(c)})"
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


def _factor_str(f: IntegratingFactor, spaced=True):
    parts = []
    if f.r0:
        parts.append(f"exp({_ratfunc_str(f.r0, spaced)})")
    for p, c in f.factors:
        base = _poly_str(p, spaced) if _is_atomic(p) else f"({_poly_str(p, spaced)})"
        parts.append(base if c == 1 else f"{base}^{_exp_str(c)}")
    if not parts:
        return "1"
    return (" * " if spaced else "*").join(parts)


def render(value, style: str = "plain") -> str:
    """Deterministic text for an MPoly, RatFunc, IntegratingFactor or FOODE.

    ``style="plain"`` spaces binary operators; ``style="json"`` is the
    compact form used inside JSON reports.  Both re-parse to the same value.
    """
    if style not in ("plain", "json"):
        raise ValueError(f"unknown style {style!r}")
    spaced = style == "plain"
    if isinstance(value, MPoly):
        return _poly_str(value, spaced)
    if isinstance(value, RatFunc):
        return _ratfunc_str(value, spaced)
    if isinstance(value, IntegratingFactor):
        return _factor_str(value, spaced)
    if isinstance(value, FOODE):
        return render_foode(value, style)
    if isinstance(value, ParamRational):
        return _param_str(value)
    if isinstance(value, (int, Fraction)):
        return _frac_str(value)
    raise TypeError(f"cannot render {type(value).__name__}")


def render_foode(eq: FOODE, style: str = "plain") -> str:
    spaced = style == "plain"
    rhs = _poly_str(eq.m, spaced)
    if eq.n != MPoly.const(1):
        rhs = f"({rhs})/({_poly_str(eq.n, spaced)})"
    return f"dy/dx = {rhs}" if spaced else f"dy/dx={rhs}"
