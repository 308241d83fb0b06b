"""Text form of field elements.

Grammar (no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' ['-'] integer)?
    base   := integer | ident | '(' expr ')'

Rationals are written as quotients of integers.  Identifiers resolve
through a namespace mapping names to field elements (the tower generators
and, when present, the generator of the constant field).  The printer
emits strings this parser reads back to the identical canonical element.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(src):
    out = []
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex) if m.lastindex else pos
        if num is not None:
            out.append(("num", int(num), start))
        elif ident is not None:
            out.append(("id", ident, start))
        elif sym is not None:
            if sym == "'":
                raise ParseError("prime notation is not supported; use e.g. 'thetap' for theta'", start)
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r}", start)
            out.append(("op", sym, start))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    def __init__(self, src, namespace, one):
        self.toks = tokenize(src)
        self.i = 0
        self.ns = namespace
        self.one = one

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, sym):
        t = self.take()
        if t[0] != "op" or t[1] != sym:
            raise ParseError(f"expected {sym!r}", t[2])
        return t

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return v

    def expr(self):
        v = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                r = self.term()
                v = v + r if t[1] == "+" else v - r
            else:
                return v

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                r = self.factor()
                if t[1] == "*":
                    v = v * r
                else:
                    if not r:
                        raise ParseError("division by zero", t[2])
                    v = v / r
            else:
                return v

    def factor(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return -self.factor()
        v = self.base()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            sign = 1
            t2 = self.peek()
            if t2[0] == "op" and t2[1] == "-":
                self.take()
                sign = -1
            t3 = self.take()
            if t3[0] != "num":
                raise ParseError("exponent must be an integer", t3[2])
            k = sign * t3[1]
            if k < 0 and not v:
                raise ParseError("division by zero", t3[2])
            v = v ** k
        return v

    def base(self):
        t = self.take()
        if t[0] == "num":
            return Fraction(t[1]) if self.one is None else self.one * Fraction(t[1])
        if t[0] == "id":
            if t[1] not in self.ns:
                raise ParseError(f"unknown generator {t[1]!r}", t[2], unknown=t[1])
            return self.ns[t[1]]
        if t[0] == "op" and t[1] == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t[0] == "end":
            raise ParseError("unexpected end of input", t[2])
        raise ParseError(f"unexpected token {t[1]!r}", t[2])


def parse_expression(src, namespace, one=None):
    """Parse ``src`` with identifiers from ``namespace``; numbers stay rational."""
    if not isinstance(src, str):
        src = str(src)
    if not src.strip():
        raise ParseError("empty expression", 0)
    return _Parser(src, namespace, one).parse()


# ---------------------------------------------------------------------------
# printing

# precedence of a printed string: 0 sum, 1 product, 2 atom
_SUM, _PROD, _ATOM = 0, 1, 2


def _rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        s = str(q.numerator)
        return s, _ATOM if q >= 0 else _SUM
    s = f"{q.numerator}/{q.denominator}"
    return s, _PROD if q >= 0 else _SUM


def _wrap(s, prec, need):
    return f"({s})" if prec < need else s


def _poly_terms(coeffs, var, fmt):
    """Yield (sign, body) pairs for ``sum c_i var^i``, highest degree first."""
    out = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        neg = False
        if isinstance(c, (int, Fraction)):
            if c < 0:
                neg, c = True, -c
            cs, cp = _rational(c)
        else:
            cs, cp = fmt(c)
            if cp == _SUM and cs.startswith("-") and not _has_top_level_sum(cs[1:]):
                neg, cs, cp = True, cs[1:], _PROD
        if not mon:
            body, bp = cs, cp
        elif cs == "1":
            body, bp = mon, _ATOM if i == 1 else _PROD
        else:
            body, bp = f"{_wrap(cs, cp, _PROD)}*{mon}", _PROD
        out.append((neg, body, bp))
    return out


def _has_top_level_sum(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0:
            return True
    return False


def _join(terms):
    if not terms:
        return "0", _ATOM
    parts = []
    for k, (neg, body, bp) in enumerate(terms):
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    s = "".join(parts)
    if len(terms) == 1:
        neg, body, bp = terms[0]
        return s, _SUM if neg else bp
    return s, _SUM


def _fmt(e):
    from .algebra.fields import AlgElement, RatFunc
    from .algebra.numbers import AlgNumber

    if isinstance(e, (int, Fraction)):
        return _rational(e)
    if isinstance(e, AlgNumber):
        return _join(_poly_terms(e.coords, e.field.name, _fmt))
    if isinstance(e, AlgElement):
        return _join(_poly_terms(e.poly.coeffs, e.field.name, _fmt))
    if isinstance(e, RatFunc):
        terms = _poly_terms(e.num.coeffs, e.field.name, _fmt)
        if e.den.degree == 0:
            return _join(terms)
        den = _join(_poly_terms(e.den.coeffs, e.field.name, _fmt))
        sign = ""
        if len(terms) == 1 and terms[0][0]:
            sign = "-"
            terms = [(False,) + terms[0][1:]]
        num = _join(terms)
        s = f"{sign}{_wrap(num[0], num[1], _ATOM)}/{_wrap(den[0], den[1], _ATOM)}"
        return s, _SUM if sign else _PROD
    raise TypeError(f"cannot format {e!r}")


def format_element(e):
    return _fmt(e)[0]


def format_poly(p, var):
    return _join(_poly_terms(p.coeffs, var, _fmt))[0]
