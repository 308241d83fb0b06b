"""Rational function fields and simple algebraic extensions over a field.

Both kinds nest: the coefficient field of a :class:`RationalFunctionField`
or an :class:`AlgebraicExtension` may itself be any field in this module
or a constant field from :mod:`finterm.algebra.numbers`.  Every field has a
``depth`` (constants are 0) and a ``base``; an element of a shallower field
coerces upward into a deeper one through the chain of bases.

Canonical forms make equality literal:

* ``RatFunc``: ``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic;
* ``AlgElement``: a polynomial of degree ``< d`` reduced modulo the monic
  minimal polynomial.

Fields also carry the derivation data of the tower they belong to
(``gen_deriv``, ``deriv_target``, ``kind``); see :mod:`finterm.tower`.
"""

from __future__ import annotations

from fractions import Fraction

from .numbers import QQ, AlgNumber
from .poly import Poly, gcd, xgcd


def depth_of(x):
    f = getattr(x, "field", None)
    return f.depth if f is not None else 0


class _FieldBase:
    base = None
    depth = 0
    name = "?"
    kind = None
    gen_deriv = None
    deriv_target = None

    def chain(self):
        """Fields from ``self`` down to the constants."""
        out = []
        f = self
        while f is not None:
            out.append(f)
            f = getattr(f, "base", None)
        return out

    def constants(self):
        return self.chain()[-1]

    def contains_field(self, other):
        return other in self.chain()

    def check_element(self, x):
        d = depth_of(x)
        if d > self.depth or (d == self.depth and getattr(x, "field", None) is not self):
            raise TypeError(f"element of {getattr(x, 'field', None)!r} is not in {self!r}")


class RationalFunctionField(_FieldBase):
    """``base(t)`` for a transcendental generator named ``name``."""

    def __init__(self, base, name):
        self.base = base
        self.name = name
        self.depth = base.depth + 1
        self.zero = RatFunc(self, Poly((), base, coerce=False), Poly((base.one,), base, coerce=False))
        self.one = RatFunc(self, Poly((base.one,), base, coerce=False), self.zero.den)
        self.gen = RatFunc(self, Poly((base.zero, base.one), base, coerce=False), self.zero.den)
        self.deriv_target = self

    def __repr__(self):
        return f"{self.base!r}({self.name})"

    def coerce(self, x):
        if isinstance(x, RatFunc) and x.field is self:
            return x
        if isinstance(x, Poly):
            return self.frac(x, Poly((self.base.one,), self.base, coerce=False))
        d = depth_of(x)
        if d >= self.depth:
            raise TypeError(f"cannot coerce {x!r} into {self!r}")
        c = self.base.coerce(x)
        if not c:
            return self.zero
        return RatFunc(self, Poly((c,), self.base, coerce=False), self.zero.den)

    def poly(self, coeffs):
        return Poly(coeffs, self.base)

    def frac(self, num, den):
        """Canonical ``num/den`` for polynomials over ``base``."""
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return self.zero
        if den.degree > 0 and num.degree >= 0:
            g = gcd(num, den)
            if g.degree > 0:
                num = num.exquo(g)
                den = den.exquo(g)
        lc = den.lc
        if lc != self.base.one:
            inv = self.base.one / lc
            num = num * inv
            den = den * inv
        return RatFunc(self, num, den)

    def from_poly(self, p):
        return RatFunc(self, p, self.zero.den) if p else self.zero

    def normal(self, num, den):
        """``num/den`` for coprime ``num``, ``den``: only the leading coefficient is fixed."""
        if not num:
            return self.zero
        lc = den.lc
        if lc != self.base.one:
            inv = self.base.one / lc
            num = num * inv
            den = den * inv
        return RatFunc(self, num, den)


class RatFunc:
    """Canonical element ``num/den`` of a :class:`RationalFunctionField`."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # predicates

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return self.den.degree == 0

    def is_const(self):
        """True when the element lies in the coefficient field."""
        return self.den.degree == 0 and self.num.degree <= 0

    def const_value(self):
        """The element as a member of the coefficient field (requires ``is_const``)."""
        return self.num[0]

    def __eq__(self, other):
        if isinstance(other, RatFunc) and other.field is self.field:
            return self.num == other.num and self.den == other.den
        d = depth_of(other)
        if d < self.field.depth or isinstance(other, (int, Fraction)):
            if not self.is_const():
                return False
            return self.const_value() == other
        if isinstance(other, RatFunc) or d > self.field.depth:
            return NotImplemented
        return False

    def __hash__(self):
        if self._hash is None:
            if self.is_const():
                self._hash = hash(self.const_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        from ..expr import format_element

        return format_element(self)

    # arithmetic

    def _other(self, other):
        if isinstance(other, RatFunc) and other.field is self.field:
            return other
        d = depth_of(other)
        if d < self.field.depth:
            return self.field.coerce(other)
        if d == self.field.depth:
            raise TypeError(f"incompatible fields {self.field!r} and {other.field!r}")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(self, other, '__add__')
        F = self.field
        if self.den.degree == 0 and o.den.degree == 0:
            num = self.num + o.num
            return RatFunc(F, num, F.zero.den) if num else F.zero
        if self.den == o.den:
            return F.frac(self.num + o.num, self.den)
        g = gcd(self.den, o.den)
        if g.degree > 0:
            # only the shared part g of the denominators can cancel
            a = o.den.exquo(g)
            b = self.den.exquo(g)
            num = self.num * a + o.num * b
            if not num:
                return F.zero
            h = gcd(num, g)
            if h.degree > 0:
                num = num.exquo(h)
                g = g.exquo(h)
            return F.normal(num, a * b * g)
        return F.normal(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(self, other, '__sub__')
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(self, other, '__mul__')
        F = self.field
        if not self.num or not o.num:
            return F.zero
        if self.den.degree == 0 and o.den.degree == 0:
            return RatFunc(F, self.num * o.num, F.zero.den)
        if o.is_const():
            return RatFunc(F, self.num * o.num[0], self.den)
        if self.is_const():
            return RatFunc(F, o.num * self.num[0], o.den)
        g1 = gcd(self.num, o.den)
        g2 = gcd(o.num, self.den)
        n1 = self.num.exquo(g1) if g1.degree > 0 else self.num
        d2 = o.den.exquo(g1) if g1.degree > 0 else o.den
        n2 = o.num.exquo(g2) if g2.degree > 0 else o.num
        d1 = self.den.exquo(g2) if g2.degree > 0 else self.den
        return RatFunc(F, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        F = self.field
        lc = self.num.lc
        inv = F.base.one / lc
        return RatFunc(F, self.den * inv, self.num * inv)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(self, other, '__truediv__')
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(other, self, '__truediv__')
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        F = self.field
        if n == 0:
            return F.one
        return RatFunc(F, self.num ** n, self.den ** n)


class AlgebraicExtension(_FieldBase):
    """``base[theta]/(minpoly)`` for a monic irreducible ``minpoly`` of degree >= 2."""

    def __init__(self, base, name, minpoly):
        if minpoly.domain is not base:
            minpoly = Poly(minpoly.coeffs, base)
        if minpoly.degree < 2:
            raise ValueError("algebraic extension needs a minimal polynomial of degree >= 2")
        self.base = base
        self.name = name
        self.depth = base.depth + 1
        self.minpoly = minpoly.monic()
        self.degree = self.minpoly.degree
        one = Poly((base.one,), base, coerce=False)
        self.zero = AlgElement(self, Poly((), base, coerce=False))
        self.one = AlgElement(self, one)
        self.gen = AlgElement(self, Poly((base.zero, base.one), base, coerce=False))
        self.deriv_target = self

    def __repr__(self):
        return f"{self.base!r}[{self.name}]"

    def coerce(self, x):
        if isinstance(x, AlgElement) and x.field is self:
            return x
        if isinstance(x, Poly):
            return self.from_poly(x)
        d = depth_of(x)
        if d >= self.depth:
            raise TypeError(f"cannot coerce {x!r} into {self!r}")
        c = self.base.coerce(x)
        if not c:
            return self.zero
        return AlgElement(self, Poly((c,), self.base, coerce=False))

    def from_poly(self, p):
        if p.domain is not self.base:
            p = Poly(p.coeffs, self.base)
        if p.degree >= self.degree:
            p = p.divmod(self.minpoly)[1]
        return AlgElement(self, p)

    def mult_matrix(self, e):
        """Matrix of multiplication by ``e`` in the basis ``1, theta, ...``."""
        d = self.degree
        cols = []
        b = e.poly
        for i in range(d):
            col = (b * Poly.monomial(self.base.one, i, self.base)).divmod(self.minpoly)[1]
            cols.append([col[j] for j in range(d)])
        return [[cols[j][i] for j in range(d)] for i in range(d)]


class AlgElement:
    """Canonical element of an :class:`AlgebraicExtension`."""

    __slots__ = ("field", "poly", "_hash")

    def __init__(self, field, poly):
        self.field = field
        self.poly = poly
        self._hash = None

    def __bool__(self):
        return bool(self.poly)

    def is_const(self):
        return self.poly.degree <= 0

    def const_value(self):
        return self.poly[0]

    def __eq__(self, other):
        if isinstance(other, AlgElement) and other.field is self.field:
            return self.poly == other.poly
        d = depth_of(other)
        if d < self.field.depth or isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        if d > self.field.depth:
            return NotImplemented
        return False

    def __hash__(self):
        if self._hash is None:
            if self.is_const():
                self._hash = hash(self.const_value())
            else:
                self._hash = hash(self.poly)
        return self._hash

    def __repr__(self):
        return f"AlgElement({self})"

    def __str__(self):
        from ..expr import format_element

        return format_element(self)

    def _other(self, other):
        if isinstance(other, AlgElement) and other.field is self.field:
            return other
        d = depth_of(other)
        if d < self.field.depth:
            return self.field.coerce(other)
        if d == self.field.depth:
            raise TypeError(f"incompatible fields {self.field!r} and {other.field!r}")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(self, other, '__add__')
        return AlgElement(self.field, self.poly + o.poly)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.field, -self.poly)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(self, other, '__sub__')
        return AlgElement(self.field, self.poly - o.poly)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(self, other, '__mul__')
        p = self.poly * o.poly
        if p.degree >= self.field.degree:
            p = p.divmod(self.field.minpoly)[1]
        return AlgElement(self.field, p)

    __rmul__ = __mul__

    def inverse(self):
        if not self.poly:
            raise ZeroDivisionError("inverse of zero")
        if self.poly.degree == 0:
            return AlgElement(self.field, Poly((self.field.base.one / self.poly[0],), self.field.base, coerce=False))
        if self.field.degree == 2:
            # (a + b t)^-1 = conj / norm with conj = (a - b p) - b t for t^2 + p t + q
            K = self.field.base
            q, p = self.field.minpoly[0], self.field.minpoly[1]
            a, b = self.poly[0], self.poly[1]
            n = a * a - a * b * p + b * b * q
            if not n:
                raise ZeroDivisionError(
                    f"minimal polynomial of {self.field.name} is reducible (zero divisor found)"
                )
            inv = K.one / n
            return AlgElement(self.field, Poly(((a - b * p) * inv, -b * inv), K))
        g, s, _ = xgcd(self.poly, self.field.minpoly)
        if g.degree != 0:
            raise ZeroDivisionError(
                f"minimal polynomial of {self.field.name} is reducible (zero divisor found)"
            )
        return AlgElement(self.field, s)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(self, other, '__truediv__')
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return _deeper(other, self, '__truediv__')
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


def _deeper(a, b, op):
    """``a op b`` when ``b`` lives in a field above ``a``'s (same Python type)."""
    F = b.field
    return getattr(F.coerce(a), op)(b)


def lower(x):
    """Strip one level when ``x`` lies in its field's coefficient field."""
    if isinstance(x, (RatFunc, AlgElement)) and x.is_const():
        return x.const_value()
    return x


def is_constant_value(x):
    return isinstance(x, (int, Fraction, AlgNumber))


__all__ = [
    "QQ",
    "RationalFunctionField",
    "RatFunc",
    "AlgebraicExtension",
    "AlgElement",
    "depth_of",
    "lower",
    "map_constants",
]


def map_constants(e, F):
    """Re-express a constant or an element of ``K(x)`` in ``F = K'(x)`` for ``K' ⊇ K``."""
    K = F.base
    if not isinstance(e, RatFunc):
        return K.coerce(e) if depth_of(e) == 0 else F.coerce(e)
    if e.field is F:
        return e
    num = Poly([K.coerce(c) for c in e.num.coeffs], K, coerce=False)
    den = Poly([K.coerce(c) for c in e.den.coeffs], K, coerce=False)
    return RatFunc(F, num, den)
