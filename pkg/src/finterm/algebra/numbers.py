"""Constants: the rational field and algebraic number fields.

``QQ`` wraps :class:`fractions.Fraction`.  A :class:`NumberField` is
``QQ[X]/(m)`` for a monic irreducible ``m``; its elements are
:class:`AlgNumber` coordinate vectors in the power basis.  Fields created
by :func:`adjoin_root` remember the field they extend together with the
image of the old generator, so values from an ancestor field coerce into
the new one.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count


class RationalField:
    """The field of rational numbers, elements are ``Fraction``."""

    depth = 0
    degree = 1
    name = None
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, AlgNumber) and x.field.degree == 1:
            return x.coords[0]
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def contains(self, x):
        return isinstance(x, (int, Fraction))

    def ancestors(self):
        return [self]

    def minpoly_str(self, var="X"):
        return var

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def parse_rational(s):
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    return Fraction(str(s).strip())


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_field_ids = count()


class NumberField:
    """``QQ(gamma)`` with ``gamma`` a root of the monic irreducible ``minpoly``.

    ``minpoly`` is a sequence of rationals, constant term first.
    """

    depth = 0

    def __init__(self, minpoly, name="a", parent=None, parent_image=None):
        mp = [Fraction(c) for c in minpoly]
        while mp and mp[-1] == 0:
            mp.pop()
        if len(mp) < 2:
            raise ValueError("number field minimal polynomial must be nonconstant")
        if mp[-1] != 1:
            mp = [c / mp[-1] for c in mp]
        self.minpoly = tuple(mp)
        self.degree = len(mp) - 1
        self.name = name
        self.id = next(_field_ids)
        self.parent = parent
        self.parent_image = parent_image  # AlgNumber in self
        n = self.degree
        # rows: X^(n+k) reduced to the power basis, k = 0..n-2
        table = []
        row = [-c for c in self.minpoly[:-1]]
        for _ in range(max(n - 1, 0)):
            table.append(tuple(row))
            top = row[-1]
            row = [Fraction(0)] + row[:-1]
            row = [r - top * c for r, c in zip(row, self.minpoly[:-1])]
        self._reduce = table
        self.zero = AlgNumber(self, (Fraction(0),) * n)
        self.one = AlgNumber(self, (Fraction(1),) + (Fraction(0),) * (n - 1))
        if n > 1:
            self.gen = AlgNumber(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (n - 2))
        else:
            self.gen = AlgNumber(self, (-self.minpoly[0],))

    def __repr__(self):
        return f"NumberField({self.minpoly_str()}, name={self.name!r})"

    def minpoly_str(self, var="X"):
        from .poly import Poly
        from ..expr import format_poly

        return format_poly(Poly(self.minpoly, QQ), var)

    def ancestors(self):
        out = [self]
        f = self.parent
        while f is not None:
            out.append(f)
            f = getattr(f, "parent", None)
        return out + [QQ]

    def contains(self, x):
        if isinstance(x, (int, Fraction)):
            return True
        return isinstance(x, AlgNumber) and x.field in self.ancestors()

    def power_sums(self):
        """``p_k = sum gamma_i^k`` over the conjugates, ``k < degree`` (Newton)."""
        if getattr(self, "_psums", None) is None:
            m, n = self.minpoly, self.degree
            p = [Fraction(n)]
            for k in range(1, n):
                acc = k * m[n - k]
                for i in range(1, k):
                    acc += m[n - i] * p[k - i]
                p.append(-acc)
            self._psums = tuple(p)
        return self._psums

    def trace(self, a):
        """Absolute trace down to QQ."""
        a = self.coerce(a)
        return sum((c * p for c, p in zip(a.coords, self.power_sums())), Fraction(0))

    def element(self, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            return self.from_poly_coeffs(coords)
        coords += [Fraction(0)] * (self.degree - len(coords))
        return AlgNumber(self, tuple(coords))

    def from_poly_coeffs(self, coeffs):
        """Element ``sum coeffs[i] * gen**i`` reduced modulo the minimal polynomial."""
        n = self.degree
        c = [Fraction(x) for x in coeffs]
        low = c[:n] + [Fraction(0)] * max(0, n - len(c))
        for k, hc in enumerate(c[n:]):
            if hc:
                row = self._reduce_row(k)
                for i in range(n):
                    low[i] += hc * row[i]
        return AlgNumber(self, tuple(low))

    def _reduce_row(self, k):
        while k >= len(self._reduce):
            row = list(self._reduce[-1]) if self._reduce else [-c for c in self.minpoly[:-1]]
            top = row[-1]
            row = [Fraction(0)] + row[:-1]
            row = [r - top * c for r, c in zip(row, self.minpoly[:-1])]
            self._reduce.append(tuple(row))
        return self._reduce[k]

    def coerce(self, x):
        if isinstance(x, AlgNumber):
            if x.field is self:
                return x
            if self.parent is not None and x.field in self.parent.ancestors():
                y = self.parent.coerce(x)
                return self._embed(y)
            if x.field.degree == 1:
                return self.coerce(x.coords[0])
            raise TypeError(f"{x!r} does not lie in a subfield of {self!r}")
        if isinstance(x, (int, Fraction)):
            return AlgNumber(self, (Fraction(x),) + (Fraction(0),) * (self.degree - 1))
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def _embed(self, y):
        # y lives in self.parent: evaluate its coordinates at the image
        if isinstance(y, Fraction):
            return self.coerce(y)
        acc = self.zero
        for c in reversed(y.coords):
            acc = acc * self.parent_image + c
        return acc


class AlgNumber:
    """Element of a :class:`NumberField` in power-basis coordinates."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords
        self._hash = None

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, AlgNumber):
            if other.field is self.field:
                return self.coords == other.coords
            try:
                return self._pair(other) is not None and self - other == self.field.zero
            except TypeError:
                return False
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coords[1:]):
                self._hash = hash(self.coords[0])
            else:
                self._hash = hash((self.field.id, self.coords))
        return self._hash

    def __repr__(self):
        return f"AlgNumber({self.field.name}: {[format_rational(c) for c in self.coords]})"

    def __str__(self):
        from ..expr import format_element

        return format_element(self)

    def is_rational(self):
        return not any(self.coords[1:])

    def _pair(self, other):
        if isinstance(other, AlgNumber):
            if other.field is self.field:
                return other
            if other.field in self.field.ancestors() or other.field.degree == 1:
                return self.field.coerce(other)
            return None
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._pair(other)
        if o is None:
            return self._promote(other, "__add__")
        return AlgNumber(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgNumber(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._pair(other)
        if o is None:
            return self._promote(other, "__sub__")
        return AlgNumber(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._pair(other)
        if o is None:
            return self._promote(other, "__mul__")
        a, b = self.coords, o.coords
        if not any(b[1:]):
            c = b[0]
            return AlgNumber(self.field, tuple(x * c for x in a))
        if not any(a[1:]):
            c = a[0]
            return AlgNumber(self.field, tuple(c * y for y in b))
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        low = prod[:n]
        for k, hc in enumerate(prod[n:]):
            if hc:
                row = self.field._reduce[k]
                for i in range(n):
                    low[i] += hc * row[i]
        return AlgNumber(self.field, tuple(low))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._pair(other)
        if o is None:
            return self._promote(other, "__truediv__")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
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

    def _promote(self, other, op):
        # other belongs to a field extending ours
        if isinstance(other, AlgNumber) and self.field in other.field.ancestors():
            return getattr(other.field.coerce(self), op)(other)
        return NotImplemented

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in a number field")
        if not any(self.coords[1:]):
            return self.field.coerce(1 / self.coords[0])
        from .poly import Poly, xgcd

        a = Poly(self.coords, QQ)
        m = Poly(self.field.minpoly, QQ)
        g, s, _ = xgcd(a, m)
        if g.degree != 0:
            raise ZeroDivisionError("number field minimal polynomial is reducible")
        return self.field.element(s.coeffs)

    def to_poly(self):
        from .poly import Poly

        return Poly(self.coords, QQ)


def nf_arith(a, b, kind):
    """Exact field arithmetic on two constants of the same ambient field."""
    fa = getattr(a, "field", QQ)
    fb = getattr(b, "field", QQ)
    if fa is not fb and not (fa is QQ or fb is QQ):
        raise TypeError("nf_arith: operands lie in different ambient fields")
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "div":
        if not b:
            raise ZeroDivisionError("nf_arith: division by zero")
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def constant_field_of(*values):
    """The largest constant field among ``values`` (which must form a chain)."""
    best = QQ
    for v in values:
        f = getattr(v, "field", None)
        if isinstance(f, NumberField):
            if best is QQ or best in f.ancestors():
                best = f
            elif f not in best.ancestors():
                raise TypeError("constants from unrelated number fields")
    return best
