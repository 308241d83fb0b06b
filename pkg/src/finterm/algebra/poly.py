"""Dense univariate polynomials over an exact coefficient field.

A polynomial is an immutable tuple of coefficients ``(a_0, a_1, ..., a_n)``
with ``a_n != 0``; the zero polynomial is the empty tuple.  Coefficients are
elements of a *domain* object (``QQ``, a ``NumberField``, or one of the
function fields in :mod:`finterm.algebra.fields`) which supplies ``zero``,
``one`` and ``coerce``.  Arithmetic on the coefficients goes through the
ordinary Python operators, so any exact field element type works.

The classical subroutines live here as module functions: gcd and extended
gcd, Yun's squarefree decomposition, resultants (Euclidean and Sylvester),
the polynomial diophantine solver and partial fractions.
"""

from __future__ import annotations

from fractions import Fraction


class Poly:
    """Immutable dense polynomial over ``domain``."""

    __slots__ = ("coeffs", "domain", "_hash")

    def __init__(self, coeffs, domain, coerce=True):
        if coerce:
            coeffs = [domain.coerce(c) for c in coeffs]
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        self.coeffs = tuple(coeffs[:n])
        self.domain = domain
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, c, domain):
        return cls((c,), domain)

    @classmethod
    def monomial(cls, c, n, domain):
        c = domain.coerce(c)
        return cls([domain.zero] * n + [c], domain, coerce=False)

    @classmethod
    def x(cls, domain):
        return cls((domain.zero, domain.one), domain, coerce=False)

    def _new(self, coeffs):
        return Poly(coeffs, self.domain, coerce=False)

    # basic accessors

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero

    def is_zero(self):
        return not self.coeffs

    def is_const(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if self.degree <= 0:
                try:
                    return self[0] == self.domain.coerce(other)
                except TypeError:
                    return NotImplemented
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    # ring operations

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly((other,), self.domain)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] = res[i] + c
        return self._new(res)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = self.domain.coerce(other)
            if not other:
                return self._new(())
            return self._new([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        if len(a) == 1:
            return self._new([a[0] * c for c in b])
        if len(b) == 1:
            return self._new([c * b[0] for c in a])
        zero = self.domain.zero
        res = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                res[i + j] = res[i + j] + ai * bj
        return self._new(res)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self._new((self.domain.one,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other):
        """Euclidean division; ``other`` must be nonzero."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        db = other.degree
        if self.degree < db:
            return self._new(()), self
        inv = self.domain.one / other.lc
        rem = list(self.coeffs)
        q = [self.domain.zero] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv
            q[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] = rem[k - db + j] - c * bc[j]
        return self._new(q), self._new(rem[:db])

    def __divmod__(self, other):
        return self.divmod(self._lift(other))

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exquo(self, other):
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.lc
        if lc == self.domain.one:
            return self
        inv = self.domain.one / lc
        return self._new([c * inv for c in self.coeffs])

    def diff(self):
        """Formal derivative in the polynomial variable."""
        return self._new([c * i for i, c in enumerate(self.coeffs) if i])

    def __call__(self, x):
        """Horner evaluation; ``x`` may live in any ring containing the domain."""
        if not self.coeffs:
            return self.domain.zero * x if isinstance(x, Poly) else self.domain.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """``self(other(X))`` as a polynomial."""
        acc = self._new(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, a):
        """Taylor shift: the polynomial ``self(X + a)``."""
        a = self.domain.coerce(a)
        if not a:
            return self
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + a * c[j + 1]
        return self._new(c)

    def map_coeffs(self, fn, domain):
        return Poly([fn(c) for c in self.coeffs], domain, coerce=False)

    def low_order(self):
        """Index of the lowest nonzero coefficient (``None`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None


# ---------------------------------------------------------------------------
# gcd family


def gcd(a, b):
    """Monic gcd; ``gcd(a, 0) = monic(a)``."""
    if not b:
        return a.monic()
    if a.degree < b.degree:
        a, b = b, a
    if b.degree > 0 and getattr(a.domain, "depth", 0) > 0:
        from .specialize import coprime

        if coprime(a, b):
            return b._new((b.domain.one,))
        if a.domain.depth > 1 or b.degree > 1:
            from .multigcd import multivariate_gcd

            g = multivariate_gcd(a, b)
            if g is not None:
                return g
    b = b.monic()
    while b:
        if b.degree == 0:
            return b._new((b.domain.one,))
        # monic remainders keep nested coefficients small
        a, b = b, a.divmod(b)[1].monic()
    return a


def xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    dom = a.domain
    one = Poly((dom.one,), dom, coerce=False)
    zero = Poly((), dom, coerce=False)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = dom.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def diophantine(a, b, c):
    """Solve ``s*a + t*b = c`` with ``deg s < deg b`` for coprime ``a, b``."""
    g, s, t = xgcd(a, b)
    if g.degree != 0:
        raise ArithmeticError("diophantine: inputs are not coprime")
    s = s * c
    t = t * c
    if b.degree > 0:
        q, s = s.divmod(b)
        t = t + q * a
    return s, t


def squarefree_decomposition(a):
    """Yun's algorithm.

    Returns ``[(f_i, i), ...]`` with monic, pairwise coprime, squarefree
    ``f_i`` and strictly increasing multiplicities, so that
    ``a = lc(a) * prod f_i**i``.  Factors equal to 1 are omitted.
    """
    if not a:
        raise ValueError("squarefree decomposition of the zero polynomial")
    if a.degree == 0:
        return []
    out = []
    da = a.diff()
    g = gcd(a, da)
    b = a.exquo(g)
    c = da.exquo(g)
    d = c - b.diff()
    i = 1
    while b.degree > 0:
        f = gcd(b, d)
        b = b.exquo(f)
        c = d.exquo(f)
        d = c - b.diff()
        if f.degree > 0:
            out.append((f, i))
        i += 1
    return out


def squarefree_part(a):
    if a.degree <= 0:
        return a._new((a.domain.one,))
    return a.exquo(gcd(a, a.diff())).monic()


def resultant(a, b):
    """Resultant via the Euclidean remainder sequence (field coefficients)."""
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    dom = a.domain
    res = dom.one
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.lc ** da
        r = a.divmod(b)[1]
        if not r:
            return dom.zero
        if (da * db) % 2:
            res = -res
        res = res * b.lc ** (da - r.degree)
        a, b = b, r


def sylvester_matrix(a, b):
    m, n = a.degree, b.degree
    zero = a.domain.zero
    size = m + n
    rows = []
    ac = list(reversed(a.coeffs))
    bc = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([zero] * i + ac + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + bc + [zero] * (size - n - 1 - i))
    return rows


def determinant(rows, domain):
    """Determinant by Gaussian elimination over a field."""
    m = [list(r) for r in rows]
    n = len(m)
    det = domain.one
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return domain.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        inv = domain.one / p
        for r in range(col + 1, n):
            f = m[r][col]
            if not f:
                continue
            f = f * inv
            row, prow = m[r], m[col]
            for k in range(col, n):
                row[k] = row[k] - f * prow[k]
    return det


def sylvester_resultant(a, b):
    """Resultant as the Sylvester determinant (independent of :func:`resultant`)."""
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    if a.degree == 0 and b.degree == 0:
        return a.domain.one
    return determinant(sylvester_matrix(a, b), a.domain)


def partial_fractions(num, den, factors):
    """Split ``num/den`` over pairwise coprime ``factors``.

    ``den`` must equal a constant times a product of powers of the factors.
    Returns ``(poly_part, terms)`` where ``terms`` maps ``(i, j)`` to the
    numerator over ``factors[i]**j`` with ``deg < deg factors[i]``.
    """
    dom = num.domain
    factors = [f.monic() for f in factors]
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if gcd(factors[i], factors[j]).degree > 0:
                raise ValueError("partial_fractions: factor list is not coprime")
    rest = den
    mults = []
    for f in factors:
        k = 0
        while rest.degree > 0:
            q, r = rest.divmod(f)
            if r:
                break
            rest, k = q, k + 1
        mults.append(k)
    if rest.degree != 0:
        raise ValueError("partial_fractions: denominator has factors outside the list")
    num = num * (dom.one / rest.lc)
    poly_part, num = num.divmod(den.monic())
    terms = {}
    powers = [f ** k for f, k in zip(factors, mults)]
    remaining = num
    for idx, (f, k) in enumerate(zip(factors, mults)):
        if k == 0:
            continue
        others = Poly((dom.one,), dom, coerce=False)
        for jdx, p in enumerate(powers):
            if jdx > idx:
                others = others * p
        if others.degree > 0:
            # mine*others + rest*f^k = remaining with deg mine < deg f^k
            mine, remaining = diophantine(others, f ** k, remaining)
        else:
            mine = remaining
        # expand in base f
        q = mine
        for j in range(k, 0, -1):
            q, r = q.divmod(f)
            if r:
                terms[(idx, j)] = r
        if q:
            raise ArithmeticError("partial_fractions: numerator degree overflow")
    return poly_part, terms


def rational_content_primitive(p):
    """For a polynomial over QQ, return ``(content, integer primitive part)``."""
    import math

    if not p:
        return Fraction(0), p
    dens = 1
    for c in p.coeffs:
        dens = dens * c.denominator // math.gcd(dens, c.denominator)
    ints = [int(c * dens) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, dens), [c // g for c in ints]
