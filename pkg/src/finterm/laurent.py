"""Laurent expansions in a tower generator about a point of the level below.

``x`` is an element of ``L(g)`` and the point ``a`` an element of ``L``; the
expansion variable is ``pi = g - a``.  Orders are exact (shift and count
low-order zeros); coefficient lists are truncated.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import FintermError, TruncationError
from .tower import derive

INF = math.inf


def default_truncation():
    try:
        return max(1, int(os.environ.get("FINTERM_MAX_TRUNCATION", "8")))
    except ValueError:
        return 8


@dataclass(frozen=True)
class ExpansionPoint:
    value: object
    name: str | None = None


@dataclass(frozen=True)
class LaurentSeries:
    """``sum_{j=0}^{N} coeffs[j] * pi^(order + j)``."""

    point: object
    order: int
    coeffs: tuple
    truncation: int

    @property
    def leading(self):
        return self.coeffs[0] if self.coeffs else None

    def coefficient(self, e):
        j = e - self.order
        if j < 0:
            return 0
        if j >= len(self.coeffs):
            raise TruncationError(f"coefficient of pi^{e} is beyond the truncation")
        return self.coeffs[j]

    def recombine(self, F):
        """The truncated sum as an element of ``F`` (the field of the generator)."""
        pi = F.gen - F.coerce(_value(self.point))
        acc = F.zero
        for j, c in enumerate(self.coeffs):
            if c:
                acc = acc + F.coerce(c) * pi ** (self.order + j)
        return acc


def _value(a):
    return a.value if isinstance(a, ExpansionPoint) else a


def _point(x, a):
    B = x.field.base
    try:
        return B.coerce(_value(a))
    except TypeError:
        raise FintermError(f"expansion point {a!r} is not in the coefficient field of {x.field.name}") from None


# ---------------------------------------------------------------------------
# power series over a field (lists of coefficients)


def series_div(n, d, k, zero):
    """First ``k`` coefficients of ``n/d`` with ``d[0] != 0``."""
    inv = 1 / d[0]
    out = []
    for j in range(k):
        acc = n[j] if j < len(n) else zero
        for i in range(1, min(j, len(d) - 1) + 1):
            acc = acc - d[i] * out[j - i]
        out.append(acc * inv)
    return out


def series_mul(a, b, k, zero):
    out = []
    for j in range(k):
        acc = zero
        for i in range(max(0, j - len(b) + 1), min(j, len(a) - 1) + 1):
            acc = acc + a[i] * b[j - i]
        out.append(acc)
    return out


def series_sqrt(c, k, s0):
    """First ``k`` coefficients of a square root of ``c`` starting with ``s0`` (``s0^2 = c[0]``)."""
    out = [s0]
    inv = 1 / (2 * s0)
    for j in range(1, k):
        acc = c[j] if j < len(c) else c[0] * 0
        for i in range(1, j):
            acc = acc - out[i] * out[j - i]
        out.append(acc * inv)
    return out


def _poly_series(p, a):
    """``p(a + pi)`` as (low order, coefficients from that order)."""
    q = p.shift(a)
    lo = q.low_order()
    return lo, list(q.coeffs[lo:])


# ---------------------------------------------------------------------------


def ord_at(x, a):
    """Valuation of ``x`` at ``g = a`` (``INF`` for zero)."""
    if not x:
        return INF
    av = _point(x, a)
    return x.num.shift(av).low_order() - x.den.shift(av).low_order()


def expand(x, a, N=None):
    """Laurent series of ``x`` about ``g = a`` with ``N + 1`` coefficients."""
    if N is None:
        N = default_truncation()
    if not x:
        raise FintermError("cannot expand zero")
    av = _point(x, a)
    zero = x.field.base.zero
    on, n = _poly_series(x.num, av)
    od, d = _poly_series(x.den, av)
    coeffs = series_div(n, d, N + 1, zero)
    return LaurentSeries(a, on - od, tuple(coeffs), N)


def derivative_series(x, a, N=None):
    """Series of ``x'`` built termwise from the series of ``x``.

    Uses ``pi' = g' - a'`` expanded about ``a``; for a Riccati generator this
    is ``-R(a) - pi^2 - (2a - r) pi``.  Raises :class:`TruncationError` when
    every coefficient that the truncation determines vanishes.
    """
    if N is None:
        N = default_truncation()
    F = x.field
    if F.deriv_target is not F:
        raise FintermError(f"generator {F.name} has a derivative outside its own field")
    av = _point(x, a)
    zero = F.base.zero
    dpi = F.gen_deriv - F.coerce(derive(av))
    X = expand(x, a, N)
    lam = X.order
    top1 = lam + N  # term sum r_j' pi^j known through this exponent
    terms = {}
    for j, r in enumerate(X.coeffs):
        e = lam + j
        dr = derive(r)
        if dr:
            terms[e] = terms.get(e, zero) + dr
    if dpi:
        P = expand(dpi, a, N + 1)
        p0 = P.order
        top = min(top1, lam + N + p0 - 1)
        for j, r in enumerate(X.coeffs):
            e = lam + j
            if not e or not r:
                continue
            for k, pk in enumerate(P.coeffs):
                ex = e - 1 + p0 + k
                if ex > top:
                    break
                if pk:
                    terms[ex] = terms.get(ex, zero) + e * r * pk
    else:
        top = top1
    start = min(list(terms) + [top + 1])
    for e in range(start, top + 1):
        if terms.get(e):
            coeffs = tuple(terms.get(k, zero) for k in range(e, top + 1))
            return LaurentSeries(a, e, coeffs, top - e)
    raise TruncationError(
        f"order of the derivative is not determined by {N + 1} terms; raise the truncation"
    )


def logderiv_series(x, a, N=None):
    """Series of ``x'/x`` (derivative series divided by the series of ``x``)."""
    if N is None:
        N = default_truncation()
    D = derivative_series(x, a, N)
    X = expand(x, a, N)
    k = min(len(D.coeffs), len(X.coeffs))
    zero = x.field.base.zero
    q = series_div(list(D.coeffs[:k]), list(X.coeffs[:k]), k, zero)
    for j, c in enumerate(q):
        if c:
            return LaurentSeries(a, D.order - X.order + j, tuple(q[j:]), k - 1 - j)
    raise TruncationError("order of the logarithmic derivative is not determined; raise the truncation")


def riccati_value(F, a):
    """``R(a) = a' + a^2 - r a - s`` for a Riccati generator field ``F``."""
    av = F.base.coerce(_value(a))
    # g' = -g^2 + r g + s, so R(a) = a' - (g' evaluated at g = a)
    gd = F.gen_deriv
    val = _eval(gd, av)
    return derive(av) - val


def _eval(e, av):
    n = e.num(av)
    d = e.den(av)
    return n / d
