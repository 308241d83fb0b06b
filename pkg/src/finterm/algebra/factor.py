"""Factorization over number fields and on-demand root adjunction.

Factorization over QQ is delegated to sympy.  Over ``QQ(gamma)`` we use
Trager's norm method: shift ``h(X) -> h(X - s*gamma)`` until the norm
``Res_Y(m(Y), h(X - sY))`` is squarefree, factor the norm over QQ and pull
the factors back with gcds over ``QQ(gamma)``.  The same shift yields the
primitive element ``beta + s*gamma`` used when a root ``beta`` is adjoined.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy

from .fields import RationalFunctionField
from .numbers import QQ, AlgNumber, NumberField
from .poly import Poly, gcd, rational_content_primitive, resultant, squarefree_part

_X = sympy.Symbol("X")


def _to_sympy(p):
    _, ints = rational_content_primitive(p)
    return sympy.Poly(list(reversed(ints)), _X, domain="ZZ")


def _from_sympy(sp):
    coeffs = [Fraction(int(c)) for c in reversed(sp.all_coeffs())]
    return Poly(coeffs, QQ).monic()


def factor_rational(p):
    """Monic irreducible factors over QQ with multiplicities."""
    if p.degree <= 0:
        return []
    _, facs = sympy.factor_list(_to_sympy(p))
    out = [(_from_sympy(f), k) for f, k in facs if f.degree() > 0]
    out.sort(key=lambda fk: _sort_key(fk[0]))
    return out


def _coeff_key(c):
    if isinstance(c, AlgNumber):
        return tuple(c.coords)
    return (Fraction(c),)


def _sort_key(p):
    return (p.degree, tuple(_coeff_key(c) for c in reversed(p.coeffs)))


def _lift_coords(p, F):
    """``h(X)`` over ``QQ(gamma)`` as a polynomial in ``Y`` over ``QQ(X)``."""
    QX = RationalFunctionField(QQ, "X")
    n = F.degree
    ycoeffs = []
    for k in range(n):
        xs = [c.coords[k] if isinstance(c, AlgNumber) else (Fraction(c) if k == 0 else Fraction(0)) for c in p.coeffs]
        ycoeffs.append(QX.from_poly(Poly(xs, QQ)))
    return QX, Poly(ycoeffs, QX, coerce=False)


def norm_poly(p, F):
    """``N(X) = Res_Y(m(Y), p(X)|_{gamma=Y})`` for ``p`` over ``F = QQ(gamma)``."""
    QX, H = _lift_coords(p, F)
    m = Poly([QX.coerce(c) for c in F.minpoly], QX, coerce=False)
    r = resultant(m, H)
    if r.den.degree != 0:
        raise ArithmeticError("norm is not a polynomial")
    return r.num * (Fraction(1) / r.den[0])


def _shift_candidates():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _squarefree_shift(h, F):
    for s in _shift_candidates():
        hs = h.shift(F.gen * (-s)) if s else h
        N = norm_poly(hs, F)
        if gcd(N, N.diff()).degree == 0:
            return s, hs, N
    raise AssertionError("unreachable")


def factor_over(p, F=None):
    """Monic irreducible factors of ``p`` over ``F`` (``QQ`` or a NumberField)."""
    F = F or p.domain
    if p.degree <= 0:
        return []
    if F is QQ:
        return factor_rational(p)
    from .poly import squarefree_decomposition

    out = []
    for sqf, mult in squarefree_decomposition(p):
        for f in _factor_squarefree(sqf, F):
            out.append((f, mult))
    out.sort(key=lambda fk: _sort_key(fk[0]))
    return out


def _factor_squarefree(h, F):
    h = h.monic()
    if h.degree == 1:
        return [h]
    s, hs, N = _squarefree_shift(h, F)
    facs = factor_rational(N)
    if len(facs) == 1:
        return [h]
    out = []
    for Ni, _ in facs:
        NiF = Poly([F.coerce(c) for c in Ni.coeffs], F, coerce=False)
        g = gcd(hs, NiF)
        if g.degree > 0:
            out.append(g.shift(F.gen * s) if s else g)
    return [g.monic() for g in out]


def _squarefree_integer_part(n):
    """``n = s^2 * m`` with ``m`` squarefree; returns ``(s, m)``."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    s, m = 1, sign
    for pr, e in sympy.factorint(abs(n)).items():
        s *= pr ** (e // 2)
        if e % 2:
            m *= pr
    return s, m


def _sqrt_name(m):
    if m == -1:
        return "i"
    return f"sqrt{m}" if m > 0 else f"sqrtm{-m}"


def adjoin_root(minpoly, name=None):
    """Return ``(field, root)`` with ``minpoly(root) = 0``.

    ``minpoly`` is a polynomial over the current constants (``QQ`` or a
    NumberField).  Its irreducible factor of lowest degree (ties broken
    lexicographically on coefficients) supplies the root; degree one needs
    no new field.  Quadratics over QQ are presented as ``QQ(sqrt(m))`` for
    squarefree integer ``m``.
    """
    F = minpoly.domain
    if minpoly.degree < 1:
        raise ValueError("adjoin_root: minimal polynomial must be nonconstant")
    h = factor_over(squarefree_part(minpoly), F)[0][0]
    if h.degree == 1:
        return F, -h[0]
    if F is QQ:
        if h.degree == 2:
            b, c = h[1], h[0]
            disc = b * b - 4 * c
            p, q = disc.numerator, disc.denominator
            sq, m = _squarefree_integer_part(p * q)
            K = NumberField([-m, 0, 1], name or _sqrt_name(m))
            root = K.element([-b / 2, Fraction(sq, 2 * q)])
            return K, root
        K = NumberField(h.coeffs, name or "a")
        return K, K.gen
    s, _, N = _squarefree_shift(h, F)
    K = NumberField(N.coeffs, name or _fresh_name(F))
    delta = K.gen
    # gamma in K: the common root of m(Y) and h(delta - s*Y)|_{gamma=Y}
    Y = Poly.x(K)
    lin = Poly((delta,), K, coerce=False) - Y * s
    acc = Poly((), K, coerce=False)
    for c in reversed(h.coeffs):
        cy = Poly([K.coerce(v) for v in (c.coords if isinstance(c, AlgNumber) else (c,))], K, coerce=False)
        acc = acc * lin + cy
    mK = Poly([K.coerce(c) for c in F.minpoly], K, coerce=False)
    g = gcd(mK, acc)
    if g.degree != 1:
        raise ArithmeticError("primitive element construction failed")
    gamma_K = -g[0]
    K.parent = F
    K.parent_image = gamma_K
    root = delta - gamma_K * s
    return K, root


def _fresh_name(F):
    names = {getattr(f, "name", None) for f in F.ancestors()}
    for cand in ("a", "b", "c", "d", "e"):
        if cand not in names:
            return cand
    k = 1
    while f"a{k}" in names:
        k += 1
    return f"a{k}"


def map_poly(p, K):
    return Poly([K.coerce(c) for c in p.coeffs], K, coerce=False)


def split(p, F=None):
    """Extend the constants until ``p`` splits; returns ``(field, roots)``.

    Roots are distinct and listed in a deterministic order.
    """
    F = F or p.domain
    p = squarefree_part(p)
    while True:
        pk = map_poly(p, F) if p.domain is not F else p
        facs = factor_over(pk, F)
        nonlinear = [f for f, _ in facs if f.degree > 1]
        if not nonlinear:
            return F, [-f[0] for f, _ in facs]
        F, _ = adjoin_root(nonlinear[0])
        p = pk


def rational_roots(p):
    """Roots of ``p`` in its coefficient field (no adjunction)."""
    if p.degree <= 0:
        return []
    return [-f[0] for f, _ in factor_over(p, p.domain) if f.degree == 1]


def is_square_rational(q):
    q = Fraction(q)
    if q < 0:
        return False
    a, b = q.numerator, q.denominator
    return math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b
