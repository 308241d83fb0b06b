"""Gcds over nested rational function fields ``QQ(x)(t1)...(tk)[T]``.

Euclid over such a field drowns in coefficient growth.  Clearing
denominators turns the problem into a multivariate gcd over QQ, which
sympy's sparse polynomial rings handle well; the gcd over the field is that
polynomial gcd made monic in ``T``.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .fields import RationalFunctionField
from .numbers import QQ


def _chain(D):
    """Fields from ``D`` down to depth one, or ``None`` if one is not transcendental."""
    out = []
    while D is not QQ:
        if not isinstance(D, RationalFunctionField):
            return None
        out.append(D)
        D = D.base
    return out


def _ring(D, chain):
    cached = getattr(D, "_mgcd_ring", None)
    if cached is None:
        names = ["T"] + [f"v{k}" for k in range(len(chain))]
        R, *gens = sympy.ring(names, sympy.QQ)
        cached = (R, gens)
        D._mgcd_ring = cached
    return cached


def _to_pair(e, F, depth_var, R):
    """Element of ``F`` as ``(numerator, denominator)`` polynomials; ``depth_var[d]`` is the variable of depth ``d``."""
    if F is QQ:
        q = Fraction(e)
        return R(sympy.QQ(q.numerator, q.denominator)), R.one
    g = depth_var[F.depth]
    nn, nd = _poly_pair(e.num, F.base, g, depth_var, R)
    dn, dd = _poly_pair(e.den, F.base, g, depth_var, R)
    return nn * dd, nd * dn


def _poly_pair(p, B, g, depth_var, R):
    pairs = [_to_pair(c, B, depth_var, R) for c in p.coeffs]
    L = R.one
    for _, d in pairs:
        if d != 1 and d != L:
            L = L.lcm(d)
    acc = R.zero
    for n, d in reversed(pairs):
        acc = acc * g + (n if d == L else n * L.exquo(d))
    return acc, L


def _from_terms(terms, F, pos):
    """``{exponents: coeff}`` (exponents indexed by ring position) to an element of ``F``."""
    from .poly import Poly

    if F is QQ:
        total = Fraction(0)
        for c in terms.values():
            total += Fraction(int(c.numerator), int(c.denominator))
        return total
    k = pos[F.depth]
    by = {}
    for m, c in terms.items():
        by.setdefault(m[k], {})[m] = c
    top = max(by)
    coeffs = [_from_terms(by[j], F.base, pos) if j in by else F.base.zero for j in range(top + 1)]
    return F.from_poly(Poly(coeffs, F.base))


def multivariate_gcd(a, b):
    """Monic gcd of polynomials over a purely transcendental tower, or ``None`` if not applicable."""
    from .poly import Poly

    D = a.domain
    chain = _chain(D)
    if not chain:
        return None
    R, gens = _ring(D, chain)
    T = gens[0]
    depth_var = {F.depth: gens[i + 1] for i, F in enumerate(chain)}
    pos = {F.depth: i + 1 for i, F in enumerate(chain)}
    # denominators are free of T, so they only add content that monic() removes
    na = _poly_pair(a, D, T, depth_var, R)[0]
    nb = _poly_pair(b, D, T, depth_var, R)[0]
    g = na.gcd(nb)
    by = {}
    for m, c in g.terms():
        by.setdefault(m[0], {})[m] = c
    top = max(by)
    coeffs = [_from_terms(by[j], D, pos) if j in by else D.zero for j in range(top + 1)]
    return Poly(coeffs, D).monic()
