"""Coprimality certificates by specialization.

Euclid's algorithm over a nested function field such as ``Q(x)(alpha)``
suffers badly from coefficient swell, and most of the gcds asked for by
canonical reduction are trivial.  A ring homomorphism ``phi`` from the
coefficients into a number field (send every transcendental generator to a
fixed rational, every algebraic one to a root of its specialized minimal
polynomial) can only increase the degree of a gcd as long as the leading
coefficients survive.  So ``deg gcd(phi a, phi b) = 0`` proves ``a`` and ``b``
coprime; anything else is inconclusive and the caller runs Euclid.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .numbers import QQ
from .poly import Poly


class _Pole(Exception):
    pass


_FAILED = object()


def _shadow(F):
    """``(S, values)`` for the field ``F``, cached on the field; ``None`` if unusable."""
    cached = getattr(F, "_shadow", None)
    if cached is not None:
        return None if cached is _FAILED else cached
    try:
        out = _build(F)
    except (_Pole, ZeroDivisionError, ArithmeticError, TypeError, ValueError):
        out = None
    F._shadow = _FAILED if out is None else out
    return out


def _build(F):
    from .factor import adjoin_root
    from .fields import AlgebraicExtension

    if F.depth == 0:
        return F, {}
    sub = _shadow(F.base)
    if sub is None:
        return None
    S, vals = sub
    vals = dict(vals)
    if isinstance(F, AlgebraicExtension):
        m = Poly([_eval(c, S, vals) for c in F.minpoly.coeffs], S)
        K, root = adjoin_root(m)
        if K is not S:
            vals = {k: K.coerce(v) for k, v in vals.items()}
            S = K
        vals[id(F)] = root
    else:
        rng = random.Random(f"{F.name}:{F.depth}")
        vals[id(F)] = S.coerce(Fraction(rng.randint(100, 999), rng.randint(7, 97)))
    return S, vals


def _horner(p, v, S, vals):
    acc = S.zero
    for c in reversed(p.coeffs):
        acc = acc * v + _eval(c, S, vals)
    return acc


def _eval(e, S, vals):
    f = getattr(e, "field", None)
    if f is None or f.depth == 0:
        return S.coerce(e)
    v = vals[id(f)]
    if hasattr(e, "den"):
        d = _horner(e.den, v, S, vals)
        if not d:
            raise _Pole()
        return _horner(e.num, v, S, vals) / d
    return _horner(e.poly, v, S, vals)


def coprime(a, b):
    """True only when ``a`` and ``b`` are certainly coprime (no false positives)."""
    D = a.domain
    sh = _shadow(D)
    if sh is None:
        return False
    S, vals = sh
    try:
        pa = Poly([_eval(c, S, vals) for c in a.coeffs], S)
        pb = Poly([_eval(c, S, vals) for c in b.coeffs], S)
    except (_Pole, ZeroDivisionError, KeyError):
        return False
    if pa.degree != a.degree or pb.degree != b.degree:
        return False
    from .poly import gcd

    return gcd(pa, pb).degree == 0
