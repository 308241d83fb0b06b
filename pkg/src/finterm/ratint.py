"""Integration of rational functions over ``C(x)``.

Hermite reduction (linear version) removes the non-squarefree part of the
denominator; the Rothstein-Trager resultant ``R(z) = res_x(D, A - z D')``
gives the logarithmic part, one term ``(c, gcd(D, A - c D'))`` for each
root ``c`` of ``R``.  Roots outside the current constants are adjoined.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra.factor import adjoin_root, factor_over, map_poly, split
from .algebra.fields import RationalFunctionField, map_constants
from .algebra.numbers import QQ
from .algebra.poly import Poly, diophantine, gcd, resultant, squarefree_decomposition


def hermite_reduce(f):
    """``f = g' + h`` with ``den(h)`` squarefree; the polynomial part stays in ``h``."""
    F = f.field
    K = F.base
    P, A = f.num.divmod(f.den)
    D = f.den
    g = F.zero
    Dm = gcd(D, D.diff())
    Ds = D.exquo(Dm)
    while Dm.degree > 0:
        D2 = gcd(Dm, Dm.diff())
        Dms = Dm.exquo(D2)
        a = -(Ds * Dm.diff()).exquo(Dm)
        B, C = diophantine(a, Dms, A)
        A = C - B.diff() * Ds.exquo(Dms)
        g = g + F.frac(B, Dm)
        Dm = D2
    h = F.frac(A, Ds) + F.from_poly(P)
    return g, h


def rothstein_resultant(A, D):
    """``R(z) = res_x(D, A - z D')`` as a polynomial in ``z``."""
    K = D.domain
    Z = RationalFunctionField(K, "z")
    z = Z.gen
    Dz = Poly([Z.coerce(c) for c in D.coeffs], Z, coerce=False)
    dD = D.diff()
    n = max(A.degree, dD.degree) + 1
    Az = Poly([Z.coerce(A[i]) - z * dD[i] for i in range(n)], Z, coerce=False)
    r = resultant(Dz, Az)
    return r.num * (K.one / r.den[0])


def residues_rational(A, D):
    """True when every residue of the proper fraction ``A/D`` (squarefree ``D``) lies in the constants."""
    if not A:
        return True
    R = rothstein_resultant(A, D)
    return all(q.degree == 1 for q, _ in factor_over(R, R.domain))


def log_part(h):
    """Logarithmic part of a proper ``h`` with squarefree denominator.

    Returns ``(constants, terms, sums)``: ``terms`` are pairs ``(c, u)`` with
    ``u`` a polynomial over ``constants``; ``sums`` are :class:`ConjugateSum`
    entries.  Quadratic resultant factors are split into explicit terms.
    Over QQ a factor of degree three or more stays unsplit (its splitting
    field can have degree up to ``n!``); then every nonlinear factor becomes
    one conjugate sum over ``QQ(c)``.
    """
    from .certificate import ConjugateSum

    A, D = h.num, h.den
    K = D.domain
    if not A:
        return K, [], []
    if A.degree >= D.degree:
        raise ValueError("log_part needs a proper fraction")
    R = rothstein_resultant(A, D)
    groups = []
    for Ri, _ in squarefree_decomposition(R):
        for q, _ in factor_over(Ri.monic(), K):
            groups.append(q)
    if K is QQ and any(q.degree > 2 for q in groups):
        terms, sums = [], []
        dD = D.diff()
        for q in groups:
            if q.degree == 1:
                root = -q[0]
                terms.append((root, gcd(D, A - dD * root)))
                continue
            L, root = adjoin_root(q)
            DL = map_poly(D, L)
            sums.append(ConjugateSum(root, gcd(DL, map_poly(A, L) - DL.diff() * root)))
        return K, terms, sums
    # adjoin roots of every nonlinear factor, one field at a time
    for q in groups:
        if q.degree > 1:
            qK = map_poly(q, K) if q.domain is not K else q
            K, _ = split(qK, K)
    terms = []
    Dk = map_poly(D, K)
    Ak = map_poly(A, K)
    dD = Dk.diff()
    for q in groups:
        qK = map_poly(q, K)
        for c, _ in factor_over(qK, K):
            root = -c[0]
            u = gcd(Dk, Ak - dD * root)
            if u.degree > 0:
                terms.append((root if not _is_rational(root) else _rational(root), u))
    return K, terms, []


def _is_rational(c):
    return isinstance(c, (int, Fraction)) or (hasattr(c, "is_rational") and c.is_rational())


def _rational(c):
    return Fraction(c) if isinstance(c, (int, Fraction)) else c.coords[0]


def integrate_poly(P):
    return Poly([P.domain.zero] + [c / (i + 1) for i, c in enumerate(P.coeffs)], P.domain, coerce=False)


def integrate_rational(f, tower=None):
    """Certificate for ``f`` in ``C(x)``; constants are extended when the log part needs it.

    The certificate carries a base tower over the constants actually used;
    unsplit parts of the log part go into ``sums``.
    """
    from .certificate import Certificate
    from .tower import base_tower

    F = f.field
    if tower is None:
        tower = base_tower(F.base, F.name)
        if tower.base is not F:
            f = map_constants(f, tower.base)
            F = tower.base
    g, h = hermite_reduce(f)
    P, A = h.num.divmod(h.den)
    v = g + F.from_poly(integrate_poly(P))
    K, terms, sums = log_part(F.frac(A, h.den))
    if K is not F.base:
        tower = base_tower(K, F.name)
        Fk = tower.base
        v = map_constants(v, Fk)
        f = map_constants(f, Fk)
        F = Fk
    out = tuple((c, F.from_poly(map_poly(u, F.base))) for c, u in terms)
    return Certificate(0, out, v, f, tower, tuple(sums))
