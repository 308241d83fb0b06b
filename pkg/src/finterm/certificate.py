"""Elementary-integral certificates ``f = sum c_i u_i'/u_i + v'``."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm

import sympy

from .algebra.numbers import QQ, AlgNumber, NumberField, constant_field_of
from .errors import CertificateError, TowerError
from .tower import derive, logderiv


@dataclass(frozen=True)
class Certificate:
    """Data asserting ``f = sum c_i u_i'/u_i + v'`` at a tower level.

    ``terms`` is a tuple of ``(c, u)`` pairs with ``c`` a constant
    (Fraction or AlgNumber) and ``u`` a nonzero element of the level.
    """

    level: int
    terms: tuple
    v: object
    f: object
    tower: object = None
    sums: tuple = ()

    @property
    def constants(self):
        return tuple(c for c, _ in self.terms)

    @property
    def args(self):
        return tuple(u for _, u in self.terms)

    def with_terms(self, terms, v=None):
        return replace(self, terms=tuple(terms), v=self.v if v is None else v)


@dataclass(frozen=True)
class ConjugateSum:
    """The sum of ``c u'/u`` over all conjugates of ``c``.

    ``c`` generates a number field ``K`` over QQ and ``u`` is a polynomial in
    the base variable over ``K``.  This keeps a logarithmic part whose
    residues are the roots of one irreducible polynomial without building
    its splitting field.
    """

    c: object
    u: object

    @property
    def field(self):
        return self.c.field


def conjugate_trace(s, F):
    """``Tr_{K(x)/QQ(x)}(c u'/u)`` as an element of the base field ``F``.

    ``Tr(N/u) = Tr(N cof)/Nm(u)`` with ``Nm(u) = res_z(m(z), u)`` and
    ``cof = Nm(u)/u`` computed in ``K[x]``.
    """
    from .algebra.factor import map_poly
    from .algebra.poly import Poly, resultant

    K = s.field
    if F.base is not QQ:
        raise CertificateError("conjugate sums need a tower over QQ", code="constant-field")
    u = s.u
    n = K.degree
    # u as a polynomial in z with coefficients in QQ[x]
    cols = [F.from_poly(Poly([c.coords[i] for c in u.coeffs], QQ)) for i in range(n)]
    U = Poly(cols, F)
    m = Poly([F.coerce(a) for a in K.minpoly], F)
    nm = resultant(m, U)
    if not nm:
        raise CertificateError("conjugate-sum argument is zero", code="zero-argument")
    nmK = map_poly(nm.num, K) * (K.one / K.coerce(nm.den.lc))
    cof = nmK.exquo(u)
    top = s.c * u.diff() * cof
    tr = Poly([K.trace(c) for c in top.coeffs], QQ)
    return F.from_poly(tr) / nm


def make_certificate(tower, level, terms, v, f):
    F = tower.field(level)
    lift = lambda e: tower.lift(e, level)
    return Certificate(level, tuple((_const(c), lift(u)) for c, u in terms), lift(v if v is not None else F.zero), lift(f), tower)


def _const(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def residual(c, tower=None):
    """``sum c_i u_i'/u_i + v' - f`` in the certificate's level."""
    t = tower or c.tower
    if t is None:
        raise CertificateError("certificate has no tower attached", code="no-tower")
    if c.level > t.height:
        raise CertificateError(f"level {c.level} exceeds tower height {t.height}", code="level-mismatch")
    try:
        v = t.lift(c.v, c.level)
        f = t.lift(c.f, c.level)
        acc = derive(v) - f
        for k, (ci, u) in enumerate(c.terms):
            if not u:
                raise CertificateError(f"argument u{k + 1} is zero", code="zero-argument")
            acc = acc + ci * logderiv(t.lift(u, c.level))
        if c.sums:
            acc = acc + t.lift(sum_part(c.sums, t), c.level)
    except TowerError as exc:
        raise CertificateError(str(exc), code="level-mismatch") from None
    return acc


def sum_part(sums, tower):
    """Base-level value of the conjugate sums of a certificate."""
    F = tower.base
    acc = F.zero
    for s in sums:
        acc = acc + conjugate_trace(s, F)
    return acc


def verify(c, tower=None):
    """Exact check of the defining identity."""
    return not residual(c, tower)


def check(c, tower=None):
    if not verify(c, tower):
        raise CertificateError("identity fails: sum c_i u_i'/u_i + v' != f", code="identity-fails")
    return True


def lift(c, to_level, tower=None):
    t = tower or c.tower
    if to_level < c.level:
        raise CertificateError("lift target is below the certificate level", code="level-mismatch")
    if to_level == c.level:
        return c
    up = lambda e: t.lift(e, to_level)
    return Certificate(to_level, tuple((ci, up(u)) for ci, u in c.terms), up(c.v), up(c.f), t, c.sums)


# ---------------------------------------------------------------------------
# Q-linear algebra on constants


def coordinates(consts):
    """Coordinate rows of the constants in a common number-field basis."""
    K = constant_field_of(*consts)
    rows = []
    for c in consts:
        if K is QQ:
            rows.append((Fraction(c),))
        else:
            rows.append(tuple(K.coerce(c).coords))
    return K, rows


def rank(rows):
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).rank()


def independent(consts):
    """True when the constants are linearly independent over QQ."""
    _, rows = coordinates(list(consts))
    return rank(rows) == len(rows)


def _express(basis_rows, row):
    """Rational coefficients writing ``row`` in terms of ``basis_rows`` or ``None``."""
    if not basis_rows:
        return [] if not any(row) else None
    R = lambda x: sympy.Rational(x.numerator, x.denominator)
    A = sympy.Matrix([[R(b[j]) for b in basis_rows] for j in range(len(row))])
    y = sympy.Matrix([R(x) for x in row])
    try:
        sol, params = A.gauss_jordan_solve(y)
    except ValueError:
        return None
    sol = sol.subs({p: 0 for p in params})
    return [Fraction(int(q.p), int(q.q)) for q in sol]


def normalize_constants(c, tower=None):
    """Equivalent certificate with QQ-independent constants.

    A greedy basis is taken among the constants; every dependent constant
    ``c_j = sum q_jb c_b`` is merged into the basis arguments through
    integer power products after clearing the denominators of the ``q_jb``.
    """
    return c.with_terms(merge_terms(c.terms))


def merge_signed(terms):
    """Combine terms whose constants agree up to sign: ``(c, u), (-c, w) -> (c, u/w)``."""
    out = []
    for ci, u in terms:
        if not ci:
            continue
        for k, (cj, w) in enumerate(out):
            if ci == cj:
                out[k] = (cj, w * u)
                break
            if ci == -cj:
                out[k] = (cj, w / u)
                break
        else:
            out.append((ci, u))
    return [(ci, u) for ci, u in out if not _is_constant(u)]


def merge_terms(terms):
    """The term list behind :func:`normalize_constants`."""
    terms = merge_signed(terms)
    if not terms:
        return []
    _, rows = coordinates([ci for ci, _ in terms])
    basis = []
    coeffs = {}
    for j, row in enumerate(rows):
        q = _express([rows[b] for b in basis], row)
        if q is None:
            basis.append(j)
            coeffs[j] = None
        else:
            coeffs[j] = dict(zip(basis, q))
    merged = []
    for b in basis:
        deps = [(j, coeffs[j][b]) for j in coeffs if coeffs[j] is not None and coeffs[j].get(b)]
        L = lcm(*(q.denominator for _, q in deps)) if deps else 1
        u = terms[b][1] ** L
        for j, q in deps:
            u = u * terms[j][1] ** int(q * L)
        if _is_constant(u):
            continue
        merged.append((terms[b][0] / L, u))
    return merged


def _is_constant(u):
    x = u
    while hasattr(x, "field") and hasattr(x, "is_const"):
        if not x.is_const():
            return False
        x = x.const_value()
    return True


def tidy(c):
    """Drop zero constants and constant arguments, make base-level arguments
    monic and add up the constants of repeated arguments."""
    out = []
    for ci, u in c.terms:
        if not ci or _is_constant(u):
            continue
        if c.level == 0 and hasattr(u, "num"):
            lc = u.num.lc
            if lc != 1:
                u = u * (1 / lc) if isinstance(lc, (Fraction, int)) else u * lc.inverse()
        for k, (cj, w) in enumerate(out):
            if w == u:
                out[k] = (cj + ci, w)
                break
        else:
            out.append((ci, u))
    return c.with_terms([(ci, u) for ci, u in out if ci])


def same_certificate(a, b):
    """Literal equality of the data (terms as an unordered multiset)."""
    if a.level != b.level or a.v != b.v or a.f != b.f or len(a.terms) != len(b.terms):
        return False
    rest = list(b.terms)
    for ci, u in a.terms:
        for k, (cj, w) in enumerate(rest):
            if ci == cj and u == w:
                del rest[k]
                break
        else:
            return False
    return True


__all__ = [
    "Certificate",
    "make_certificate",
    "verify",
    "check",
    "residual",
    "lift",
    "normalize_constants",
    "merge_terms",
    "merge_signed",
    "independent",
    "tidy",
    "same_certificate",
]
