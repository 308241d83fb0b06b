"""Rational solutions of the Riccati equation ``u' + u^2 = r u + s`` over ``C(x)``.

With ``u = v + r/2`` the equation becomes ``v' + v^2 = q`` for
``q = s + r^2/4 - r'/2``, and rational ``v`` are exactly ``z'/z`` for the
solutions ``z = P * exp(int omega)`` of ``z'' = q z`` found by the first
case of Kovacic's algorithm: local exponents at every pole of ``q`` and at
infinity, a nonnegative integer degree bound ``d`` and a polynomial ``P``
of degree ``d`` with ``P'' + 2 omega P' + (omega' + omega^2 - q) P = 0``.
The search is complete over the constants; square roots and pole
locations are adjoined when the local analysis needs them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.factor import adjoin_root, map_poly, split
from .algebra.fields import RationalFunctionField, map_constants
from .algebra.poly import Poly, squarefree_part
from .laurent import series_div, series_sqrt
from .tower import base_tower, derive


@dataclass(frozen=True)
class RiccatiProblem:
    r: object
    s: object


@dataclass
class RiccatiSolutions:
    """Solutions found; ``families`` describe solution sets with free constants."""

    solutions: list
    families: list = field(default_factory=list)
    constants: object = None

    def __bool__(self):
        return bool(self.solutions)

    def contains(self, u):
        """Whether ``u`` is a listed solution or a member of a family."""
        if any(u == v for v in self.solutions if v.field is u.field):
            return True
        return any(_in_family(u, fam) for fam in self.families)


def _in_family(u, fam):
    """``u = shift + omega + P'/P`` for some nonzero ``P`` in the span of the basis."""
    F = fam["omega"].field
    if u.field is not F:
        u = map_constants(u, F)
    w = u - fam["shift"] - fam["omega"]
    es = [derive(P) - w * P for P in fam["basis"]]
    den = F.one
    for e in es:
        if e:
            den = den * F.from_poly(e.den)
    nums = [(e * den).num if e else Poly((), F.base) for e in es]
    n = max((p.degree for p in nums), default=0) + 1
    rows = [[p[k] if k <= p.degree else F.base.zero for p in nums] for k in range(n)]
    return bool(nullspace(rows, len(es), F.base.zero, F.base.one))


def riccati_residual(u, r, s):
    return derive(u) + u * u - r * u - s


# ---------------------------------------------------------------------------
# local data


def _series_at(q, c, k):
    """Laurent coefficients of ``q`` at ``x = c``: (order, coeffs)."""
    num = q.num.shift(c)
    den = q.den.shift(c)
    on, od = num.low_order(), den.low_order()
    zero = q.field.base.zero
    co = series_div(list(num.coeffs[on:]), list(den.coeffs[od:]), k, zero)
    return on - od, co


def _series_inf(q, k):
    """Expansion of ``q`` in ``w = 1/x``: (order in w, coeffs)."""
    num, den = q.num, q.den
    zero = q.field.base.zero
    rn = list(reversed(num.coeffs))
    rd = list(reversed(den.coeffs))
    co = series_div(rn, rd, k, zero)
    return den.degree - num.degree, co


def _sqrt_of(c, K):
    """A square root of ``c`` in ``K`` or ``None``."""
    from .algebra.factor import factor_over

    if not c:
        return K.zero
    X = Poly((-c, 0, 1), K)
    for f, _ in factor_over(X, K):
        if f.degree == 1:
            return -f[0]
    return None


@dataclass
class _Local:
    point: object  # constant, or None for infinity
    order: int
    sqrt_part: object  # list of coefficients (see _omega_piece)
    alphas: tuple


def _radicands(q, K, poles):
    """Square roots needed by the local analysis (as elements of ``K``)."""
    out = []
    for c, o in poles:
        oo, co = _series_at(q, c, o + 2)
        if o == 2:
            out.append(1 + 4 * co[0])
        elif o >= 4 and o % 2 == 0:
            out.append(co[0])
    if q:
        oi, ci = _series_inf(q, 4)
        if oi == 2:
            out.append(1 + 4 * ci[0])
        elif oi <= 0 and oi % 2 == 0:
            out.append(ci[0])
    return out


def _local_data(q, K, poles):
    """Local exponent data or ``None`` if some order rules out case 1."""
    half = Fraction(1, 2)
    locs = []
    for c, o in poles:
        if o == 1:
            locs.append(_Local(c, 1, [], (K.one,)))
            continue
        if o == 2:
            _, co = _series_at(q, c, 1)
            root = _sqrt_of(1 + 4 * co[0], K)
            locs.append(_Local(c, 2, [], (half + half * root, half - half * root)))
            continue
        if o % 2:
            return None
        v = o // 2
        _, co = _series_at(q, c, o)
        a0 = _sqrt_of(co[0], K)
        sq = series_sqrt(co, v - 1, a0)  # coefficients of pi^-v .. pi^-2
        # b: coefficient of pi^(-v-1) in q - sq^2
        sq2 = [K.zero] * (2 * v)
        for i, x in enumerate(sq):
            for j, y in enumerate(sq):
                sq2[i + j] = sq2[i + j] + x * y
        b = co[v - 1] - sq2[v - 1]
        a = sq[0]
        locs.append(_Local(c, o, sq, (half * (b / a + v), half * (-b / a + v))))
    if not q:
        locs.append(_Local(None, None, [], (K.zero, K.one)))
        return locs
    oi, ci = _series_inf(q, 4)
    if oi > 2:
        locs.append(_Local(None, oi, [], (K.zero, K.one)))
    elif oi == 2:
        root = _sqrt_of(1 + 4 * ci[0], K)
        locs.append(_Local(None, 2, [], (half + half * root, half - half * root)))
    elif oi % 2:
        return None
    else:
        v = -oi // 2
        n = q.num.degree
        # q in descending powers: x^(2v) (c0 + c1/x + ...)
        co = _series_inf(q, 2 * v + 2)[1]
        a0 = _sqrt_of(co[0], K)
        sq = series_sqrt(co, v + 1, a0)  # coefficients of x^v, x^(v-1), ..., x^0
        sq2 = [K.zero] * (2 * v + 2)
        for i, x in enumerate(sq):
            for j, y in enumerate(sq):
                if i + j < len(sq2):
                    sq2[i + j] = sq2[i + j] + x * y
        # coefficient of x^(v-1) in q - [sqrt q]^2: index v + 1 in descending list
        b = co[v + 1] - sq2[v + 1]
        a = sq[0]
        locs.append(_Local(None, oi, sq, (half * (b / a - v), half * (-b / a - v))))
    return locs


def _omega_piece(F, loc, sign):
    """``sign * [sqrt q]_c + alpha / (x - c)`` (or the part at infinity)."""
    x = F.gen
    a_sel = loc.alphas[0 if sign > 0 else 1]
    if loc.point is None:
        if not loc.sqrt_part:
            return F.zero
        v = len(loc.sqrt_part) - 1
        acc = F.zero
        for i, c in enumerate(loc.sqrt_part):
            acc = acc + F.coerce(c) * x ** (v - i)
        return acc * sign
    pi = x - F.coerce(loc.point)
    acc = F.zero
    if loc.sqrt_part:
        v = len(loc.sqrt_part) + 1
        for i, c in enumerate(loc.sqrt_part):
            acc = acc + F.coerce(c) * pi ** (i - v)
        acc = acc * sign
    return acc + F.coerce(a_sel) / pi


def _is_nonneg_int(d):
    try:
        val = d if isinstance(d, (int, Fraction)) else (d.coords[0] if d.is_rational() else None)
    except AttributeError:
        return None
    if val is None:
        return None
    val = Fraction(val)
    if val.denominator != 1 or val < 0:
        return None
    return int(val)


def nullspace(rows, ncols, zero, one):
    """Basis of ``{p : rows * p = 0}`` over any exact field."""
    m = [list(r) for r in rows]
    pivots = []
    rk = 0
    for col in range(ncols):
        piv = None
        for i in range(rk, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = one / m[rk][col]
        m[rk] = [e * inv for e in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        pivots.append(col)
        rk += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def _poly_solutions(F, omega, q, d):
    """Polynomials ``P`` of degree ``<= d`` with ``P'' + 2 omega P' + (omega' + omega^2 - q) P = 0``."""
    K = F.base
    x = F.gen
    c0 = derive(omega) + omega * omega - q
    images = []
    for j in range(d + 1):
        P = x ** j
        dP = F.coerce(j) * x ** (j - 1) if j else F.zero
        ddP = F.coerce(j * (j - 1)) * x ** (j - 2) if j > 1 else F.zero
        images.append(ddP + 2 * omega * dP + c0 * P)
    den = Poly((K.one,), K)
    for im in images:
        if im:
            den = _lcm(den, im.den)
    polys = []
    for im in images:
        polys.append((im * F.from_poly(den)).num if im else Poly((), K))
    n = max((p.degree for p in polys), default=-1) + 1
    rows = [[p[i] for p in polys] for i in range(n)]
    basis = nullspace(rows, d + 1, K.zero, K.one)
    return [Poly(vec, K) for vec in basis]


def _lcm(a, b):
    from .algebra.poly import gcd

    return (a * b).exquo(gcd(a, b)).monic()


def rational_solutions(r, s=None):
    """All rational solutions of ``u' + u^2 = r u + s``.

    Accepts a :class:`RiccatiProblem` or the pair ``(r, s)``.  The result
    lists distinct solutions (a family contributes a representative
    for each basis polynomial) and one descriptor per family.
    """
    if isinstance(r, RiccatiProblem):
        r, s = r.r, r.s
    F = r.field if hasattr(r, "field") else s.field
    r = F.coerce(r)
    s = F.coerce(s)
    q = s + r * r / 4 - derive(r) / 2
    K = F.base
    # poles of q, adjoining their locations
    dsq = squarefree_part(q.den) if q.den.degree > 0 else None
    if dsq is not None:
        K, roots = split(dsq, K)
    else:
        roots = []
    # square roots required by the local exponents
    for _ in range(8):
        F2 = F if K is F.base else base_tower(K, F.name).base
        qK = map_constants(q, F2)
        poles = [(c, qK.den.shift(c).low_order()) for c in (K.coerce(z) for z in roots)]
        missing = [rad for rad in _radicands(qK, K, poles) if _sqrt_of(rad, K) is None]
        if not missing:
            break
        K, _ = adjoin_root(Poly((-missing[0], K.zero, K.one), K))
    F2 = F if K is F.base else base_tower(K, F.name).base
    qK = map_constants(q, F2)
    rK = map_constants(r, F2)
    poles = [(c, qK.den.shift(c).low_order()) for c in (K.coerce(z) for z in roots)]
    locs = _local_data(qK, K, poles)
    out = RiccatiSolutions([], [], K)
    if locs is None:
        return out
    finite, inf = locs[:-1], locs[-1]
    seen = set()
    for signs in itertools.product((1, -1), repeat=len(locs)):
        if any(l.order == 1 and sg < 0 for l, sg in zip(finite, signs)):
            continue
        d = inf.alphas[0 if signs[-1] > 0 else 1]
        for l, sg in zip(finite, signs):
            d = d - l.alphas[0 if sg > 0 else 1]
        dd = _is_nonneg_int(d)
        if dd is None:
            continue
        omega = F2.zero
        for l, sg in zip(locs, signs):
            omega = omega + _omega_piece(F2, l, sg)
        basis = _poly_solutions(F2, omega, qK, dd)
        if not basis:
            continue
        sols = []
        for P in basis:
            Pe = F2.from_poly(P)
            v = omega + derive(Pe) / Pe
            u = v + rK / 2
            sols.append(u)
            if u not in seen:
                seen.add(u)
                out.solutions.append(u)
        if len(basis) > 1:
            out.families.append({
                "parameters": len(basis) - 1,
                "omega": omega,
                "shift": rK / 2,
                "basis": [F2.from_poly(P) for P in basis],
                "representative": sols[0],
            })
    return out


def is_sl2_admissible(r, s=None):
    """``(True, None)`` when no rational solution exists, else ``(False, witness)``."""
    res = rational_solutions(r, s)
    if res.solutions:
        return False, res.solutions[0]
    return True, None
