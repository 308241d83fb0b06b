"""The curve ``Y^2 = 4X^3 - g1 X - g0`` and its function field ``k(theta, theta')``.

On a Weierstrass layer ``(theta, theta'/alpha)`` is a point of the curve
over the layer's field.  Translation by a constant point ``p`` is the
differential automorphism induced by ``q -> q + p``; valuations at
constant points use the uniformizer ``theta - x_p`` at ordinary points,
``theta'/alpha`` at 2-torsion points and ``theta/theta'`` at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.fields import AlgElement, RatFunc, depth_of
from .algebra.factor import factor_over, map_poly
from .algebra.poly import Poly, gcd
from .errors import FintermError
from .laurent import series_div, series_sqrt
from .tower import derive

INFINITY_LABEL = "O"


@dataclass(frozen=True)
class EllipticPoint:
    """``(X : Y : Z)`` normalized to ``Z = 1``, or the point at infinity."""

    x: object = None
    y: object = None
    infinity: bool = False

    @property
    def projective(self):
        if self.infinity:
            return (0, 1, 0)
        return (self.x, self.y, 1)

    def __neg__(self):
        if self.infinity:
            return self
        return EllipticPoint(self.x, -self.y)

    def __str__(self):
        if self.infinity:
            return INFINITY_LABEL
        from .expr import format_element

        return f"({format_element(self.x)}, {format_element(self.y)})"


O = EllipticPoint(infinity=True)


def point(x, y):
    return EllipticPoint(_c(x), _c(y))


def _c(v):
    return Fraction(v) if isinstance(v, (int, Fraction)) else v


@dataclass(frozen=True)
class WeierstrassCurve:
    g0: object
    g1: object

    def __post_init__(self):
        if not (27 * self.g0 * self.g0 - self.g1 ** 3):
            raise FintermError("singular curve: 27*g0^2 - g1^3 = 0")

    def P(self, X):
        return 4 * X ** 3 - self.g1 * X - self.g0

    def contains(self, p):
        return p.infinity or not (p.y * p.y - self.P(p.x))

    def check(self, p):
        if not self.contains(p):
            raise FintermError(f"point {p} is not on the curve")

    def two_torsion(self, K=None):
        """The rational 2-torsion points (roots of P in the constants)."""
        K = K or _field_of(self.g0, self.g1)
        Pp = Poly((-self.g0, -self.g1, 0, 4), K)
        return [EllipticPoint(-f[0], K.zero) for f, _ in factor_over(Pp.monic(), K) if f.degree == 1]


def _field_of(*vals):
    from .algebra.numbers import constant_field_of

    return constant_field_of(*vals)


def ec_add(p, q, curve):
    """Chord-tangent sum on ``Y^2 = 4X^3 - g1 X - g0``."""
    curve.check(p)
    curve.check(q)
    if p.infinity:
        return q
    if q.infinity:
        return p
    if p.x == q.x:
        if not (p.y + q.y):
            return O
        lam = (12 * p.x * p.x - curve.g1) / (2 * p.y)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam / 4 - p.x - q.x
    y3 = -(lam * (x3 - p.x) + p.y)
    return EllipticPoint(x3, y3)


# ---------------------------------------------------------------------------
# the function field of a Weierstrass layer


class WeierstrassLayer:
    """Handle on the fields ``k(theta)`` and ``k(theta)[theta']`` of a tower level."""

    def __init__(self, tower, level):
        layer = tower.layers[level]
        if layer.kind != "weierstrass":
            raise FintermError(f"level {level} is not a weierstrass layer")
        self.tower = tower
        self.level = level
        self.Ft, self.W = layer.fields
        self.k = self.Ft.base
        self.alpha = layer.data["alpha"]
        self.curve = WeierstrassCurve(layer.data["g0"], layer.data["g1"])

    @property
    def theta(self):
        return self.W.coerce(self.Ft.gen)

    @property
    def thetap(self):
        return self.W.gen

    def element(self, u):
        if isinstance(u, AlgElement) and u.field is self.W:
            return u
        return self.tower.lift(u, self.level)

    def parts(self, u):
        """``(a, b)`` in ``k(theta)`` with ``u = a + b theta'``."""
        u = self.element(u)
        return u.poly[0], u.poly[1]

    def norm(self, u):
        a, b = self.parts(u)
        al = self.Ft.coerce(self.alpha)
        th = self.Ft.gen
        return a * a - b * b * al * al * (4 * th ** 3 - self.Ft.coerce(self.curve.g1) * th - self.Ft.coerce(self.curve.g0))


def w_derive(u, layer):
    """Derivation on ``k(theta, theta')`` in ``a + b theta'`` form."""
    return derive(layer.element(u))


def _eval_in_W(a, X, W):
    """``a(X)`` for ``a`` in ``k(theta)`` and ``X`` in ``W``."""
    def horner(p):
        acc = W.zero
        for c in reversed(p.coeffs):
            acc = acc * X + W.coerce(c)
        return acc

    return horner(a.num) / horner(a.den)


def translate(u, p, layer):
    """Image of ``u`` under the translation automorphism by the constant point ``p``."""
    curve = layer.curve
    curve.check(p)
    for v in (p.x, p.y):
        if depth_of(v) > 0:
            raise FintermError("translation point must have constant coordinates")
    u = layer.element(u)
    if p.infinity:
        return u
    W = layer.W
    al = W.coerce(layer.alpha)
    th = layer.theta
    y1 = layer.thetap / al
    xp, yp = W.coerce(p.x), W.coerce(p.y)
    lam = (y1 - yp) / (th - xp)
    x3 = lam * lam / 4 - th - xp
    y3 = -(lam * (x3 - th) + y1)
    a, b = u.poly[0], u.poly[1]
    out = _eval_in_W(a, x3, W)
    if b:
        out = out + _eval_in_W(b, x3, W) * al * y3
    return out


# ---------------------------------------------------------------------------
# valuations


def _ord_theta(a, xp):
    """Order of ``a`` in ``k(theta)`` at ``theta = xp``."""
    if not a:
        return None
    c = a.field.base.coerce(xp)
    return a.num.shift(c).low_order() - a.den.shift(c).low_order()


def _deg(a):
    return a.num.degree - a.den.degree


def valuation_at(u, p, layer):
    """Order of ``u`` at the constant point ``p`` (or at infinity)."""
    u = layer.element(u)
    if not u:
        raise FintermError("valuation of zero")
    a, b = u.poly[0], u.poly[1]
    if p.infinity:
        cands = []
        if a:
            cands.append(-2 * _deg(a))
        if b:
            cands.append(-2 * _deg(b) - 3)
        return min(cands)
    layer.curve.check(p)
    if not p.y:
        cands = []
        if a:
            cands.append(2 * _ord_theta(a, p.x))
        if b:
            cands.append(2 * _ord_theta(b, p.x) + 1)
        return min(cands)
    return _ordinary_valuation(a, b, p, layer)


def _ordinary_valuation(a, b, p, layer):
    Ft = layer.Ft
    k = Ft.base
    xp = k.coerce(p.x)
    if not b:
        return _ord_theta(a, p.x)
    if not a:
        return _ord_theta(b, p.x)
    oa, ob = _ord_theta(a, p.x), _ord_theta(b, p.x)
    if oa != ob:
        return min(oa, ob)
    # equal orders: expand a + b * alpha * y(pi) until a coefficient survives
    g1, g0 = k.coerce(layer.curve.g1), k.coerce(layer.curve.g0)
    Pc = [4 * xp ** 3 - g1 * xp - g0, 12 * xp * xp - g1, 12 * xp, k.coerce(4)]
    al = k.coerce(layer.alpha)
    N = 8
    while True:
        y = series_sqrt(Pc, N, k.coerce(p.y))
        sa = _series(a, xp, oa, N)
        sb = _series(b, xp, oa, N)
        for j in range(N):
            c = sa[j] + sb_y(sb, y, j) * al
            if c:
                return oa + j
        N *= 2
        if N > 4096:
            raise FintermError("valuation did not stabilize")


def sb_y(sb, y, j):
    acc = 0
    for i in range(j + 1):
        acc = acc + sb[i] * y[j - i]
    return acc


def _series(a, xp, start, N):
    """Coefficients of ``a`` at ``theta = xp`` for exponents ``start .. start + N - 1``."""
    num = a.num.shift(xp)
    den = a.den.shift(xp)
    on, od = num.low_order(), den.low_order()
    zero = a.field.base.zero
    co = series_div(list(num.coeffs[on:]), list(den.coeffs[od:]), N + 1, zero)
    shift = (on - od) - start
    out = [zero] * N
    for j in range(N):
        if 0 <= j - shift < len(co):
            out[j] = co[j - shift]
    return out


# ---------------------------------------------------------------------------
# divisors


@dataclass
class Divisor:
    points: dict = field(default_factory=dict)
    residual: bool = False

    @property
    def degree(self):
        return sum(self.points.values())

    def __getitem__(self, p):
        return self.points.get(p, 0)

    def as_list(self):
        return [(str(p), n) for p, n in self.points.items()]


def _coeff_deriv_poly(p):
    return Poly([derive(c) for c in p.coeffs], p.domain)


def constant_roots_part(p):
    """The factor of ``p`` (over ``k``) collecting its constant roots, as a polynomial over the constants."""
    if p.degree <= 0:
        return None
    g = p.monic()
    while True:
        gD = _coeff_deriv_poly(g)
        if not gD:
            break
        g = gcd(g, gD)
        if g.degree <= 0:
            return None
    # coefficients are now constants of k
    K = _constants_of(g.domain)
    return Poly([_lower_const(c) for c in g.coeffs], K)


def _constants_of(F):
    while getattr(F, "depth", 0) > 0:
        F = F.base
    return F


def _lower_const(c):
    while depth_of(c) > 0:
        c = c.const_value()
    return c


def constant_point_divisor(u, layer):
    """Valuations of ``u`` at every constant point found, plus infinity.

    ``residual`` is set when some zero or pole lies over a non-constant
    value of ``theta`` or over a constant not in the current field, and
    whenever the degree bookkeeping fails to close.
    """
    u = layer.element(u)
    if not u:
        raise FintermError("divisor of zero")
    a, b = u.poly[0], u.poly[1]
    polys = [a.den]
    if b:
        polys.append(b.den)
    N = layer.norm(u)
    polys.append(N.num)
    residual = False
    xs = []
    K = None
    for p in polys:
        if p.degree <= 0:
            continue
        g = constant_roots_part(p)
        total = p.degree
        found = 0
        if g is not None:
            K = g.domain
            for f, _ in factor_over(g.monic(), K):
                if f.degree == 1:
                    xs.append(-f[0])
                else:
                    residual = True
            found = g.degree
        # multiplicities aside, any root not constant leaves places unaccounted
        from .algebra.poly import squarefree_part

        sq = squarefree_part(p)
        gsq = constant_roots_part(sq)
        if gsq is None or gsq.degree < sq.degree:
            residual = True
    div = Divisor()
    seen = set()
    for xv in xs:
        if xv in seen:
            continue
        seen.add(xv)
        Pv = layer.curve.P(xv)
        if not Pv:
            pts = [EllipticPoint(xv, 0 * xv)]
        else:
            from .riccati import _sqrt_of

            Kc = _field_of(xv, layer.curve.g0, layer.curve.g1)
            r = _sqrt_of(Pv, Kc)
            if r is None:
                residual = True
                continue
            pts = [EllipticPoint(xv, r), EllipticPoint(xv, -r)]
        for pt in pts:
            n = valuation_at(u, pt, layer)
            if n:
                div.points[pt] = n
    n = valuation_at(u, O, layer)
    if n:
        div.points[O] = n
    if not residual and div.degree != 0:
        residual = True
    div.residual = residual
    return div
