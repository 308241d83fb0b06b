"""Differential field towers ``E_m ⊇ ... ⊇ E_0 = C(x)``.

Each user-visible level is described by an extension spec.  Compound kinds
are resolved into a chain of internal fields when the tower is built:

=============  ==========================================================
kind           internal fields (bottom to top)
=============  ==========================================================
base           ``C(x)``, ``x' = 1``
log            ``L(t)``, ``t' = a'/a``
exp            ``L(t)``, ``t' = a' t``
primitive      ``L(t)``, ``t' = a``
hyperexp       ``L(t)``, ``t' = a t``
algebraic      ``L[theta]/(m)``
dihedral       ``L[alpha]/(m)`` then ``(..)(eta)``, ``eta' = alpha eta``
sl2            ``L(alpha)`` (Riccati), ``(..)(y)``, ``(..)(eta)``,
               ``(..)[xi]/(xi^2 - omega/y)``
weierstrass    ``L(theta)``, then ``[thetap]/(thetap^2 - alpha^2 P(theta))``
=============  ==========================================================

The derivation is stored on the fields themselves (``gen_deriv``), so
:func:`derive` needs only the element.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra.fields import (
    AlgebraicExtension,
    AlgElement,
    RatFunc,
    RationalFunctionField,
    depth_of,
)
from .algebra.numbers import QQ, AlgNumber, NumberField
from .algebra.poly import Poly, resultant, squarefree_decomposition
from .errors import ParseError, TowerError
from .expr import format_element, format_poly, parse_expression

KINDS = ("base", "log", "exp", "primitive", "hyperexp", "algebraic", "dihedral", "sl2", "weierstrass")


# ---------------------------------------------------------------------------
# derivation


_CACHE_LIMIT = 20000


def derive(e, tower=None):
    """The derivation of the tower ``e`` lives in (the tower argument is optional)."""
    if isinstance(e, (int, Fraction)):
        return Fraction(0)
    if isinstance(e, AlgNumber):
        return e.field.zero
    F = e.field
    cache = F.__dict__.setdefault("_dcache", {})
    hit = cache.get(e)
    if hit is not None:
        return hit
    T = F.deriv_target
    if e.is_const():
        d = derive(e.const_value())
        res = T.coerce(d) if depth_of(d) < T.depth else d
    elif isinstance(e, RatFunc):
        dn = _dpoly(e.num, F)
        if e.den.degree == 0:
            res = dn
        else:
            dd = _dpoly(e.den, F)
            q = T.coerce(e) if T is not F else e
            res = (dn - q * dd) / (T.coerce(F.from_poly(e.den)) if T is not F else F.from_poly(e.den))
    else:
        res = _dpoly(e.poly, F)
    if len(cache) > _CACHE_LIMIT:
        cache.clear()
    cache[e] = res
    return res


def _dpoly(p, F):
    """Derivative of the polynomial ``p`` (over ``F.base``) evaluated at ``F.gen``."""
    T = F.deriv_target
    B = F.base
    ds = [derive(c) for c in p.coeffs]
    if B.depth == 0 or B.deriv_target is B:
        part = F.from_poly(Poly(ds, B)) if any(ds) else F.zero
        part = T.coerce(part) if T is not F else part
    else:
        g = T.coerce(F.gen)
        part = T.zero
        for d in reversed(ds):
            part = part * g + d
    dp = p.diff()
    if dp:
        tail = F.from_poly(dp)
        tail = T.coerce(tail) if T is not F else tail
        part = part + tail * F.gen_deriv
    return part


def logderiv(e, tower=None):
    if not e:
        raise ZeroDivisionError("logarithmic derivative of zero")
    return derive(e) / e


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class Base:
    name: str = "x"
    kind = "base"


@dataclass(frozen=True)
class Log:
    a: object
    name: str | None = None
    kind = "log"


@dataclass(frozen=True)
class Exp:
    a: object
    name: str | None = None
    kind = "exp"


@dataclass(frozen=True)
class Primitive:
    a: object
    name: str | None = None
    kind = "primitive"


@dataclass(frozen=True)
class Hyperexp:
    a: object
    name: str | None = None
    kind = "hyperexp"


@dataclass(frozen=True)
class Algebraic:
    minpoly: object
    name: str | None = None
    kind = "algebraic"


@dataclass(frozen=True)
class Dihedral:
    minpoly: object
    gamma: object
    names: tuple = ("alpha", "eta")
    kind = "dihedral"


@dataclass(frozen=True)
class SL2:
    r: object
    s: object
    omega: object = "1"
    names: tuple = ("alpha", "y", "eta", "xi")
    kind = "sl2"


@dataclass(frozen=True)
class Weierstrass:
    g0: object
    g1: object
    alpha: object = "1"
    names: tuple = ("theta", "thetap")
    kind = "weierstrass"


_SPEC_TYPES = {
    "base": Base,
    "log": Log,
    "exp": Exp,
    "primitive": Primitive,
    "hyperexp": Hyperexp,
    "algebraic": Algebraic,
    "dihedral": Dihedral,
    "sl2": SL2,
    "weierstrass": Weierstrass,
}


def spec_from_dict(d):
    """Build a spec from one entry of a tower file."""
    kind = d.get("kind")
    if kind not in _SPEC_TYPES:
        raise TowerError(f"unknown extension kind {kind!r}", code="tower-schema")
    try:
        if kind == "base":
            return Base(d.get("name", "x"))
        if kind in ("log", "exp", "primitive", "hyperexp"):
            a = d["a"] if "a" in d else d["arg"]
            return _SPEC_TYPES[kind](a, d.get("name"))
        if kind == "algebraic":
            return Algebraic(d["minpoly"], d.get("name"))
        if kind == "dihedral":
            return Dihedral(d["minpoly"], d.get("gamma", "1"), tuple(d.get("names", ("alpha", "eta"))))
        if kind == "sl2":
            return SL2(d["r"], d["s"], d.get("omega", "1"), tuple(d.get("names", ("alpha", "y", "eta", "xi"))))
        return Weierstrass(d["g0"], d["g1"], d.get("alpha", "1"), tuple(d.get("names", ("theta", "thetap"))))
    except KeyError as exc:
        raise TowerError(f"{kind} level is missing field {exc.args[0]!r}", code="tower-schema") from None


def _s(x):
    return x if isinstance(x, str) else format_element(x)


def spec_to_dict(spec, layer=None):
    kind = spec.kind
    if kind == "base":
        return {"kind": "base", "name": spec.name}
    if kind in ("log", "exp", "primitive", "hyperexp"):
        d = {"kind": kind, "a": _s(spec.a)}
        if layer is not None:
            d["name"] = layer.names[0]
        return d
    if kind == "algebraic":
        d = {"kind": kind, "minpoly": spec.minpoly if isinstance(spec.minpoly, str) else None}
        if layer is not None:
            d["minpoly"] = format_poly(layer.data["minpoly"], layer.names[0])
            d["name"] = layer.names[0]
        return d
    if kind == "dihedral":
        d = {"kind": kind, "minpoly": spec.minpoly, "gamma": _s(spec.gamma), "names": list(spec.names)}
        if layer is not None:
            d["minpoly"] = format_poly(layer.data["minpoly"], layer.names[0])
            d["names"] = list(layer.names)
        return d
    if kind == "sl2":
        names = list(layer.names) if layer is not None else list(spec.names)
        return {"kind": kind, "r": _s(spec.r), "s": _s(spec.s), "omega": _s(spec.omega), "names": names}
    names = list(layer.names) if layer is not None else list(spec.names)
    return {"kind": kind, "g0": _s(spec.g0), "g1": _s(spec.g1), "alpha": _s(spec.alpha), "names": names}


# ---------------------------------------------------------------------------
# the tower


@dataclass
class Layer:
    index: int
    kind: str
    spec: object
    fields: list
    names: tuple
    data: dict = dc_field(default_factory=dict)
    metadata: dict = dc_field(default_factory=dict)

    @property
    def top(self):
        return self.fields[-1]

    @property
    def bottom(self):
        return self.fields[0]

    def gen(self, name):
        for f in self.fields:
            if f.name == name:
                return f.gen
        raise KeyError(name)


@dataclass(frozen=True)
class NotInLevel:
    """Result of :func:`coerce_down` when a higher generator obstructs."""

    generator: str
    level: int | None = None

    def __str__(self):
        return f"NotInLevel({self.generator})"


class TowerDesc:
    """A validated tower; immutable once :func:`build_tower` returns."""

    def __init__(self, constants):
        self.constants = constants
        self.layers = []
        self._field_level = {}

    def __len__(self):
        return len(self.layers)

    @property
    def height(self):
        return len(self.layers) - 1

    @property
    def base(self):
        return self.layers[0].top

    @property
    def x(self):
        return self.layers[0].top.gen

    def field(self, level=None):
        if level is None:
            level = self.height
        return self.layers[level].top

    def fields(self):
        return [f for layer in self.layers for f in layer.fields]

    def level_of_field(self, F):
        if depth_of_field(F) == 0:
            return 0
        try:
            return self._field_level[id(F)]
        except KeyError:
            raise TowerError(f"field {F!r} does not belong to this tower") from None

    def level_of(self, e):
        """Smallest level whose top field contains ``e`` (after canonical reduction)."""
        for lvl in range(len(self.layers)):
            if not isinstance(coerce_down(e, self, lvl), NotInLevel):
                return lvl
        return self.height

    def namespace(self, level=None):
        if level is None:
            level = self.height
        ns = {}
        if isinstance(self.constants, NumberField):
            ns[self.constants.name] = self.constants.gen
        for layer in self.layers[: level + 1]:
            for f in layer.fields:
                ns[f.name] = f.gen
        return ns

    def parse(self, src, level=None):
        """Parse an expression into the top field of ``level`` (default: the top)."""
        if level is None:
            level = self.height
        v = parse_expression(src, self.namespace(level))
        return self.lift(v, level)

    def lift(self, e, level=None):
        F = self.field(level)
        if getattr(e, "field", None) is F:
            return e
        if depth_of(e) > F.depth:
            r = coerce_down(e, self, self.height if level is None else level)
            if isinstance(r, NotInLevel):
                raise TowerError(f"element involves {r.generator}, which is above level {level}")
            return r
        return F.coerce(e)

    def format(self, e):
        return format_element(e)

    def to_dict(self):
        d = {"levels": [spec_to_dict(layer.spec, layer) for layer in self.layers]}
        if isinstance(self.constants, NumberField):
            d["constants"] = {"name": self.constants.name, "minpoly": self.constants.minpoly_str("X")}
        return d

    def describe(self):
        out = []
        for layer in self.layers:
            out.append({
                "level": layer.index,
                "kind": layer.kind,
                "generators": list(layer.names),
                "metadata": layer.metadata,
            })
        return out


def depth_of_field(F):
    return getattr(F, "depth", 0)


def coerce_down(e, tower, target_level):
    """Re-express ``e`` in the top field of ``target_level`` or report the obstruction."""
    T = tower.field(target_level)
    x = e
    while depth_of(x) > T.depth:
        if x.is_const():
            x = x.const_value()
        else:
            return NotInLevel(x.field.name, tower.level_of_field(x.field))
    if depth_of(x) == T.depth:
        if x.field is not T:
            return NotInLevel(x.field.name)
        return x
    return T.coerce(x)


def in_field(e, F):
    """``e`` viewed in field ``F`` if its canonical form allows, else ``None``."""
    x = e
    while depth_of(x) > F.depth:
        if x.is_const():
            x = x.const_value()
        else:
            return None
    if depth_of(x) == F.depth:
        return x if (F.depth == 0 or x.field is F) else None
    return F.coerce(x)


def trace_norm(e, F=None):
    """Trace and norm of ``e`` over the base of its simple algebraic field.

    Trace is read off the multiplication matrix; norm is ``Res(m, p)`` for
    ``e = p(theta)`` and monic minimal polynomial ``m``.
    """
    if F is not None and getattr(e, "field", None) is not F:
        e = F.coerce(e)
    while isinstance(e, RatFunc) and e.is_const():
        e = e.const_value()
    if not isinstance(e, AlgElement):
        raise TowerError("trace/norm requested on a transcendental layer", code="not-algebraic")
    A = e.field
    M = A.mult_matrix(e)
    tr = A.base.zero
    for i in range(A.degree):
        tr = tr + M[i][i]
    if not e.poly:
        return tr, A.base.zero
    nr = resultant(A.minpoly, e.poly)
    return tr, nr


def conjugate(e):
    """The other root's image for an element of a quadratic extension."""
    A = e.field
    if A.degree != 2:
        raise TowerError("conjugate is only defined on quadratic layers", code="not-quadratic")
    tr_gen = -A.minpoly[1]
    p = e.poly
    # theta -> tr(theta) - theta
    return A.coerce(p[0] + p[1] * tr_gen) - A.gen * p[1]


# ---------------------------------------------------------------------------
# building


def _unique(name, used, index):
    if name not in used:
        return name
    cand = f"{name}{index}"
    k = 1
    while cand in used:
        cand = f"{name}{index}_{k}"
        k += 1
    return cand


def _parse_in(tower, src, level):
    if isinstance(src, str):
        try:
            return tower.parse(src, level)
        except ParseError as exc:
            code = "dangling-reference" if exc.unknown else "tower-parse"
            raise TowerError(f"level {level + 1}: {exc}", code=code, layer=level + 1) from None
        except TowerError as exc:
            raise TowerError(f"level {level + 1}: {exc}", code="dangling-reference", layer=level + 1) from None
    if isinstance(src, (int, Fraction)):
        return tower.field(level).coerce(src)
    try:
        return tower.lift(src, level)
    except (TowerError, TypeError) as exc:
        raise TowerError(f"level {level + 1}: {exc}", code="dangling-reference", layer=level + 1) from None


def _parse_minpoly(tower, src, level, name, alias=None):
    L = tower.field(level)
    if isinstance(src, Poly):
        return Poly([L.coerce(c) for c in src.coeffs], L, coerce=False)
    tmp = RationalFunctionField(L, name)
    ns = tower.namespace(level)
    ns[name] = tmp.gen
    if alias:
        ns[alias] = tmp.gen  # the requested name, even when it was renamed
    try:
        v = parse_expression(src, ns)
    except ParseError as exc:
        raise TowerError(f"minimal polynomial: {exc}", code="tower-parse") from None
    v = tmp.coerce(v)
    if v.den.degree != 0:
        raise TowerError("minimal polynomial must be a polynomial in the generator", code="tower-schema")
    p = v.num * (L.one / v.den[0])
    return Poly(p.coeffs, L, coerce=False).monic()


def _to_constant(tower, v, what):
    x = v
    while depth_of(x) > 0:
        if x.is_const():
            x = x.const_value()
        else:
            raise TowerError(f"{what} must be a constant", code="not-constant")
    return x


def build_tower(specs, constants=QQ):
    """Validate ``specs`` (level 0 must be the base) and build the tower."""
    specs = [spec_from_dict(s) if isinstance(s, dict) else s for s in specs]
    if not specs or specs[0].kind != "base":
        specs = [Base()] + list(specs)
    tower = TowerDesc(constants)
    used = set()
    if isinstance(constants, NumberField):
        used.add(constants.name)
    for idx, spec in enumerate(specs):
        if idx and spec.kind == "base":
            raise TowerError("only level 0 may be the base", code="tower-schema", layer=idx)
        builder = _BUILDERS[spec.kind]
        layer = builder(tower, spec, idx, used)
        tower.layers.append(layer)
        for f in layer.fields:
            tower._field_level[id(f)] = idx
            used.add(f.name)
    return tower


def _build_base(tower, spec, idx, used):
    F = RationalFunctionField(tower.constants, spec.name)
    F.kind = "base"
    F.gen_deriv = F.one
    return Layer(idx, "base", spec, [F], (spec.name,))


def _monomial_screen(kind, a):
    """New-constant screen for a monomial layer directly over C(x)."""
    from .ratint import hermite_reduce, residues_rational

    if kind in ("log", "exp"):
        if not derive(a):
            return "new-constant"
        return None
    if not a:
        return "new-constant"
    g, h = hermite_reduce(a)
    P, R, D = _split_poly_part(h)
    if kind == "primitive":
        if not R:
            return "new-constant"
        return None
    if g or P:
        return None
    if residues_rational(R, D):
        return "algebraic-generator"
    return None


def _split_poly_part(h):
    q, r = h.num.divmod(h.den)
    return q, r, h.den


def _build_monomial(tower, spec, idx, used):
    L = tower.field(idx - 1)
    a = _parse_in(tower, spec.a, idx - 1)
    if spec.kind == "log" and not a:
        raise TowerError("log argument must be nonzero", code="log-of-zero", layer=idx)
    default = f"t{idx}"
    name = _unique(spec.name or default, used, idx)
    F = RationalFunctionField(L, name)
    F.kind = spec.kind
    t = F.gen
    if spec.kind == "log":
        F.gen_deriv = F.coerce(logderiv(a))
    elif spec.kind == "exp":
        F.gen_deriv = F.coerce(derive(a)) * t
    elif spec.kind == "primitive":
        F.gen_deriv = F.coerce(a)
    else:
        F.gen_deriv = F.coerce(a) * t
    meta = {}
    if idx == 1:
        bad = _monomial_screen(spec.kind, a)
        if bad:
            raise TowerError(
                f"{spec.kind} generator over C(x) would be algebraic or introduce new constants ({bad})",
                code="new-constants",
                layer=idx,
            )
        meta["constants_check"] = "screened"
    else:
        meta["constants_check"] = "trusted"
    return Layer(idx, spec.kind, spec, [F], (name,), {"a": a}, meta)


def _algebraic_field(L, name, mp):
    A = AlgebraicExtension(L, name, mp)
    A.kind = "algebraic"
    theta = A.gen
    mD = A.zero
    for i, c in enumerate(A.minpoly.coeffs):
        dc = derive(c)
        if dc:
            mD = mD + A.coerce(dc) * theta ** i
    mprime = A.from_poly(A.minpoly.diff())
    A.gen_deriv = -mD / mprime
    return A


def _is_square_in_base(q, constants):
    """Whether ``q`` in C(x) is a square (used to screen quadratic layers)."""
    from .algebra.factor import factor_over

    if not q:
        return True
    for p in (q.num, q.den):
        if p.degree <= 0:
            continue
        for _, k in squarefree_decomposition(p):
            if k % 2:
                return False
    lc = q.num.lc
    X = Poly((-lc, 0, 1), constants)
    return any(f.degree == 1 for f, _ in factor_over(X, constants))


def _check_quadratic(tower, mp, idx):
    if mp.degree != 2:
        return "trusted"
    if idx != 1:
        return "trusted"
    b, c = mp[1], mp[0]
    disc = b * b - 4 * c
    if _is_square_in_base(disc, tower.constants):
        raise TowerError("quadratic minimal polynomial is reducible over C(x)", code="reducible", layer=idx)
    return "irreducible"


def _build_algebraic(tower, spec, idx, used):
    L = tower.field(idx - 1)
    name = _unique(spec.name or "theta", used, idx)
    mp = _parse_minpoly(tower, spec.minpoly, idx - 1, name, spec.name or "theta")
    if mp.degree < 2:
        raise TowerError("algebraic layer needs degree >= 2", code="tower-schema", layer=idx)
    check = _check_quadratic(tower, mp, idx)
    A = _algebraic_field(L, name, mp)
    return Layer(idx, "algebraic", spec, [A], (name,), {"minpoly": A.minpoly}, {"irreducibility": check})


def _build_dihedral(tower, spec, idx, used):
    L = tower.field(idx - 1)
    an = _unique(spec.names[0], used, idx)
    en = _unique(spec.names[1], used | {an}, idx)
    mp = _parse_minpoly(tower, spec.minpoly, idx - 1, an, spec.names[0])
    if mp.degree != 2:
        raise TowerError("dihedral layer needs a quadratic minimal polynomial", code="tower-schema", layer=idx)
    gamma = _parse_in(tower, spec.gamma, idx - 1)
    if not gamma:
        raise TowerError("dihedral witness gamma must be nonzero", code="dihedral-trace", layer=idx)
    check = _check_quadratic(tower, mp, idx)
    trace = -mp[1]
    if trace - logderiv(gamma) / 2:
        raise TowerError(
            "dihedral identity tr(alpha) = gamma'/(2 gamma) fails", code="dihedral-trace", layer=idx
        )
    A = _algebraic_field(L, an, mp)
    A.kind = "dihedral-alpha"
    H = RationalFunctionField(A, en)
    H.kind = "hyperexp"
    H.gen_deriv = H.coerce(A.gen) * H.gen
    data = {"minpoly": A.minpoly, "gamma": gamma, "alpha": A.gen, "eta": H.gen}
    return Layer(idx, "dihedral", spec, [A, H], (an, en), data, {"irreducibility": check, "gamma_identity": "verified"})


def _build_sl2(tower, spec, idx, used):
    from .riccati import rational_solutions

    L = tower.field(idx - 1)
    names = []
    for n in spec.names:
        names.append(_unique(n, used | set(names), idx))
    an, yn, en, xn = names
    r = _parse_in(tower, spec.r, idx - 1)
    s = _parse_in(tower, spec.s, idx - 1)
    omega = _parse_in(tower, spec.omega, idx - 1)
    if not omega:
        raise TowerError("omega must be nonzero", code="tower-schema", layer=idx)
    meta = {}
    if idx == 1:
        sols = rational_solutions(r, s)
        if sols.solutions:
            raise TowerError(
                f"Riccati equation has the rational solution {format_element(sols.solutions[0])}; "
                "the layer is not of SL2 type",
                code="riccati-solvable",
                layer=idx,
            )
        meta["sl2_check"] = "validated (necessary condition)"
    else:
        meta["sl2_check"] = "trusted"
    Fa = RationalFunctionField(L, an)
    Fa.kind = "riccati"
    al = Fa.gen
    Fa.gen_deriv = -al * al + Fa.coerce(r) * al + Fa.coerce(s)
    beta = Fa.coerce(logderiv(omega)) - 2 * al
    Fy = RationalFunctionField(Fa, yn)
    Fy.kind = "hyperexp"
    Fy.sl2_role = "y"
    Fy.gen_deriv = Fy.coerce(beta) * Fy.gen
    Fe = RationalFunctionField(Fy, en)
    Fe.kind = "primitive"
    Fe.gen_deriv = Fe.coerce(Fy.gen)
    y_in_e = Fe.coerce(Fy.gen)
    mp = Poly([-Fe.coerce(omega) / y_in_e, Fe.zero, Fe.one], Fe, coerce=False)
    Fx = _algebraic_field(Fe, xn, mp)
    Fx.kind = "sl2-xi"
    data = {"r": r, "s": s, "omega": omega, "beta": beta, "alpha": al, "y": Fy.gen, "eta": Fe.gen, "xi": Fx.gen}
    return Layer(idx, "sl2", spec, [Fa, Fy, Fe, Fx], tuple(names), data, meta)


def _build_weierstrass(tower, spec, idx, used):
    L = tower.field(idx - 1)
    names = []
    for n in spec.names:
        names.append(_unique(n, used | set(names), idx))
    tn, wn = names
    g0 = _to_constant(tower, _parse_in(tower, spec.g0, idx - 1), "g0")
    g1 = _to_constant(tower, _parse_in(tower, spec.g1, idx - 1), "g1")
    alpha = _parse_in(tower, spec.alpha, idx - 1)
    if not alpha:
        raise TowerError("weierstrass coefficient alpha must be nonzero", code="tower-schema", layer=idx)
    disc = 27 * g0 * g0 - g1 * g1 * g1
    if not disc:
        raise TowerError("singular curve: 27*g0^2 - g1^3 = 0", code="singular-curve", layer=idx)
    Ft = RationalFunctionField(L, tn)
    Ft.kind = "weierstrass-theta"
    th = Ft.gen
    P = 4 * th ** 3 - Ft.coerce(g1) * th - Ft.coerce(g0)
    a2 = Ft.coerce(alpha) * Ft.coerce(alpha)
    mp = Poly([-(a2 * P), Ft.zero, Ft.one], Ft, coerce=False)
    W = AlgebraicExtension(Ft, wn, mp)
    W.kind = "weierstrass-thetap"
    Ft.deriv_target = W
    Ft.gen_deriv = W.gen
    thW = W.coerce(th)
    aW = W.coerce(alpha)
    W.gen_deriv = W.coerce(logderiv(alpha)) * W.gen + aW * aW * (12 * thW * thW - W.coerce(g1)) / 2
    data = {"g0": g0, "g1": g1, "alpha": alpha, "theta": th, "thetap": W.gen}
    return Layer(idx, "weierstrass", spec, [Ft, W], tuple(names), data, {"discriminant": format_element(disc)})


_BUILDERS = {
    "base": _build_base,
    "log": _build_monomial,
    "exp": _build_monomial,
    "primitive": _build_monomial,
    "hyperexp": _build_monomial,
    "algebraic": _build_algebraic,
    "dihedral": _build_dihedral,
    "sl2": _build_sl2,
    "weierstrass": _build_weierstrass,
}


def tower_from_dict(d):
    """Build a tower from the JSON schema ``{"levels": [...], "constants": {...}}``."""
    from .algebra.numbers import NumberField as NF

    if not isinstance(d, dict) or "levels" not in d:
        raise TowerError("tower file needs a 'levels' list", code="tower-schema")
    constants = QQ
    c = d.get("constants")
    if c:
        name = c.get("name", "a")
        tmp = RationalFunctionField(QQ, "X")
        v = tmp.coerce(parse_expression(c["minpoly"], {"X": tmp.gen, name: tmp.gen}))
        if v.den.degree != 0:
            raise TowerError("constant field minpoly must be a polynomial in X", code="tower-schema")
        constants = NF(v.num.monic().coeffs, name)
    return build_tower(d["levels"], constants)


def base_tower(constants=QQ, name="x"):
    return build_tower([Base(name)], constants)
