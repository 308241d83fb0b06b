"""Descent of elementary-integral certificates through a tower.

A certificate over ``E_m`` for ``f`` in ``E_0`` is pushed down one internal
field at a time.  While a field ``F = B(t)`` (or ``B[theta]``) is being
removed the working state is

    f = sum c_i u_i'/u_i + v' + sum e_j g_j

where the extras ``e_j g_j`` (constants ``e_j``) collect contributions such
as ``e t'`` from a primitive generator.  Rules per field kind:

* primitive-like (``t' in B``): every ``u_i`` lies in ``B`` and
  ``v = v_0 + e t`` with ``e`` constant; the extra is ``e t'``;
* hyperexponential (``t'/t in B``): ``u_i = v_i t^(m_i)``; the extra is
  ``(sum c_i m_i) t'/t`` and ``v`` is replaced by its ``t^0`` coefficient;
* algebraic: apply ``tr/d`` (``u -> nr(u)`` with constant ``c/d``);
* Riccati (SL2 ``alpha``): everything already lies in ``B`` and the
  ``beta`` extra has coefficient zero;
* Weierstrass: everything already lies in ``B``.

Each membership claim is checked.  When a check fails and the constants
are linearly dependent over QQ they are merged first and the rule retried.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .algebra.fields import AlgElement, RatFunc, depth_of
from .certificate import Certificate, independent, merge_signed, merge_terms, residual, sum_part, tidy, verify
from .errors import DescentError
from .expr import format_element
from .tower import NotInLevel, coerce_down, derive, in_field, logderiv, trace_norm


@dataclass
class DescentReport:
    input: Certificate
    steps: list = field(default_factory=list)
    output: Certificate | None = None
    failure: dict | None = None

    @property
    def ok(self):
        return self.output is not None and self.failure is None

    def to_dict(self):
        from .io import certificate_to_dict

        d = {
            "input": certificate_to_dict(self.input, with_tower=False),
            "steps": self.steps,
            "output": certificate_to_dict(self.output, with_tower=False) if self.output is not None else None,
        }
        if self.failure:
            d["failure"] = self.failure
        return d


class _Violation(Exception):
    def __init__(self, subcode, message, element=None):
        super().__init__(message)
        self.subcode = subcode
        self.element = element


@dataclass
class _Extra:
    e: object
    g: object
    tag: str = "raw"


@dataclass
class _Work:
    f: object
    terms: list
    v: object
    extras: list = field(default_factory=list)


def _fmt(e):
    try:
        return format_element(e)
    except TypeError:
        return repr(e)


def _constant(e):
    """``e`` as a number if it is a literal constant, else ``None``."""
    x = e
    while depth_of(x) > 0:
        if not x.is_const():
            return None
        x = x.const_value()
    return x


def _need(e, B, what):
    r = in_field(e, B)
    if r is None:
        raise _Violation(f"{what}-not-in-lower", f"{what} {_fmt(e)} does not lie in the field below {B.name if B.depth else 'constants'}", e)
    return r


# ---------------------------------------------------------------------------
# per-field rules


def _zero_coeff_primitive(g, F, what):
    """``t^0`` coefficient of ``g`` in ``B[t]``."""
    x = in_field(g, F)
    if x is None:
        raise _Violation(f"{what}-above", f"{what} {_fmt(g)} lies above {F.name}", g)
    if x.den.degree > 0:
        raise _Violation(f"{what}-not-polynomial", f"{what} {_fmt(g)} is not a polynomial in {F.name}", g)
    return x.num[0]


def _laurent_parts(x, F, what):
    """``(numerator, k)`` with ``x = numerator / t^k`` or a violation."""
    den = x.den
    if den.degree > 0 and den.low_order() != den.degree:
        raise _Violation(f"{what}-not-laurent", f"{what} {_fmt(x)} has a denominator other than a power of {F.name}", x)
    return x.num, den.degree


def _rule_primitive(W, F, layer, info):
    B = F.base
    terms = [(c, _need(u, B, "u")) for c, u in W.terms]
    v = in_field(W.v, F)
    if v is None:
        raise _Violation("v-above", f"v lies above {F.name}", W.v)
    if v.den.degree > 0 or v.num.degree > 1:
        raise _Violation("v-not-linear", f"v is not of the form v0 + e*{F.name}", v)
    v0, e = v.num[0], v.num[1]
    ec = _constant(e)
    if ec is None:
        raise _Violation("v-coefficient-not-constant", f"coefficient of {F.name} in v is not constant", e)
    extras = []
    for x in W.extras:
        if in_field(x.g, B) is not None:
            extras.append(x)
        else:
            extras.append(_Extra(x.e, _zero_coeff_primitive(x.g, F, "extra"), x.tag))
    info["e"] = _fmt(ec)
    if ec:
        if F.kind == "log":
            arg = in_field(layer.data["a"], B)
            terms.append((ec, arg))
            info["fold"] = f"term ({_fmt(ec)}, {_fmt(arg)})"
        else:
            extras.append(_Extra(ec, in_field(F.gen_deriv, B), "primitive"))
            info["fold"] = f"extra {_fmt(ec)}*({_fmt(F.gen_deriv)})"
    return _Work(W.f, terms, v0, extras)


def _rule_hyperexp(W, F, layer, info):
    B = F.base
    terms = []
    e = 0
    ms = []
    for c, u in W.terms:
        x = in_field(u, F)
        if x is None:
            raise _Violation("u-above", f"argument {_fmt(u)} lies above {F.name}", u)
        num, k = _laurent_parts(x, F, "u")
        if num.low_order() != num.degree:
            raise _Violation("u-not-monomial", f"argument {_fmt(u)} is not a monomial in {F.name} over the field below", u)
        m = num.degree - k
        ms.append(m)
        e = e + c * m
        terms.append((c, _lift_b(num.lc, B)))
    v = in_field(W.v, F)
    if v is None:
        raise _Violation("v-above", f"v lies above {F.name}", W.v)
    num, k = _laurent_parts(v, F, "v")
    v0 = _lift_b(num[k], B)
    extras = []
    for x in W.extras:
        if in_field(x.g, B) is not None:
            extras.append(x)
            continue
        gx = in_field(x.g, F)
        if gx is None:
            raise _Violation("extra-above", f"extra {_fmt(x.g)} lies above {F.name}", x.g)
        gn, gk = _laurent_parts(gx, F, "extra")
        extras.append(_Extra(x.e, _lift_b(gn[gk], B), x.tag))
    info["exponents"] = ms
    info["e"] = _fmt(e)
    if e:
        if F.kind == "exp":
            v0 = v0 + e * in_field(layer.data["a"], B)
            info["fold"] = f"v += {_fmt(e)}*({_fmt(layer.data['a'])})"
        else:
            a = in_field(F.gen_deriv / F.gen, B)
            tag = "beta" if getattr(F, "sl2_role", None) == "y" else "hyperexp"
            extras.append(_Extra(e, a, tag))
            info["fold"] = f"extra {_fmt(e)}*({_fmt(a)})"
    elif getattr(F, "sl2_role", None) == "y":
        extras.append(_Extra(e, in_field(F.gen_deriv / F.gen, B), "beta"))
    return _Work(W.f, terms, v0, extras)


def _lift_b(c, B):
    if B.depth == 0:
        return c
    return B.coerce(c) if depth_of(c) < B.depth else c


def _rule_trace(W, F, layer, info):
    B = F.base
    d = F.degree
    terms = []
    for c, u in W.terms:
        ub = in_field(u, B)
        if ub is not None:
            terms.append((c, ub))
            continue
        x = in_field(u, F)
        if x is None:
            raise _Violation("u-above", f"argument {_fmt(u)} lies above {F.name}", u)
        _, nr = trace_norm(x)
        terms.append((c / d, nr))
    vb = in_field(W.v, B)
    if vb is None:
        x = in_field(W.v, F)
        if x is None:
            raise _Violation("v-above", f"v lies above {F.name}", W.v)
        tr, _ = trace_norm(x)
        vb = tr / d
    extras = []
    for x in W.extras:
        gb = in_field(x.g, B)
        if gb is not None:
            extras.append(x)
            continue
        gx = in_field(x.g, F)
        if gx is None:
            raise _Violation("extra-above", f"extra {_fmt(x.g)} lies above {F.name}", x.g)
        if layer.kind == "dihedral" and gx == F.gen:
            # c*tr(alpha)/2 = (c/4) gamma'/gamma
            gamma = in_field(layer.data["gamma"], B)
            terms.append((x.e / 4, gamma))
            info["dihedral_term"] = f"({_fmt(x.e / 4)}, {_fmt(gamma)})"
            continue
        tr, _ = trace_norm(gx)
        extras.append(_Extra(x.e, tr / d, x.tag))
    info["degree"] = d
    return _Work(W.f, terms, vb, extras)


def _rule_riccati(W, F, layer, info):
    B = F.base
    terms = [(c, _need(u, B, "u")) for c, u in W.terms]
    v = _need(W.v, B, "v")
    extras = []
    for x in W.extras:
        if x.tag == "beta":
            info["e"] = _fmt(x.e)
            if x.e:
                raise DescentError(
                    "sl2-e-nonzero",
                    f"coefficient e = {_fmt(x.e)} of beta is nonzero; the input violates the hypotheses "
                    "(f not in the base, an unverified certificate or new constants)",
                    layer=layer.index,
                    diagnostic={"e": _fmt(x.e)},
                )
            continue
        extras.append(_Extra(x.e, _need(x.g, B, "extra"), x.tag))
    return _Work(W.f, terms, v, extras)


def _rule_weierstrass(W, Ft, layer, info):
    B = Ft.base
    terms = [(c, _need(u, B, "u")) for c, u in W.terms]
    v = _need(W.v, B, "v")
    extras = [_Extra(x.e, _need(x.g, B, "extra"), x.tag) for x in W.extras]
    return _Work(W.f, terms, v, extras)


_RULES = {
    "log": ("monomial", _rule_primitive),
    "primitive": ("monomial", _rule_primitive),
    "exp": ("monomial", _rule_hyperexp),
    "hyperexp": ("monomial", _rule_hyperexp),
    "algebraic": ("algebraic-trace", _rule_trace),
    "dihedral-alpha": ("algebraic-trace", _rule_trace),
    "sl2-xi": ("algebraic-trace", _rule_trace),
    "riccati": ("sl2-step4", _rule_riccati),
}


def _apply(W, F, layer, rule, name, steps):
    info = {"level": layer.index, "field": F.name, "rule": name}
    out = _with_retry(W, lambda w: rule(w, F, layer, info), layer, F, info)
    steps.append(info)
    return out


def _merge_stages(W, F):
    """Cheapest first: pair up +-equal constants above ``B``, then merge the
    terms above ``B``, then everything."""
    B = F.base
    high = [(c, u) for c, u in W.terms if in_field(u, B) is None]
    low = [(c, u) for c, u in W.terms if in_field(u, B) is not None]
    if len(high) > 1:
        yield "signed", merge_signed(high) + low
        if not independent([c for c, _ in high]):
            yield "above-base", merge_terms(high) + low
    if len(W.terms) > 1 and not independent([c for c, _ in W.terms]):
        yield "all", merge_terms(W.terms)


def _with_retry(W, run, layer, F, info):
    try:
        return run(W)
    except _Violation as exc:
        last = exc
    for stage, terms in _merge_stages(W, F):
        info["normalized"] = stage
        try:
            return run(_Work(W.f, terms, W.v, W.extras))
        except _Violation as exc:
            last = exc
    info.pop("normalized", None)
    raise _structure_error(last, layer, F) from None


def _structure_error(exc, layer, F):
    diag = {"subcode": exc.subcode, "field": F.name}
    if exc.element is not None:
        diag["element"] = _fmt(exc.element)
        diag.update(_laurent_diagnostic(exc.element, F, layer))
        if layer.kind == "weierstrass":
            diag.update(_divisor_diagnostic(exc.element, layer))
    return DescentError(
        "structure-violation",
        f"level {layer.index} ({layer.kind}): {exc}; this means the input violates "
        "its hypotheses (f not in the base, an unverified certificate or new constants)",
        layer=layer.index,
        diagnostic=diag,
    )


def _laurent_diagnostic(e, F, layer):
    if layer.kind != "sl2":
        return {}
    from .laurent import ord_at

    Fa = layer.fields[0]
    x = in_field(e, Fa)
    if x is None or not x:
        return {}
    out = {"degree_num": x.num.degree, "degree_den": x.den.degree, "order_at_infinity": x.den.degree - x.num.degree}
    if x.den.degree == 1:
        a = -x.den[0]
        out["pole"] = _fmt(a)
        out["order_at_pole"] = ord_at(x, a)
    return out


def _divisor_diagnostic(e, layer):
    from .weierstrass import WeierstrassLayer, constant_point_divisor

    try:
        tower = layer.tower
        wl = WeierstrassLayer(tower, layer.index)
        d = constant_point_divisor(e, wl)
        return {"divisor": d.as_list(), "divisor_residual": d.residual}
    except Exception:  # diagnostics must never mask the primary error
        return {}


def _descend_layer(W, layer, steps):
    fields = layer.fields
    if layer.kind == "base":
        return W
    if layer.kind == "weierstrass":
        info = {"level": layer.index, "field": fields[0].name, "rule": "weierstrass"}
        W2 = _with_retry(W, lambda w: _rule_weierstrass(w, fields[0], layer, info), layer, fields[0], info)
        steps.append(info)
        return W2
    for F in reversed(fields):
        name, rule = _RULES[F.kind]
        W = _apply(W, F, layer, rule, name, steps)
    return W


# ---------------------------------------------------------------------------
# public API


def _start(c, tower, target):
    t = tower or c.tower
    if t is None:
        raise DescentError("no-tower", "certificate has no tower attached")
    if isinstance(coerce_down(t.lift(c.f, c.level), t, target), NotInLevel):
        raise DescentError(
            "f-not-in-base",
            f"f = {_fmt(c.f)} does not lie in level {target}; nothing to descend",
            layer=c.level,
        )
    try:
        ok = verify(c, t)
    except Exception as exc:
        raise DescentError("certificate-unverified", f"certificate cannot be checked: {exc}", layer=c.level) from None
    if not ok:
        raise DescentError(
            "certificate-unverified",
            "identity fails: sum c_i u_i'/u_i + v' != f at the certificate level",
            layer=c.level,
        )
    return t


def _finish(W, t, level, steps):
    """Fold leftover extras into certificate form at ``level``."""
    if W.extras:
        extras = [x for x in W.extras if x.e]
        if extras and level != 0:
            raise DescentError(
                "primitive-residual",
                "a primitive or hyperexponential contribution e*g remains above the base; "
                "it can only be folded over C(x)",
                layer=level,
                diagnostic={"extras": [(_fmt(x.e), _fmt(x.g)) for x in extras]},
            )
        for x in extras:
            W = _fold_rational(W, x, t, steps)
        W = _Work(W.f, W.terms, W.v, [])
    F = t.field(level)
    terms = [(c, t.lift(u, level)) for c, u in W.terms]
    return Certificate(level, tuple(terms), t.lift(W.v, level), t.lift(W.f, level), t)


def _fold_rational(W, x, t, steps):
    from .ratint import integrate_rational

    g = t.lift(x.g, 0)
    cert = integrate_rational(g, t)
    if cert.tower is not t or cert.sums:
        raise DescentError(
            "primitive-residual",
            f"integrating the leftover {_fmt(x.e)}*({_fmt(g)}) needs new constants",
            layer=0,
            diagnostic={"extra": (_fmt(x.e), _fmt(g))},
        )
    steps.append({"level": 0, "rule": "fold-rational", "extra": [_fmt(x.e), _fmt(g)]})
    terms = list(W.terms) + [(x.e * c, u) for c, u in cert.terms]
    return _Work(W.f, terms, W.v + x.e * cert.v, W.extras)


def descend_level(c, tower=None, steps=None):
    """One tower level down: certificate at ``c.level - 1``."""
    t = _start(c, tower, c.level - 1)
    steps = [] if steps is None else steps
    layer = t.layers[c.level]
    W = _Work(_f_without_sums(c, t), list(c.terms), c.v)
    W = _descend_layer(W, layer, steps)
    out = _with_sums(_finish(W, t, c.level - 1, steps), c, t)
    if out.level == 0:
        out = tidy(out)
    return out


def _f_without_sums(c, t):
    """Conjugate sums live in the base field; they ride along untouched."""
    if not c.sums:
        return c.f
    return t.lift(c.f, c.level) - t.lift(sum_part(c.sums, t), c.level)


def _with_sums(out, c, t):
    if not c.sums:
        return out
    return replace(out, f=t.lift(c.f, out.level), sums=c.sums)


def _kind_guard(c, t, kinds, name):
    layer = t.layers[c.level]
    if layer.kind not in kinds:
        raise DescentError("wrong-layer", f"{name} expects a {'/'.join(kinds)} layer, level {c.level} is {layer.kind}", layer=c.level)


def descend_monomial(c, tower=None):
    t = tower or c.tower
    _kind_guard(c, t, ("log", "exp", "primitive", "hyperexp"), "descend_monomial")
    return descend_level(c, t)


def descend_algebraic(c, tower=None):
    t = tower or c.tower
    _kind_guard(c, t, ("algebraic",), "descend_algebraic")
    return descend_level(c, t)


def descend_dihedral(c, tower=None):
    t = tower or c.tower
    _kind_guard(c, t, ("dihedral",), "descend_dihedral")
    return descend_level(c, t)


def descend_sl2(c, tower=None):
    t = tower or c.tower
    _kind_guard(c, t, ("sl2",), "descend_sl2")
    return descend_level(c, t)


def descend_weierstrass(c, tower=None):
    t = tower or c.tower
    _kind_guard(c, t, ("weierstrass",), "descend_weierstrass")
    return descend_level(c, t)


def descend_all(c, tower=None, strict=True):
    """Descend to the base field; returns a :class:`DescentReport`.

    With ``strict`` (the default) failures raise :class:`DescentError` with the
    partial report attached; otherwise the report carries the failure.
    """
    t = tower or c.tower
    report = DescentReport(c)
    try:
        t = _start(c, t, 0)
        W = _Work(_f_without_sums(c, t), list(c.terms), c.v)
        for lvl in range(c.level, 0, -1):
            W = _descend_layer(W, t.layers[lvl], report.steps)
        out = tidy(_with_sums(_finish(W, t, 0, report.steps), c, t))
        if residual(out, t):
            raise DescentError(
                "postcondition-failed",
                "descended certificate does not verify; please report this input",
                layer=0,
            )
        report.output = out
    except DescentError as exc:
        exc.report = report
        report.failure = exc.to_dict()
        if strict:
            raise
    return report
