"""JSON forms of constants, towers and certificates."""

from __future__ import annotations

from fractions import Fraction

from .algebra.numbers import QQ, AlgNumber, NumberField, format_rational
from .algebra.poly import Poly
from .certificate import Certificate, ConjugateSum
from .errors import CertificateError, FintermError, ParseError, TowerError
from .expr import format_element, format_poly, parse_expression
from .tower import tower_from_dict


def constant_to_json(c):
    if isinstance(c, (int, Fraction)):
        return format_rational(c)
    if isinstance(c, AlgNumber):
        if c.is_rational():
            return format_rational(c.coords[0])
        K = c.field
        return {
            "field": format_poly(Poly(K.minpoly, QQ), K.name),
            "name": K.name,
            "coords": [format_rational(q) for q in c.coords],
        }
    raise TypeError(f"not a constant: {c!r}")


def constant_from_json(d, K=QQ):
    """Read a constant into the field ``K`` (a matching number field when algebraic)."""
    if isinstance(d, (int, float)) and not isinstance(d, bool):
        if isinstance(d, float):
            raise CertificateError("constants must be exact (use \"p/q\")", code="certificate-schema")
        return K.coerce(Fraction(d)) if K is not QQ else Fraction(d)
    if isinstance(d, str):
        try:
            q = Fraction(d.strip())
            return K.coerce(q) if K is not QQ else q
        except ValueError:
            pass
        if K is QQ:
            raise CertificateError(f"cannot read constant {d!r}", code="certificate-schema")
        v = parse_expression(d, {K.name: K.gen})
        return K.coerce(v)
    if isinstance(d, dict) and "coords" in d:
        if K is QQ:
            raise CertificateError("algebraic constant but the tower has rational constants", code="constant-field")
        want = d.get("field")
        if want is not None and _norm_minpoly(want, d.get("name", K.name)) != K.minpoly:
            raise CertificateError(f"constant lives in {want}, not in the tower's constants", code="constant-field")
        coords = [Fraction(str(q)) for q in d["coords"]]
        if len(coords) != K.degree:
            raise CertificateError("coordinate vector has the wrong length", code="certificate-schema")
        return K.element(coords)
    raise CertificateError(f"cannot read constant {d!r}", code="certificate-schema")


def _norm_minpoly(src, name):
    from .algebra.fields import RationalFunctionField

    tmp = RationalFunctionField(QQ, "X")
    v = tmp.coerce(parse_expression(src, {name: tmp.gen, "X": tmp.gen}))
    return v.num.monic().coeffs


def number_field_from_json(d):
    name = d.get("name", "a")
    return NumberField(_norm_minpoly(d["minpoly"], name), name)


def tower_to_dict(t):
    return t.to_dict()


def load_tower(d):
    if not isinstance(d, dict):
        raise TowerError("tower file must be a JSON object", code="tower-schema")
    return tower_from_dict(d)


def certificate_to_dict(c, with_tower=True):
    d = {
        "level": c.level,
        "terms": [{"c": constant_to_json(ci), "u": format_element(u)} for ci, u in c.terms],
        "v": format_element(c.v),
        "f": format_element(c.f),
    }
    if c.sums:
        d["sums"] = [_sum_to_json(s, c.tower) for s in c.sums]
    if with_tower and c.tower is not None:
        d["tower"] = c.tower.to_dict()
    return d


def _sum_to_json(s, tower):
    K = s.field
    var = tower.base.name if tower is not None else "x"
    return {
        "field": format_poly(Poly(K.minpoly, QQ), K.name),
        "name": K.name,
        "c": [format_rational(q) for q in s.c.coords],
        "u": format_poly(s.u, var),
    }


def _sum_from_json(d, tower):
    from .algebra.fields import RationalFunctionField

    if not isinstance(d, dict) or not {"field", "name", "c", "u"} <= set(d):
        raise CertificateError("a conjugate sum needs 'field', 'name', 'c' and 'u'", code="certificate-schema")
    name = d["name"]
    K = NumberField(_norm_minpoly(d["field"], name), name)
    coords = [Fraction(str(q)) for q in d["c"]]
    if len(coords) != K.degree:
        raise CertificateError("coordinate vector has the wrong length", code="certificate-schema")
    c = K.element(coords)
    G = RationalFunctionField(K, tower.base.name)
    u = G.coerce(parse_expression(d["u"], {tower.base.name: G.gen, name: G.coerce(K.gen)}))
    if u.den.degree != 0 or not u:
        raise CertificateError("conjugate-sum argument must be a nonzero polynomial", code="certificate-schema")
    return ConjugateSum(c, u.num * (K.one / u.den.lc))


def certificate_from_dict(d, tower=None):
    if not isinstance(d, dict):
        raise CertificateError("certificate must be a JSON object", code="certificate-schema")
    if tower is None:
        if "tower" not in d:
            raise CertificateError("no tower given and none embedded in the certificate", code="certificate-schema")
        tower = load_tower(d["tower"])
    try:
        level = int(d.get("level", tower.height))
    except (TypeError, ValueError):
        raise CertificateError("level must be an integer", code="certificate-schema") from None
    if not 0 <= level <= tower.height:
        raise CertificateError(f"level {level} is outside the tower (height {tower.height})", code="level-mismatch")
    K = tower.constants
    try:
        terms = []
        for k, t in enumerate(d.get("terms", [])):
            if not isinstance(t, dict) or "c" not in t or "u" not in t:
                raise CertificateError(f"term {k + 1} needs fields 'c' and 'u'", code="certificate-schema")
            c = constant_from_json(t["c"], K)
            u = tower.parse(t["u"], level)
            if not u:
                raise CertificateError(f"argument u{k + 1} is zero", code="zero-argument")
            terms.append((c, u))
        v = tower.parse(d.get("v", "0"), level)
        if "f" not in d:
            raise CertificateError("certificate needs a target 'f'", code="certificate-schema")
        f = tower.parse(d["f"], level)
        sums = tuple(_sum_from_json(e, tower) for e in d.get("sums", []))
    except TowerError as exc:
        raise CertificateError(str(exc), code="level-mismatch") from None
    except ParseError as exc:
        raise CertificateError(str(exc), code="certificate-schema") from None
    return Certificate(level, tuple(terms), v, f, tower, sums)


def error_object(exc):
    if isinstance(exc, FintermError):
        return exc.to_dict()
    return {"code": "error", "message": str(exc)}
