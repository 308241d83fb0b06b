"""Command-line interface.

Output is JSON by default (``--json`` is accepted and explicit);
``--pretty`` prints plain text instead.  Exit codes: 0 success, 1 domain
error (an ``{"error": {...}}`` object is printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra.fields import RationalFunctionField
from .certificate import residual
from .descent import descend_all
from .errors import CertificateError, FintermError
from .expr import format_element, format_poly
from .io import certificate_from_dict, certificate_to_dict, error_object, load_tower
from .laurent import default_truncation, expand, ord_at
from .ratint import integrate_rational
from .riccati import rational_solutions
from .tower import base_tower, derive, in_field


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"{path}: invalid JSON ({exc.msg})", code="invalid-json") from None


def _tower(args):
    if getattr(args, "tower", None):
        return load_tower(_read_json(args.tower))
    return base_tower()


def _level(t, args):
    lvl = t.height if args.level is None else args.level
    if not 0 <= lvl <= t.height:
        raise UsageError(f"level {lvl} outside 0..{t.height}")
    return lvl


# ---------------------------------------------------------------------------
# subcommands; each returns (json_object, pretty_text)


def cmd_derive(args):
    t = _tower(args)
    lvl = _level(t, args)
    e = t.parse(args.expr, lvl)
    d = format_element(derive(e))
    return {"input": format_element(e), "derivative": d}, d


def cmd_integrate(args):
    t = _tower(args)
    c = integrate_rational(t.parse(args.expr, 0), t if args.tower else None)
    out = certificate_to_dict(c)
    return out, _pretty_cert(c)


def _pretty_cert(c):
    lines = [f"f = {format_element(c.f)}", f"v = {format_element(c.v)}"]
    for ci, u in c.terms:
        lines.append(f"  {format_element(ci)} * log({format_element(u)})")
    for sm in c.sums:
        K = sm.field
        lines.append(
            f"  sum over {K.name} with {K.minpoly_str(K.name)} = 0 of "
            f"{format_element(sm.c)} * log({format_poly(sm.u, c.tower.base.name)})"
        )
    return "\n".join(lines)


def _load_cert(args):
    t = load_tower(_read_json(args.tower)) if args.tower else None
    return certificate_from_dict(_read_json(args.cert), t)


def cmd_verify(args):
    c = _load_cert(args)
    r = residual(c)
    if r:
        raise CertificateError(
            f"identity fails: residual {format_element(r)}", code="identity-fails"
        )
    return {"verified": True}, "verified"


def cmd_descend(args):
    c = _load_cert(args)
    rep = descend_all(c, strict=False)
    if args.trace:
        out = rep.to_dict()
        if rep.failure:
            return _failure(rep.failure, out)
        return out, json.dumps(out, indent=2)
    if rep.failure:
        return _failure(rep.failure)
    out = certificate_to_dict(rep.output, with_tower=True)
    return out, _pretty_cert(rep.output)


class _DomainFailure(Exception):
    def __init__(self, obj):
        super().__init__(obj.get("message", ""))
        self.obj = obj


def _failure(err, extra=None):
    obj = {"error": err}
    if extra is not None:
        obj["report"] = extra
    raise _DomainFailure(obj)


def _series_field(t, lvl, var):
    if var is None:
        F = t.field(lvl)
        if not isinstance(F, RationalFunctionField):
            raise UsageError(f"level {lvl} is not a transcendental layer; pass --var")
        return F
    for F in t.fields():
        if F.name == var:
            if not isinstance(F, RationalFunctionField):
                raise UsageError(f"{var} is algebraic; Laurent expansion needs a transcendental generator")
            return F
    raise UsageError(f"unknown generator {var!r}")


def cmd_laurent(args):
    t = _tower(args)
    lvl = _level(t, args)
    F = _series_field(t, lvl, args.var)
    e = in_field(t.parse(args.expr, lvl), F)
    if e is None:
        raise FintermError(f"{args.expr} does not lie in the field generated by {F.name}")
    a = in_field(t.parse(args.at, lvl), F.base)
    if a is None:
        raise FintermError(f"expansion point {args.at} is not in the coefficient field of {F.name}")
    N = args.N if args.N is not None else default_truncation()
    if not e:
        return {"order": None, "coefficients": []}, "zero"
    s = expand(e, a, N)
    assert s.order == ord_at(e, a)
    coeffs = [format_element(c) for c in s.coeffs]
    text = f"order {s.order}\n" + "\n".join(f"  [{F.name} - ({args.at})]^{s.order + j}: {c}" for j, c in enumerate(coeffs))
    return {"point": args.at, "generator": F.name, "order": s.order, "coefficients": coeffs}, text


def cmd_riccati(args):
    t = base_tower()
    r = t.parse(args.r, 0)
    s = t.parse(args.s, 0)
    res = rational_solutions(r, s)
    sols = [format_element(u) for u in res.solutions]
    out = {"solutions": sols}
    if res.families:
        out["families"] = [
            {
                "parameters": fam["parameters"],
                "representative": format_element(fam["representative"]),
                "shift": format_element(fam["shift"]),
                "omega": format_element(fam["omega"]),
                "basis": [format_element(b) for b in fam["basis"]],
            }
            for fam in res.families
        ]
    from .algebra.numbers import NumberField

    if isinstance(res.constants, NumberField):
        out["constants"] = {"name": res.constants.name, "minpoly": res.constants.minpoly_str("X")}
    text = "\n".join(sols) if sols else "no rational solutions"
    return out, text


def cmd_build_tower(args):
    t = load_tower(_read_json(args.file))
    out = {"height": t.height, "layers": t.describe(), "tower": t.to_dict()}
    lines = [f"{d['level']}: {d['kind']} {', '.join(d['generators'])}" for d in t.describe()]
    return out, "\n".join(lines)


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="finterm", description="Integration in finite terms over differential towers.")
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="JSON output (default)")
    g.add_argument("--pretty", action="store_true", help="plain-text output")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("derive", parents=[fmt], help="derivative of an expression")
    s.add_argument("expr")
    s.add_argument("--tower")
    s.add_argument("--level", type=int)
    s.set_defaults(run=cmd_derive)

    s = sub.add_parser("integrate-rational", parents=[fmt], help="certificate for a rational function")
    s.add_argument("expr")
    s.add_argument("--tower")
    s.set_defaults(run=cmd_integrate)

    s = sub.add_parser("verify-cert", parents=[fmt], help="check a certificate")
    s.add_argument("--tower")
    s.add_argument("--cert", required=True)
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("descend", parents=[fmt], help="descend a certificate to the base field")
    s.add_argument("--tower")
    s.add_argument("--cert", required=True)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(run=cmd_descend)

    s = sub.add_parser("laurent", parents=[fmt], help="Laurent expansion in a tower generator")
    s.add_argument("expr")
    s.add_argument("--at", required=True)
    s.add_argument("--tower")
    s.add_argument("--level", type=int)
    s.add_argument("--var")
    s.add_argument("--N", type=int)
    s.set_defaults(run=cmd_laurent)

    s = sub.add_parser("riccati", parents=[fmt], help="rational solutions of u' + u^2 = r u + s")
    s.add_argument("--r", default="0")
    s.add_argument("--s", required=True)
    s.set_defaults(run=cmd_riccati)

    s = sub.add_parser("build-tower", parents=[fmt], help="validate and describe a tower file")
    s.add_argument("file")
    s.set_defaults(run=cmd_build_tower)
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    pretty = False
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        pretty = args.pretty
        obj, text = args.run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        print(parser.format_usage().rstrip(), file=stderr)
        return 2
    except _DomainFailure as exc:
        _emit_error(exc.obj, pretty, stdout, stderr)
        return 1
    except FintermError as exc:
        _emit_error({"error": error_object(exc)}, pretty, stdout, stderr)
        return 1
    except (ZeroDivisionError, ValueError, TypeError) as exc:
        _emit_error({"error": {"code": "invalid-input", "message": str(exc)}}, pretty, stdout, stderr)
        return 1
    if pretty:
        print(text, file=stdout)
    else:
        print(json.dumps(obj, indent=2), file=stdout)
    return 0


def _emit_error(obj, pretty, stdout, stderr):
    err = obj["error"]
    print(f"error [{err.get('code')}]: {err.get('message')}", file=stderr)
    if not pretty:
        print(json.dumps(obj, indent=2), file=stdout)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
