import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finterm.cli import run
from finterm.errors import ParseError
from finterm.expr import format_element
from finterm.tower import SL2, Base, Log, build_tower

DIHEDRAL = {"levels": [{"kind": "base"}, {"kind": "dihedral", "minpoly": "alpha^2 - x", "gamma": "1"}]}
AIRY = {"levels": [{"kind": "base"}, {"kind": "sl2", "r": "0", "s": "x"}]}
LOG = {"levels": [{"kind": "base"}, {"kind": "log", "arg": "x"}]}


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def cli_json(*argv):
    code, out, err = cli(*argv)
    return code, (json.loads(out) if out.strip() else None), err


def dump(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_parse_examples():
    T = build_tower([Base(), Log("x")])
    e = T.parse("1/(x^2-1)", 0)
    assert T.parse(format_element(e), 0) == e
    with pytest.raises(ParseError):
        T.parse("theta'", 0)
    e = T.parse("(t1+x)/t1")
    assert e == 1 + T.parse("x") / T.parse("t1")
    assert T.parse(format_element(e)) == e
    for bad in ["2x", "x^", "(x", "1/0", "x^1.5", "y"]:
        with pytest.raises(ParseError):
            T.parse(bad, 1)


def test_derive():
    code, d, _ = cli_json("derive", "x^3")
    assert code == 0 and d["derivative"] == "3*x^2"
    code, text, _ = cli("derive", "x^2", "--pretty")
    assert code == 0 and text.strip() == "2*x"


def test_riccati_airy():
    code, d, _ = cli_json("riccati", "--r", "0", "--s", "x")
    assert code == 0 and d == {"solutions": []}


def test_riccati_family():
    code, d, _ = cli_json("riccati", "--s", "0")
    assert code == 0 and d["families"][0]["parameters"] == 1


def test_descend_dihedral(tmp_path):
    tower = dump(tmp_path, "dihedral.json", DIHEDRAL)
    c = {"level": 1, "terms": [{"c": "1", "u": "alpha"}], "v": "0", "f": "1/(2*x)"}
    path = dump(tmp_path, "c.json", c)
    code, out, _ = cli_json("descend", "--tower", tower, "--cert", path)
    assert code == 0
    assert out["level"] == 0 and out["terms"] == [{"c": "1/2", "u": "x"}]
    # the emitted certificate is accepted back
    back = dump(tmp_path, "out.json", out)
    assert cli_json("verify-cert", "--cert", back)[0] == 0
    code, rep, _ = cli_json("descend", "--tower", tower, "--cert", path, "--trace")
    assert code == 0 and rep["output"]["level"] == 0 and rep["steps"]


def test_descend_failure(tmp_path):
    tower = dump(tmp_path, "dihedral.json", DIHEDRAL)
    path = dump(tmp_path, "c.json", {"level": 1, "terms": [{"c": "1", "u": "eta"}], "v": "0", "f": "alpha"})
    code, out, err = cli_json("descend", "--tower", tower, "--cert", path)
    assert code == 1 and out["error"]["code"] == "f-not-in-base" and "f-not-in-base" in err
    code, out, _ = cli_json("descend", "--tower", tower, "--cert", path, "--trace")
    assert code == 1 and out["report"]["failure"]["code"] == "f-not-in-base"


def test_verify_corrupted(tmp_path):
    code, cert, _ = cli_json("integrate-rational", "(x^4+1)/(x^3-x)")
    assert code == 0
    cert["terms"][0]["c"] = "7"
    path = dump(tmp_path, "bad.json", cert)
    code, out, err = cli_json("verify-cert", "--cert", path)
    assert code == 1 and out["error"]["code"] == "identity-fails"
    assert "identity fails" in err


def test_laurent(tmp_path):
    tower = dump(tmp_path, "airy.json", AIRY)
    code, d, _ = cli_json("laurent", "1/(alpha-1)", "--at", "1", "--tower", tower, "--var", "alpha", "--N", "2")
    assert code == 0 and d["order"] == -1 and d["coefficients"] == ["1", "0", "0"]
    code, d, _ = cli_json("laurent", "1/(t1-1)^2", "--at", "1", "--tower", dump(tmp_path, "log.json", LOG))
    assert code == 0 and d["order"] == -2


def test_build_tower(tmp_path):
    path = dump(tmp_path, "airy.json", AIRY)
    code, d, _ = cli_json("build-tower", path)
    assert code == 0 and d["height"] == 1
    again = dump(tmp_path, "again.json", d["tower"])
    code, d2, _ = cli_json("build-tower", again)
    assert code == 0 and d2 == d
    assert build_tower([Base(), SL2("0", "x")]).height == 1


def test_usage_errors(tmp_path):
    assert cli()[0] == 2
    assert cli("frobnicate")[0] == 2
    assert cli("descend")[0] == 2
    assert cli("verify-cert", "--cert", str(tmp_path / "missing.json"))[0] == 2
    assert cli("derive", "x", "--level", "7")[0] == 2


def test_domain_errors(tmp_path):
    code, out, _ = cli_json("derive", "x +* 2")
    assert code == 1 and out["error"]["code"]
    code, out, _ = cli_json("verify-cert", "--cert", dump(tmp_path, "junk.json", "{not json"))
    assert code == 1 and out["error"]["code"] == "invalid-json"
    code, out, _ = cli_json("build-tower", dump(tmp_path, "t.json", {"levels": [{"kind": "base"}, {"kind": "nope"}]}))
    assert code == 1


def test_every_output_is_json(tmp_path):
    tower = dump(tmp_path, "log.json", LOG)
    for argv in [
        ["derive", "t1^2", "--tower", tower],
        ["integrate-rational", "1/(x^3-2)"],
        ["integrate-rational", "1/(x^2+1)"],
        ["riccati", "--s", "2/x^2"],
        ["riccati", "--s", "2"],
        ["build-tower", tower],
    ]:
        code, out, _ = cli(*argv)
        assert code == 0
        d = json.loads(out)
        assert json.loads(json.dumps(d)) == d


@pytest.mark.parametrize("expr", ["1/(x^3-2)", "(x^4+1)/(x^3-x)", "1/(x^2+1)", "x^2", "1/(x^6+x+1)"])
def test_integrate_roundtrip(tmp_path, expr):
    code, cert, _ = cli_json("integrate-rational", expr)
    assert code == 0
    path = dump(tmp_path, "c.json", cert)
    code, out, _ = cli_json("verify-cert", "--cert", path)
    assert code == 0 and out == {"verified": True}


# ---------------------------------------------------------------------------
# fabricated bad input

junk = st.text(alphabet="x+-*/^()0123456789 .ab'", max_size=12)


@given(junk)
@settings(max_examples=60, deadline=None)
def test_exit_codes_on_junk_expressions(src):
    code, out, err = cli("derive", "--", src)
    assert code in (0, 1)
    json.loads(out)
    if code == 1:
        assert err.startswith("error [")


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-3, 3) | st.text(max_size=5),
    lambda ch: st.lists(ch, max_size=3) | st.dictionaries(st.sampled_from(["level", "terms", "v", "f", "c", "u", "sums"]), ch, max_size=4),
    max_leaves=8,
)


@given(json_values)
@settings(max_examples=60, deadline=None)
def test_exit_codes_on_junk_certificates(tmp_path_factory, obj):
    path = tmp_path_factory.mktemp("c") / "c.json"
    path.write_text(json.dumps(obj))
    code, out, err = cli("verify-cert", "--cert", str(path))
    assert code in (0, 1)
    if code == 1:
        assert "error" in json.loads(out)


@given(st.lists(st.sampled_from(["derive", "--level", "-1", "--tower", "x", "--N", "descend", "--bogus"]), max_size=4))
@settings(max_examples=40, deadline=None)
def test_exit_codes_on_junk_argv(argv):
    code, out, err = cli(*argv)
    assert code in (0, 1, 2)
    if code == 2:
        assert out == "" and "usage" in err
