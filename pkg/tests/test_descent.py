import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finterm import descent
from finterm.certificate import Certificate, make_certificate, normalize_constants, verify
from finterm.descent import (
    descend_algebraic,
    descend_all,
    descend_dihedral,
    descend_level,
    descend_monomial,
    descend_sl2,
    descend_weierstrass,
)
from finterm.errors import DescentError
from finterm.ratint import integrate_rational
from finterm.tower import SL2, Algebraic, Base, Dihedral, Exp, Log, Weierstrass, build_tower

from towergen import KINDS, equivalent, lift_disguised, log_profile, random_base_certificate, random_tower, rng_for

seeds = st.integers(0, 10 ** 9)


def mk(T, level, terms, v, f):
    return make_certificate(T, level, [(Fraction(c), T.parse(u, level)) for c, u in terms], T.parse(v, level), T.parse(f, level))


def base(T, terms, v, f):
    return mk(T, 0, terms, v, f)


def test_log_example():
    T = build_tower([Base(), Log("x")])
    out = descend_all(mk(T, 1, [], "t1", "1/x")).output
    assert equivalent(out, base(T, [(1, "x")], "0", "1/x"))


def test_exp_example():
    T = build_tower([Base(), Exp("x")])
    rep = descend_all(mk(T, 1, [(1, "t1")], "0", "1"))
    assert equivalent(rep.output, base(T, [], "x", "1"))
    assert rep.steps[0]["e"] == "1"


def test_dihedral_example():
    T = build_tower([Base(), Dihedral("alpha^2-x", "1")])
    out = descend_dihedral(mk(T, 1, [(1, "alpha")], "0", "1/(2*x)"))
    assert out.level == 0 and verify(out)
    assert [(c, str(u)) for c, u in out.terms] == [(Fraction(1, 2), "x")]


def test_algebraic_example():
    T = build_tower([Base(), Algebraic("theta^2-x")])
    out = descend_algebraic(mk(T, 1, [(2, "theta")], "0", "1/x"))
    assert equivalent(out, base(T, [(1, "x")], "0", "1/x"))


def test_sl2_example():
    T = build_tower([Base(), SL2("0", "x", "1")])
    rep = descend_all(mk(T, 1, [(1, "1/y"), (1, "x^3*y")], "0", "3/x"))
    assert equivalent(rep.output, base(T, [(1, "x^3")], "0", "3/x"))
    es = [s["e"] for s in rep.steps if s["rule"] == "sl2-step4"]
    assert es == ["0"]
    assert descend_sl2(rep.input).level == 0


def test_weierstrass_example():
    T = build_tower([Base(), Weierstrass("0", "4", "1")])
    out = descend_weierstrass(mk(T, 1, [(1, "theta*x"), (-1, "theta")], "0", "1/x"))
    assert equivalent(out, base(T, [(1, "x")], "0", "1/x"))


def test_mixed_example():
    T = build_tower([Base(), Dihedral("alpha^2-x", "1"), Log("x+1")])
    c = mk(T, 2, [(1, "alpha"), (1, "x+1")], "t2", "1/(2*x)+2/(x+1)")
    one = descend_monomial(c)
    assert one.level == 1 and verify(one)
    out = descend_all(c).output
    assert equivalent(out, base(T, [(Fraction(1, 2), "x"), (2, "x+1")], "0", "1/(2*x)+2/(x+1)"))


def test_wrong_layer():
    T = build_tower([Base(), Log("x")])
    with pytest.raises(DescentError) as e:
        descend_algebraic(mk(T, 1, [], "t1", "1/x"))
    assert e.value.code == "wrong-layer"


@pytest.mark.parametrize(
    "layer, terms, v, f",
    [
        (Dihedral("alpha^2-x", "1"), [(1, "eta")], "0", "alpha"),
        (SL2("0", "x", "1"), [(1, "xi")], "0", "alpha"),
        (Weierstrass("0", "4", "1"), [(1, "theta")], "0", "thetap/theta"),
        (Log("x"), [], "t1^2", "2*t1/x"),
    ],
)
def test_f_not_in_base(layer, terms, v, f):
    T = build_tower([Base(), layer])
    c = mk(T, 1, terms, v, f)
    assert verify(c)
    with pytest.raises(DescentError) as e:
        descend_all(c)
    assert e.value.code == "f-not-in-base"
    rep = descend_all(c, strict=False)
    assert not rep.ok and rep.failure["code"] == "f-not-in-base"


def test_unverified_rejected():
    T = build_tower([Base(), Exp("x")])
    c = mk(T, 1, [(1, "t1+1")], "0", "1")
    with pytest.raises(DescentError) as e:
        descend_all(c)
    assert e.value.code == "certificate-unverified"
    with pytest.raises(DescentError) as e:
        descend_level(c)
    assert e.value.code == "certificate-unverified"


def test_no_tower():
    T = build_tower([Base(), Log("x")])
    c = mk(T, 1, [], "t1", "1/x")
    with pytest.raises(DescentError) as e:
        descend_all(Certificate(c.level, c.terms, c.v, c.f, None))
    assert e.value.code == "no-tower"


def test_structure_violation_when_check_bypassed(monkeypatch):
    # an unverified input slipping past the identity check still cannot be descended silently
    monkeypatch.setattr(descent, "verify", lambda c, t=None: True)
    T = build_tower([Base(), Exp("x")])
    with pytest.raises(DescentError) as e:
        descend_all(mk(T, 1, [(1, "t1+1")], "0", "1"))
    assert e.value.code == "structure-violation"
    assert e.value.diagnostic["subcode"] == "u-not-monomial"


def test_report_dict():
    T = build_tower([Base(), Log("x")])
    rep = descend_all(mk(T, 1, [], "t1", "1/x"))
    d = json.loads(json.dumps(rep.to_dict()))
    assert d["output"]["level"] == 0 and d["steps"][0]["rule"] == "monomial"
    assert "failure" not in d


def test_conjugate_sums_survive_descent():
    T = build_tower([Base(), Log("x")])
    c0 = integrate_rational(T.parse("1/(x^3 - 2)", 0), T)
    assert c0.sums
    rng = rng_for(3)
    c = lift_disguised(rng, c0, T)
    out = descend_all(c).output
    assert out.sums == c0.sums and verify(out)


def _roundtrip(seed, kinds, top=None):
    rng = rng_for(seed)
    T = random_tower(kinds)
    c0 = random_base_certificate(rng, T)
    c = lift_disguised(rng, c0, T, top)
    assert verify(c)
    out = descend_all(c).output
    assert out.level == 0 and verify(out)
    assert equivalent(out, normalize_constants(c0))


@given(seeds, st.sampled_from(KINDS))
@settings(max_examples=30, deadline=None)
def test_roundtrip_single_layer(seed, kind):
    _roundtrip(seed, [kind])


@given(seeds)
@settings(max_examples=10, deadline=None)
def test_roundtrip_log_exp(seed):
    _roundtrip(seed, ["log", "exp"])


@given(seeds, st.lists(st.sampled_from(KINDS), min_size=2, max_size=2))
@settings(max_examples=10, deadline=None)
def test_roundtrip_depth_two(seed, kinds):
    _roundtrip(seed, kinds)


@given(seeds)
@settings(max_examples=10, deadline=None)
def test_constant_span_conserved(seed):
    # base constants come back unchanged up to merging of equal logarithms
    rng = rng_for(seed)
    T = random_tower([rng.choice(KINDS)])
    c0 = random_base_certificate(rng, T)
    out = descend_all(lift_disguised(rng, c0, T)).output
    before = {k for k in log_profile(c0).values()}
    after = {k for k in log_profile(out).values()}
    assert after == before
