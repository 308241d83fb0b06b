import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finterm.errors import FintermError
from finterm.tower import Base, Weierstrass, build_tower, derive
from finterm.weierstrass import (
    O,
    WeierstrassCurve,
    WeierstrassLayer,
    constant_point_divisor,
    ec_add,
    point,
    translate,
    valuation_at,
    w_derive,
)

from towergen import rand_elem, rng_for

T4 = build_tower([Base(), Weierstrass("0", "4", "1")])
L4 = WeierstrassLayer(T4, 1)
E4 = L4.curve
TORSION = [point(0, 0), point(1, 0), point(-1, 0)]

# Y^2 = 4 X^3 + 68 is y^2 = x^3 + 17 with Y = 2y
T17 = build_tower([Base(), Weierstrass("-68", "0", "1")])
L17 = WeierstrassLayer(T17, 1)
E17 = L17.curve
P17 = [point(-2, 6), point(-1, 8), point(2, 10), point(4, 18), point(8, 46)]

TX = build_tower([Base(), Weierstrass("0", "4", "x")])
LX = WeierstrassLayer(TX, 1)

th, thp = L4.theta, L4.thetap


def test_singular_curve_rejected():
    with pytest.raises(FintermError):
        WeierstrassCurve(Fraction(1), Fraction(3))  # 27 - 27 = 0


def test_two_torsion_table():
    group = TORSION + [O]
    assert {str(p) for p in E4.two_torsion()} == {str(p) for p in TORSION}
    for p in group:
        assert ec_add(p, O, E4) == p
        assert ec_add(p, p, E4) == O
    for p, q in itertools.permutations(TORSION, 2):
        r = ec_add(p, q, E4)
        assert r in TORSION and r != p and r != q
    assert ec_add(point(0, 0), point(1, 0), E4) == point(-1, 0)


def test_off_curve_rejected():
    with pytest.raises(FintermError):
        ec_add(point(1, 1), O, E4)


def test_rational_points_group_axioms():
    pts = P17 + [-p for p in P17] + [O]
    for p in pts:
        assert E17.contains(p)
        assert ec_add(p, -p, E17) == O
    for p, q in itertools.product(pts, repeat=2):
        s = ec_add(p, q, E17)
        assert E17.contains(s)
        assert s == ec_add(q, p, E17)
    for p, q, r in itertools.product(P17[:3], repeat=3):
        assert ec_add(ec_add(p, q, E17), r, E17) == ec_add(p, ec_add(q, r, E17), E17)


def test_w_derive_examples():
    assert w_derive(th, L4) == thp
    rel = thp * thp - (4 * th ** 3 - 4 * th)
    assert not rel and not w_derive(rel, L4)
    assert w_derive(th ** 2, L4) == 2 * th * thp
    # alpha = x: theta'' = (alpha'/alpha) theta' + alpha^2 (12 theta^2 - g1)/2
    t, tp = LX.theta, LX.thetap
    x = LX.W.coerce(TX.base.gen)
    assert w_derive(tp, LX) == tp / x + x * x * (6 * t * t - 2)


def test_translate_examples():
    assert translate(th, point(1, 0), L4) == (th + 1) / (th - 1)
    assert translate(th, O, L4) == th
    c = L4.W.coerce(T4.base.gen + 3)
    assert translate(c, point(1, 0), L4) == c
    with pytest.raises(FintermError):
        translate(th, point(2, 1), L4)


seeds = st.integers(0, 10 ** 9)


@given(seeds)
@settings(max_examples=25)
def test_translate_commutes_with_derive(seed):
    rng = rng_for(seed)
    u = rand_elem(rng, L4.W)
    for p in [O] + TORSION:
        assert translate(w_derive(u, L4), p, L4) == w_derive(translate(u, p, L4), L4)


@given(seeds)
@settings(max_examples=15)
def test_translate_composition(seed):
    rng = rng_for(seed)
    u = rand_elem(rng, L4.W)
    p, q = rng.choice(TORSION), rng.choice(TORSION + [O])
    assert translate(translate(u, p, L4), q, L4) == translate(u, ec_add(p, q, E4), L4)
    v = rand_elem(rng, L17.W, max_deg=1)
    p, q = rng.choice(P17), rng.choice(P17)
    assert translate(translate(v, p, L17), q, L17) == translate(v, ec_add(p, q, E17), L17)


def test_translate_is_a_ring_map():
    rng = rng_for(7)
    for _ in range(5):
        u, v = rand_elem(rng, L4.W), rand_elem(rng, L4.W)
        for p in TORSION:
            assert translate(u * v, p, L4) == translate(u, p, L4) * translate(v, p, L4)
            assert translate(u + v, p, L4) == translate(u, p, L4) + translate(v, p, L4)


def test_valuation_examples():
    assert valuation_at(th - 1, point(1, 0), L4) == 2
    assert valuation_at(thp, point(1, 0), L4) == 1
    assert valuation_at(th, O, L4) == -2
    assert valuation_at(thp, O, L4) == -3
    with pytest.raises(FintermError):
        valuation_at(L4.W.zero, O, L4)


def test_valuation_ordinary_point():
    t, tp = L17.theta, L17.thetap
    p = point(2, 10)
    assert valuation_at(t - 2, p, L17) == 1
    assert valuation_at(t - 2, -p, L17) == 1
    assert valuation_at(tp - 10, p, L17) >= 1
    assert valuation_at(tp - 10, -p, L17) == 0


def test_divisor_examples():
    d = constant_point_divisor(th, L4)
    assert not d.residual
    assert d.points == {point(0, 0): 2, O: -2}
    d = constant_point_divisor(thp, L4)
    assert not d.residual
    assert d.points == {point(0, 0): 1, point(1, 0): 1, point(-1, 0): 1, O: -3}
    d = constant_point_divisor(L4.W.coerce(T4.base.gen + 1), L4)
    assert d.points == {} and d.degree == 0


def _const_coeff_elem(rng, L):
    """Product of simple factors with rational coefficients (so the divisor is complete)."""
    t, tp = L.theta, L.thetap
    u = L.W.one
    xs = [Fraction(k) for k in range(-3, 4)]
    for _ in range(rng.randint(1, 3)):
        f = rng.choice([t - rng.choice(xs), tp, t, tp + t - rng.choice(xs)])
        u = u * f if rng.random() < 0.7 else u / f
    return u


@given(seeds)
@settings(max_examples=25)
def test_valuation_additive(seed):
    rng = rng_for(seed)
    u, v = _const_coeff_elem(rng, L17), _const_coeff_elem(rng, L17)
    for p in P17[:3] + [-P17[0], O]:
        assert valuation_at(u * v, p, L17) == valuation_at(u, p, L17) + valuation_at(v, p, L17)


@given(seeds)
@settings(max_examples=25)
def test_principal_divisor_degree_zero(seed):
    rng = rng_for(seed)
    u = _const_coeff_elem(rng, L4)
    d = constant_point_divisor(u, L4)
    if not d.residual:
        assert d.degree == 0
    d2 = constant_point_divisor(u * u, L4)
    if not d.residual and not d2.residual:
        assert d2.points == {p: 2 * n for p, n in d.points.items()}


def test_weierstrass_relation_derivative():
    e = thp * thp - 4 * th ** 3 + 4 * th
    assert not derive(e)
