import itertools
from fractions import Fraction

import sympy
from hypothesis import example, given, settings
from hypothesis import strategies as st

from finterm.riccati import RiccatiProblem, is_sl2_admissible, rational_solutions, riccati_residual
from finterm.tower import base_tower, derive

from towergen import rand_frac, rng_for

T = base_tower()
F = T.base
x = F.gen
zero = F.zero


def p(src):
    return T.parse(src)


def test_zero_problem_has_family():
    res = rational_solutions(zero, zero)
    assert zero in res.solutions
    assert res.families and res.families[0]["parameters"] == 1
    # 0 and 1/(x + c) for every c: one family with a free constant
    for u in res.solutions:
        assert not riccati_residual(u, zero, zero)
    assert res.contains(1 / (x + 3)) and res.contains(1 / (x - Fraction(1, 2)))
    assert not res.contains(2 / x)


def test_double_pole_example():
    res = rational_solutions(RiccatiProblem(zero, 2 / x ** 2))
    assert 2 / x in res.solutions
    assert -1 / x in res.solutions


def test_airy_empty():
    assert rational_solutions(zero, x).solutions == []
    assert is_sl2_admissible(zero, x) == (True, None)


def test_admissible_witnesses():
    ok, w = is_sl2_admissible(zero, zero)
    assert not ok and w == zero
    ok, w = is_sl2_admissible(zero, 2 / x ** 2)
    assert not ok and not riccati_residual(w, zero, 2 / x ** 2)


def test_nonzero_r():
    u = 1 / x + 1
    r = F.coerce(2)
    s = u ** 2 - r * u - 1 / x ** 2  # s = u' + u^2 - r u
    res = rational_solutions(r, s)
    assert u in res.solutions
    for v in res.solutions:
        assert not riccati_residual(v, r, s)


def test_algebraic_constants_adjoined():
    # v' + v^2 = 2 is solved by v = +-sqrt(2)
    res = rational_solutions(zero, F.coerce(2))
    assert len(res.solutions) == 2
    for u in res.solutions:
        G = u.field
        assert G.base.degree == 2
        assert u.is_const() and u * u == G.coerce(2)


def _map(e, G):
    from finterm.algebra.fields import map_constants

    return map_constants(e, G)


# ---------------------------------------------------------------------------
# brute force oracle


def _sym(e):
    X = sympy.Symbol("X")
    n = sum(sympy.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(e.num.coeffs))
    d = sum(sympy.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(e.den.coeffs))
    return n, d, X


def brute_force(r, s, poles, max_mult=1, max_num=4):
    """Rational solutions with poles in ``poles`` by undetermined coefficients (sympy solve)."""
    X = sympy.Symbol("X")
    rn, rd, _ = _sym(r)
    sn, sd, _ = _sym(s)
    found = set()
    for mults in itertools.product(range(max_mult + 1), repeat=len(poles)):
        D = sympy.Integer(1)
        for a, m in zip(poles, mults):
            D *= (X - a) ** m
        degD = sum(mults)
        n = min(max_num, degD + 2)
        cs = sympy.symbols(f"n0:{n + 1}")
        N = sum(c * X ** k for k, c in enumerate(cs))
        expr = sympy.expand(((sympy.diff(N, X) * D - N * sympy.diff(D, X)) + N ** 2) * rd * sd - (rn * N * D) * sd - sn * D ** 2 * rd)
        eqs = sympy.Poly(expr, X).coeffs()
        for sol in sympy.solve(eqs, cs, dict=True):
            vals = [sol.get(c, c) for c in cs]
            if any(not v.is_Rational for v in vals):
                continue
            u = sympy.cancel(sum(v * X ** k for k, v in enumerate(vals)) / D)
            found.add(u)
    return found


def _to_sym(u):
    n, d, X = _sym(u)
    return sympy.cancel(n / d)


@given(st.integers(0, 10 ** 9))
@example(3796846)  # u0 = -1/2 + 1/(x-1) is a family member, not a listed solution
@settings(max_examples=12)
def test_agrees_with_brute_force(seed):
    rng = rng_for(seed)
    poles = rng.sample([0, 1, -1], 2)
    u0 = F.zero
    for a in poles:
        if rng.random() < 0.8:
            u0 = u0 + rng.randint(1, 2) / (x - a)
    u0 = u0 + rand_frac(rng) * rng.randint(0, 1)
    r = F.coerce(rng.randint(-1, 1))
    s = u0 * u0 - r * u0 + derive(u0)
    res = rational_solutions(r, s)
    assert res.contains(u0)
    for v in res.solutions:
        assert not riccati_residual(v, r, s)
    if res.families:
        return
    got = {_to_sym(v) for v in res.solutions if v.field is F and _poles_within(v, poles)}
    assert got == brute_force(r, s, poles)


def _poles_within(v, poles):
    d = v.den
    for a in poles:
        while d.degree > 0 and not d(Fraction(a)):
            d = d.exquo(x.num - Fraction(a))
    return d.degree == 0


@given(st.integers(0, 10 ** 9))
@settings(max_examples=25)
def test_soundness(seed):
    rng = rng_for(seed)
    r = F.coerce(rng.randint(-2, 2)) + (rng.randint(-1, 1) / (x - rng.randint(-2, 2)) if rng.random() < 0.3 else 0)
    s = F.coerce(rand_frac(rng)) * x ** rng.randint(0, 2) + rng.randint(-2, 2) / (x - 1) ** rng.randint(1, 2)
    res = rational_solutions(r, s)
    for u in res.solutions:
        G = u.field
        if G is F:
            assert not riccati_residual(u, r, s)
        else:
            assert not riccati_residual(u, _map(r, G), _map(s, G))
