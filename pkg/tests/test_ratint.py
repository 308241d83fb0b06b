from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from finterm.algebra.factor import factor_over
from finterm.algebra.numbers import QQ
from finterm.certificate import verify
from finterm.ratint import hermite_reduce, integrate_rational, log_part, rothstein_resultant
from finterm.tower import base_tower, derive, logderiv

from towergen import log_profile, rand_poly, rng_for

T = base_tower()
F = T.base
x = F.gen


def p(src):
    return T.parse(src)


def test_hermite_examples():
    g, h = hermite_reduce(1 / x ** 2)
    assert g == -1 / x and not h
    g, h = hermite_reduce(1 / x)
    assert not g and h == 1 / x
    g, h = hermite_reduce(p("(3*x^2+1)/(x^3+x)^2"))
    assert g == -1 / (x ** 3 + x) and not h


def _logsum(terms, G):
    acc = G.zero
    for c, u in terms:
        U = G.from_poly(u)
        acc = acc + G.coerce(c) * logderiv(U)
    return acc


def test_log_part_partial_fractions():
    K, terms, sums = log_part(1 / (x ** 2 - 1))
    assert sums == []
    assert K is QQ
    got = {tuple(u.coeffs): c for c, u in terms}
    assert got == {(Fraction(-1), Fraction(1)): Fraction(1, 2), (Fraction(1), Fraction(1)): Fraction(-1, 2)}


def test_log_part_adjoins_i():
    K, terms, sums = log_part(1 / (x ** 2 + 1))
    assert sums == []
    assert K.degree == 2
    i = K.gen
    assert i * i == K.coerce(-1)
    assert len(terms) == 2
    G = base_tower(K).base
    assert _logsum(terms, G) == 1 / (G.gen ** 2 + 1)
    for c, _ in terms:
        assert c * c == K.coerce(Fraction(-1, 4))


def test_log_part_exact_logderiv():
    K, terms, sums = log_part(2 * x / (x ** 2 - 1))
    assert sums == []
    assert K is QQ
    assert [(c, u.degree) for c, u in terms] == [(1, 2)]


def test_integrate_examples():
    c = integrate_rational(x ** 2, T)
    assert c.v == x ** 3 / 3 and not c.terms and verify(c)
    c = integrate_rational(1 / x ** 2 + 1 / x, T)
    assert c.v == -1 / x
    assert [(k, u) for k, u in c.terms] == [(1, x)]
    c = integrate_rational(p("(x^4+1)/(x^3-x)"), T)
    assert verify(c)
    assert c.v == x ** 2 / 2
    # residues -1, 1, 1 at 0, 1, -1; equal residues share one argument
    assert sorted(log_profile(c).values()) == [-1, 1, 1]
    assert sorted((k, u.num.degree) for k, u in c.terms) == [(-1, 1), (1, 2)]
    # without a tower one is made over the constants actually needed
    c = integrate_rational(1 / (x ** 2 + 1))
    assert verify(c) and c.tower.constants.degree == 2


def _random_f(rng):
    num = rand_poly(rng, F, rng.randint(0, 6))
    den = rand_poly(rng, F, rng.randint(0, 6), monic=True)
    return num / den


@given(st.integers(0, 10 ** 9))
@settings(max_examples=40)
def test_random_verify(seed):
    rng = rng_for(seed)
    f = _random_f(rng)
    c = integrate_rational(f)
    assert verify(c)
    assert c.level == 0


def test_constant_field_is_minimal():
    # resultant degree <= 2: the constant field is exactly as big as its largest irreducible factor
    cases = ["1/(x^2+1)", "1/(x^2-2)", "x/(x^2-3)", "(x+1)/(x^2+x+1)", "1/(x^3-x)", "3/(x^2+4)", "1/(x^2-1)"]
    for src in cases:
        f = p(src)
        R = rothstein_resultant(f.num, f.den)
        assert R.degree <= 3
        biggest = max(g.degree for g, _ in factor_over(R.monic()))
        c = integrate_rational(f)
        assert verify(c)
        assert getattr(c.tower.constants, "degree", 1) == biggest, src


def test_derivative_of_result():
    f = p("(x^5 - 2*x + 7)/((x-1)^2*(x^2+1))")
    c = integrate_rational(f)
    acc = derive(c.v)
    for k, u in c.terms:
        acc = acc + u.field.coerce(k) * logderiv(u)
    assert acc == c.f
