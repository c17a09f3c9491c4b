import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bihcheck.multipoly import (
    MultiPoly,
    P,
    ParseError,
    PolyFraction,
    content_primitive,
    evaluate,
    exact_divide,
    partial_derivative,
    poly_arith,
    proportional,
    substitute,
)
from randpoly import poly_in

X = MultiPoly.var("X")
seeds = st.integers(min_value=0, max_value=10 ** 6)


def rnd(seed, variables=("alpha", "gamma", "X"), deg=2, terms=4):
    return poly_in(random.Random(seed), variables, deg, terms)


class TestParsePrint:
    @pytest.mark.parametrize("text", [
        "5*X^4 - 24*X^3 + 102*X^2 - 24*X + 5",
        "-3/2*H",
        "4*alpha^2 - 9*beta^2 + 17*gamma*alpha + 4*gamma^2",
        "0",
    ])
    def test_round_trip(self, text):
        p = P(text)
        assert P(str(p)) == p
        assert str(P(str(p))) == str(p)

    def test_whitespace_insensitive(self):
        assert P("(alpha+gamma)^2") == P(" ( alpha + gamma ) ^ 2 ") == P("alpha^2 + 2*alpha*gamma + gamma^2")

    def test_canonical_order(self):
        # graded lex with gamma before beta before alpha
        assert str(P("alpha + beta^2 + gamma")) == "beta^2 + gamma + alpha"

    @pytest.mark.parametrize("text, pos", [("3*X^^2", 4), ("x + 1", 0), ("(X + 1", 6), ("X/2", 1)])
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as err:
            P(text)
        assert err.value.pos == pos

    @given(seeds)
    def test_random_round_trip(self, seed):
        p = rnd(seed)
        assert P(str(p)) == p


def test_poly_arith_examples():
    assert poly_arith(X + 1, X - 1, "mul") == P("X^2 - 1")
    p = P("alpha*gamma - 3")
    assert poly_arith(p, MultiPoly.zero(), "add") == p
    assert P("X^2") * P("5*X^2 - 24*X + 51") + P("51*X^2 - 24*X + 5") == P("5*X^4 - 24*X^3 + 102*X^2 - 24*X + 5")


def test_partial_derivative_examples():
    q = P("4*alpha^2 - 9*beta^2 + 17*alpha*gamma + 4*gamma^2")
    assert partial_derivative(q, "beta") == P("-18*beta")
    assert partial_derivative(q, "alpha") == P("8*alpha + 17*gamma")
    assert partial_derivative(P("gamma^3"), "gamma") == P("3*gamma^2")


def test_substitute_examples():
    quadric = P("mu^2 - (alpha+gamma)*mu + alpha*gamma - beta^2")
    r = substitute(quadric, "mu", PolyFraction(P("-alpha - gamma"), 3))
    assert r == PolyFraction(P("4*alpha^2 + 17*alpha*gamma + 4*gamma^2 - 9*beta^2"), 9)
    r2 = substitute(quadric, "mu", PolyFraction(P("d - alpha - gamma")))
    assert r2.to_poly() == P("2*alpha^2 - beta^2 - 3*alpha*d + d^2 + 5*alpha*gamma - 3*d*gamma + 2*gamma^2")
    assert substitute(P("X^2"), "X", PolyFraction(1)).to_poly() == 1


def test_exact_divide_examples():
    assert exact_divide(P("X^2 - 1"), P("X - 1")) == P("X + 1")
    assert exact_divide(P("X^2 + 1"), P("X - 1")) is None
    with pytest.raises(ZeroDivisionError):
        exact_divide(X, MultiPoly.zero())


def test_content_primitive_examples():
    B = MultiPoly.var("beta")
    assert content_primitive(54 * B ** 4 + 54 * B ** 2) == (54, B ** 4 + B ** 2)
    assert content_primitive(-3 * X) == (-3, X)
    quartic = P("1000*gamma^4 + 2600*alpha*gamma^3 + (5000*alpha^2 + 700*alpha - 1113)*gamma^2"
                " + (4400*alpha^3 + 500*alpha^2 - 2055*alpha)*gamma"
                " + 1000*alpha^4 - 200*alpha^3 - 1842*alpha^2 - 450*alpha + 189")
    assert content_primitive(quartic)[0] == 1


def test_proportional_examples():
    assert proportional(P("2*X + 2"), P("X + 1")) == 2
    assert proportional(P("X + 1"), P("X - 1")) is None


def test_evaluate_examples():
    assert evaluate(P("5*X^4 - 4*X^3 + 62*X^2 - 4*X + 5"), {"X": 4}) == 2005
    assert evaluate(P("X^2 - 1"), {"X": 1}) == 0
    assert evaluate(P("27*H^2 - 2*delta^2 + 4"), {"H": 0, "delta": 1}) == 2
    with pytest.raises(KeyError):
        evaluate(P("X*t"), {"X": 1})


@given(seeds)
def test_ring_axioms(seed):
    p, q, r = (rnd(seed + k) for k in range(3))
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + (-p) == 0
    assert p * q == q * p


@given(seeds)
def test_leibniz(seed):
    p, q = rnd(seed), rnd(seed + 1)
    for v in ("alpha", "gamma", "X"):
        assert partial_derivative(p * q, v) == partial_derivative(p, v) * q + p * partial_derivative(q, v)


@given(seeds)
def test_exact_divide_recovers_factor(seed):
    p, q = rnd(seed), rnd(seed + 1)
    assert exact_divide(p * q, q) == p


@given(seeds, st.fractions(max_denominator=20).filter(bool))
def test_proportional_recovers_scalar(seed, s):
    p = rnd(seed)
    assert proportional(p * s, p) == s
    c, prim = content_primitive(p)
    assert c * prim == p
    assert prim.leading_coeff() > 0


def test_polyfraction_normal_form():
    f = PolyFraction(P("X^2 - 1"), P("X - 1"))
    assert f.is_polynomial() and f.to_poly() == X + 1
    assert PolyFraction(P("2*X"), P("-4")) == PolyFraction(X, Fraction(-2))
    with pytest.raises(ZeroDivisionError):
        PolyFraction(X, MultiPoly.zero())
