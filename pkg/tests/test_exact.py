from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bihcheck.exact import (
    Ordering,
    RationalInterval,
    ZeroDenominatorError,
    format_rational,
    int_gcd,
    make_rational,
    normalize,
    parse_rational,
    rat_arith,
    rat_cmp,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10 ** 6)


def test_rat_arith_examples():
    assert rat_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert rat_arith(Fraction(9, 2), 1, "mul") == Fraction(9, 2)
    assert rat_arith(2005, 36, "div") == Fraction(2005, 36)
    with pytest.raises(ZeroDenominatorError):
        rat_arith(1, 0, "div")
    with pytest.raises(ValueError):
        rat_arith(1, 2, "pow")


def test_rat_cmp_examples():
    assert rat_cmp(Fraction(4, 3), 1) is Ordering.GREATER
    assert rat_cmp(Fraction(-1, 2), Fraction(-1, 2)) is Ordering.EQUAL
    # 4 - sqrt(13) > 0 because 13 < 4^2
    assert rat_cmp(13, 16) is Ordering.LESS


def test_int_gcd_examples():
    assert int_gcd(54, 81) == 27
    assert int_gcd(0, 7) == 7
    assert int_gcd(1000, 2600) == 200


def test_zero_denominator_rejected_at_construction():
    with pytest.raises(ZeroDenominatorError):
        make_rational(3, 0)
    with pytest.raises(ZeroDenominatorError):
        parse_rational("3/0")


@pytest.mark.parametrize("text", ["0", "-7", "5/6", "-3/2", "123456789012345678901234567891/8"])
def test_parse_format_round_trip(text):
    assert format_rational(parse_rational(text)) == text


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    add = lambda x, y: rat_arith(x, y, "add")
    mul = lambda x, y: rat_arith(x, y, "mul")
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, -a) == 0


@given(rationals)
def test_normalize_idempotent(x):
    assert normalize(normalize(x)) == normalize(x)
    assert normalize(x) == x


@given(rationals, rationals, rationals)
def test_cmp_total_order(a, b, c):
    assert sum(rat_cmp(a, b) is o for o in Ordering) == 1
    assert rat_cmp(a, b) == -rat_cmp(b, a)
    if rat_cmp(a, b) <= 0 and rat_cmp(b, c) <= 0:
        assert rat_cmp(a, c) <= 0


class TestRationalInterval:
    def test_parse_and_print(self):
        for text in ["(0,inf)", "[1,2]", "(-inf,inf)", "(1/3,5/2]", "[-2,0)"]:
            assert str(RationalInterval.parse(text)) == text

    def test_membership(self):
        iv = RationalInterval.parse("(1,2]")
        assert 1 not in iv and 2 in iv and Fraction(3, 2) in iv
        assert 10 ** 9 in RationalInterval.parse("(0,inf)")

    def test_rejects_bad_text(self):
        for text in ["0,1", "(inf,0)", "(0,-inf)", "(a,b)"]:
            with pytest.raises(ValueError):
                RationalInterval.parse(text)

    def test_subset(self):
        assert RationalInterval.parse("[1,2]").is_subset_of(RationalInterval.parse("(0,inf)"))
        assert not RationalInterval.parse("[0,2]").is_subset_of(RationalInterval.parse("(0,inf)"))
