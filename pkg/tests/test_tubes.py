import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bihcheck import tubes
from bihcheck.exact import RationalInterval
from bihcheck.multipoly import MultiPoly, P, PolyFraction

X = MultiPoly.var("X")


def all_models():
    for n in range(2, 12):
        for m in range(n - 1):
            yield tubes.spectrum("A", n, m)
        yield tubes.spectrum("B", n)
    for n in range(5, 26, 2):
        yield tubes.spectrum("C", n)
    yield tubes.spectrum("D", 9)
    yield tubes.spectrum("E", 15)


def test_spectrum_a20():
    model = tubes.spectrum("A", 2, 0)
    assert [(name, k) for name, _, k in model.spectrum] == [("cot r", 2)]
    assert model.dimension == 3


@pytest.mark.parametrize("family, n, mults", [("D", 9, [4, 4, 4, 4]), ("E", 15, [6, 6, 8, 8])])
def test_exceptional_multiplicities(family, n, mults):
    model = tubes.spectrum(family, n)
    assert [k for _, _, k in model.spectrum] == mults
    assert model.dimension == 2 * n - 1


@pytest.mark.parametrize("args", [("C", 6), ("C", 3), ("D", 8), ("E", 9), ("A", 3, 2), ("A", 3), ("B", 3, 0), ("F", 4)])
def test_family_constraints(args):
    with pytest.raises(tubes.FamilyConstraintError):
        tubes.spectrum(*args)


def test_dimension_bookkeeping():
    assert all(m.dimension_ok for m in all_models())


@pytest.mark.parametrize("n, m", [(2, 0), (5, 2), (9, 3), (25, 23)])
def test_norm_type_a(n, m):
    expected = PolyFraction((2 * n - 2 * m - 1) * X * X - 2 * X + (2 * m + 1), X)
    assert tubes.norm_A_squared(tubes.spectrum("A", n, m)) == expected


@pytest.mark.parametrize("family, n", [("D", 9), ("E", 15)])
def test_corrected_norms(family, n):
    assert tubes.norm_A_squared(tubes.spectrum(family, n)) == tubes.CORRECTED_NORM_A_SQUARED[family]


def test_norm_d_spot_value():
    # 5X^4 - 4X^3 + 62X^2 - 4X + 5 = 2005 and X(X-1)^2 = 36 at X = 4
    assert tubes.norm_A_squared(tubes.spectrum("D", 9)).evaluate({"X": 4}) == Fraction(2005, 36)


def test_evenness_in_t():
    t = MultiPoly.var("t")
    for model in all_models():
        f = tubes.norm_A_squared_t(model)
        assert PolyFraction(f.num.subs("t", -t), f.den.subs("t", -t)) == f


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_spectrum_sum_matches_X_form(seed):
    rng = random.Random(seed)
    models = list(all_models())
    model = rng.choice(models)
    t0 = Fraction(rng.randint(2, 60), rng.randint(1, 7))
    if model.family != "A":
        t0 = 1 + t0
    direct = sum(k * v.evaluate({"t": t0}) ** 2 for _, v, k in model.spectrum) + model.hopf.evaluate({"t": t0}) ** 2
    assert direct == tubes.norm_A_squared(model).evaluate({"X": t0 * t0})


@pytest.mark.parametrize("family, n, m, poly, domain", [
    ("A", 2, 0, "3*X^2 - 8*X + 1", "(0,inf)"),
    ("D", 9, None, "5*X^4 - 24*X^3 + 102*X^2 - 24*X + 5", "(1,inf)"),
    ("E", 15, None, "9*X^4 - 40*X^3 + 158*X^2 - 40*X + 9", "(1,inf)"),
])
def test_biharmonic_polynomials(family, n, m, poly, domain):
    cond = tubes.biharmonic_polynomial(tubes.spectrum(family, n, m))
    assert cond.poly == P(poly)
    assert str(cond.domain) == domain


def test_admissible_roots():
    assert len(tubes.admissible_roots(tubes.biharmonic_polynomial(tubes.spectrum("A", 2, 0)))) == 2
    assert len(tubes.admissible_roots(tubes.biharmonic_polynomial(tubes.spectrum("D", 9)))) == 0
    assert len(tubes.admissible_roots(tubes.biharmonic_polynomial(tubes.spectrum("B", 3)))) == 0


def test_radius_formula_examples():
    for n in range(2, 26):
        assert tubes.radicand(n, 0) == n * n + 2 * n + 5
    v = tubes.verify_radius_formula(2, 0)
    assert v.ok and v.radicand == 13
    v = tubes.verify_radius_formula(5, 2)
    assert v.ok and v.radicand == 24 and v.condition == P("5*X^2 - 14*X + 5")


def test_radius_formula_detects_wrong_closed_form():
    iso = tubes.admissible_roots(tubes.biharmonic_polynomial(tubes.spectrum("A", 5, 2)))
    assert tubes.closed_form_matches(5, 2, iso)
    assert not tubes.closed_form_matches(5, 1, iso)


def test_discriminant_identity():
    assert tubes.discriminant_identity_holds()


def test_mean_curvature_nonzero_at_roots():
    for n in range(2, 10):
        for m in range(n - 1):
            cond = tubes.biharmonic_polynomial(tubes.spectrum("A", n, m))
            assert not tubes.mean_curvature_vanishes_at_root(cond)


@pytest.mark.parametrize("x, r", [(3, math.pi / 6), (1, math.pi / 4)])
def test_radius_from_exact_X(x, r):
    text = tubes.radius_from_X(RationalInterval.point(x), Fraction(1, 10 ** 12))
    assert text.endswith("(approx.)")
    assert abs(float(text.split()[0]) - r) <= 1e-12


def test_radius_enclosure_width():
    cond = tubes.biharmonic_polynomial(tubes.spectrum("A", 2, 0))
    iso = tubes.admissible_roots(cond)
    enc, text = tubes.radius_enclosure(cond.poly, iso.intervals[1], Fraction(1, 10 ** 12))
    assert abs(float(text.split()[0]) - math.atan(1 / math.sqrt((4 + math.sqrt(13)) / 3))) < 1e-12


def test_radius_rejects_nonpositive():
    with pytest.raises(ValueError):
        tubes.radius_from_X(RationalInterval.closed(-1, 1), Fraction(1, 100))
