import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bihcheck import hopfderive as hd
from bihcheck.multipoly import MultiPoly, P, PolyFraction, proportional
from randpoly import even_poly

BETA = MultiPoly.var("beta")
CASE1 = hd.DerivationContext.case1()
CASE2 = hd.DerivationContext.case2()
seeds = st.integers(min_value=0, max_value=10 ** 6)


class TestLaurent:
    def test_canonical_strips_beta(self):
        lp = hd.LaurentPoly(P("beta^3 + beta*alpha"), 2)
        assert lp.offset == 1 and lp.numerator == P("beta^2 + alpha")

    def test_arithmetic(self):
        a = hd.LaurentPoly(P("alpha"), 1)
        b = hd.LaurentPoly(BETA)
        assert (a * b).to_poly() == P("alpha")
        assert (a + b).numerator == P("alpha + beta^2") and (a + b).offset == 1
        with pytest.raises(ValueError):
            a.to_poly()

    def test_images_carry_inverse_beta(self):
        d_gamma = CASE1.image("gamma")
        assert d_gamma.offset == 1 and d_gamma.is_odd()
        assert CASE1.image("d").numerator.is_zero()


def test_phi_derive_case1_quadric():
    out = hd.phi_derive(hd.QUADRIC_1, CASE1)
    assert proportional(out, hd.BETA_QUARTIC_1) == Fraction(-1, 3)
    assert out.collect("beta")[4] == -18


def test_phi_derive_case2_quadric():
    out = hd.phi_derive(hd.QUADRIC_2, CASE2)
    assert proportional(out, hd.BETA_QUARTIC_2) not in (None, 0)
    assert proportional(out, hd.BETA_QUARTIC_2) * 2 == out.collect("beta")[4].constant_value()


def test_phi_derive_constant_and_d():
    assert hd.phi_derive(MultiPoly.one(), CASE1).is_zero()
    assert hd.phi_derive(P("d^3 - 2*d"), CASE2).is_zero()


def test_phi_derive_rejects_bad_input():
    with pytest.raises(hd.ParityViolation):
        hd.phi_derive(P("beta*alpha"), CASE1)
    with pytest.raises(ValueError):
        hd.phi_derive(P("X"), CASE1)


def test_mu_must_be_linear():
    with pytest.raises(ValueError):
        hd.DerivationContext.from_mu(P("alpha^2"))


def test_eliminate_beta_examples():
    r1 = hd.eliminate_beta(hd.QUADRIC_1, hd.BETA_QUARTIC_1)
    assert proportional(r1, hd.FACTOR_1 * hd.CUBIC_F) not in (None, 0)
    r2 = hd.eliminate_beta(hd.QUADRIC_2, hd.BETA_QUARTIC_2)
    assert proportional(r2, hd.FACTOR_2 * hd.CUBIC_G) not in (None, 0)
    assert hd.eliminate_beta(P("beta^2 - 1"), P("beta^2 - 1")).is_zero()
    with pytest.raises(hd.ParityViolation):
        hd.eliminate_beta(P("beta"), P("beta^2"))


def test_B_round_trip():
    p = P("beta^4*alpha - 3*beta^2 + gamma")
    assert hd.to_B(p) == P("B^2*alpha - 3*B + gamma")
    assert hd.from_B(hd.to_B(p)) == p


def _pair(seed, with_d):
    rng = random.Random(seed)
    vs = ("alpha", "gamma", "d") if with_d else ("alpha", "gamma")
    return even_poly(rng, vs), even_poly(rng, vs), rng


@settings(max_examples=50)
@given(seeds, st.booleans())
def test_leibniz(seed, case2):
    ctx = CASE2 if case2 else CASE1
    p, q, _ = _pair(seed, case2)
    assert hd.phi_derive(p * q, ctx) == hd.phi_derive(p, ctx) * q + p * hd.phi_derive(q, ctx)


@settings(max_examples=50)
@given(seeds, st.booleans())
def test_linearity(seed, case2):
    ctx = CASE2 if case2 else CASE1
    p, q, rng = _pair(seed, case2)
    a, b = Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    assert hd.phi_derive(p * a + q * b, ctx) == hd.phi_derive(p, ctx) * a + hd.phi_derive(q, ctx) * b


@settings(max_examples=50)
@given(seeds, st.booleans())
def test_parity(seed, case2):
    ctx = CASE2 if case2 else CASE1
    p, _, _ = _pair(seed, case2)
    assert hd.phi_derive(p, ctx).is_even_in("beta")
    assert ctx.derive(p).numerator.is_zero() or ctx.derive(p).is_odd()


@pytest.fixture(scope="module")
def case1():
    return hd.chain_case1()


@pytest.fixture(scope="module")
def case2():
    return hd.chain_case2(d_samples=5, seed=0)


class TestChainCase1:
    @pytest.fixture
    def cert(self, case1):
        return case1

    def test_printed_steps_match(self, cert):
        assert cert.step("quadric").scalar == 1
        assert cert.step("beta-quartic").scalar == Fraction(-1, 3)
        assert cert.step("cubic f").scalar == 1
        assert cert.step("cubic f").data["divides_exactly"]

    def test_branch_and_terminal_witnesses(self, cert):
        for name in ("branch alpha + 4 gamma = 0", "alpha constant", "D(beta) positivity", "eliminate-beta"):
            assert cert.step(name).ok, name
        assert cert.step("branch alpha + 4 gamma = 0").produced == P("-beta^2")

    def test_printed_quartic_is_not_reproduced(self, cert):
        # recorded as a failing step; the chain continues with the derived quartic
        step = cert.step("quartic")
        assert not step.ok and step.scalar is None
        assert step.data["printed quartic parity"] == [0, 1]
        assert step.data["derived quartic parity"] == [0]
        assert cert.first_failure is step

    def test_derived_quartic_frozen(self, cert):
        assert cert.step("derivative of f").data["quartic cofactor"] == P(
            "1000*(alpha + gamma)^4 - 1113*gamma^2 - 2955*alpha*gamma - 1842*alpha^2 + 189")

    def test_final_eliminant(self, cert):
        step = cert.step("final eliminant")
        assert step.ok and step.data["sylvester agrees"]
        assert step.data["alpha-degree"] == 4
        assert step.data["with printed quartic: nonzero"]

    def test_deterministic(self, cert):
        assert hd.chain_case1().to_dict() == cert.to_dict()


class TestChainCase2:
    @pytest.fixture
    def cert(self, case2):
        return case2

    def test_all_steps_pass(self, cert):
        assert cert.ok, cert.first_failure

    def test_scalars(self, cert):
        assert cert.step("quadric").scalar == 1
        assert cert.step("beta-quartic").scalar == -1
        assert cert.step("cubic g").scalar == 1

    def test_recorded_coefficients_shape(self, cert):
        p, q, r = (cert.step("P_i, Q_i").data["P"], cert.step("P_i, Q_i").data["Q"], cert.step("R_i").data["R"])
        assert (len(p), len(q), len(r)) == (4, 6, 5)
        assert r[4] == 324 and p[3] == 270

    def test_final_eliminant_degrees(self, cert):
        step = cert.step("final eliminant")
        assert (step.data["alpha-degree"], step.data["d-degree"]) == (4, 4)
        assert step.data["sylvester agrees"]

    def test_seed_changes_only_samples(self, cert):
        other = hd.chain_case2(d_samples=5, seed=11)
        assert other.ok
        assert other.step("final eliminant").produced == cert.step("final eliminant").produced
        assert other.step("d specializations").data["samples"] != cert.step("d specializations").data["samples"]

    def test_oracle_catches_corruption(self, cert):
        p = list(cert.step("P_i, Q_i").data["P"])
        q = cert.step("P_i, Q_i").data["Q"]
        r = cert.step("R_i").data["R"]
        pt = {"alpha": Fraction(2), "gamma": Fraction(-1, 3), "d": Fraction(5, 2)}
        assert hd.pointwise_oracle(hd.CUBIC_G, p, q, r, pt)["poly2 ok"]
        p[0] = p[0] + 1
        assert not hd.pointwise_oracle(hd.CUBIC_G, p, q, r, pt)["poly2 ok"]


def test_thm1_eliminant():
    cert = hd.thm1_eliminate()
    assert cert.ok
    step = cert.step("eliminant")
    assert step.data["H-degree"] == 2
    assert proportional(step.produced, P("27*H^2 - 2*delta^2 + 4")) is not None


def test_bihar2_eigenvalue():
    assert hd.bihar2_eigenvalue(2) == P("-3/2*H")
    assert hd.bihar2_eigenvalue(3) == P("-5/2*H")
    assert hd.bihar2_eigenvalue(2, 0) == 0
    with pytest.raises(ValueError):
        hd.bihar2_eigenvalue(1)


def test_hopf_relation():
    H, lam, delta = (MultiPoly.var(v) for v in ("H", "lambda", "delta"))
    r = hd.hopf_relation(hd.bihar2_eigenvalue(2), lam, delta)
    assert r == P("-3*H*lambda - (lambda - 3/2*H)*delta - 2")
    assert 2 * r == -P("6*lambda*H + (2*lambda - 3*H)*delta + 4")
    assert hd.hopf_relation(MultiPoly.zero(), MultiPoly.zero(), delta) == -2
    t = MultiPoly.var("t")
    sphere = hd.hopf_relation(PolyFraction(t), PolyFraction(t), PolyFraction(t * t - 1, t))
    for t0 in (Fraction(1, 3), 2, Fraction(7, 5), 10, Fraction(-4, 9)):
        assert sphere.evaluate({"t": t0}) == 0
