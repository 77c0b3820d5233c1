import pytest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gradedorders.base_rings import (
    ZZ,
    ZI,
    FractionalIdealR,
    GaussianInt,
    KElem,
    RingError,
    element_valuation,
    factor_rational_prime,
    ideal_from_json,
    ideal_to_json,
    is_principal,
    kelem_valuation,
    maximal_ideals_above,
    normalize_scalar,
    parse_gaussian,
    valuation,
)


class TestGaussianInt:
    def test_norm_multiplicative(self):
        a, b = GaussianInt(3, 2), GaussianInt(-1, 4)
        assert (a * b).norm() == a.norm() * b.norm()

    def test_euclidean_division(self):
        a, b = GaussianInt(27, -23), GaussianInt(8, 1)
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.norm() < b.norm()

    def test_parse_roundtrip(self):
        for s in ("3", "-2", "i", "-i", "1+2i", "2-1i", "5i"):
            z = parse_gaussian(s)
            assert parse_gaussian(str(z)) == z

    def test_parse_rejects_garbage(self):
        with pytest.raises(RingError):
            parse_gaussian("2+3j+1")


gaussians = st.builds(GaussianInt, st.integers(-30, 30), st.integers(-30, 30))


@given(gaussians, gaussians.filter(lambda z: z.norm() != 0))
@settings(max_examples=200)
def test_divmod_property(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.norm() < b.norm()


class TestSplitting:
    def test_split_prime(self):
        factors = factor_rational_prime(ZI, 5)
        assert [e for _, e in factors] == [1, 1]
        ms = maximal_ideals_above(ZI, 5)
        assert len(ms) == 2
        assert {m.generator.norm() for m in ms} == {5}

    def test_inert_prime(self):
        ms = maximal_ideals_above(ZI, 3)
        assert len(ms) == 1
        assert ms[0].residue_size == 9

    def test_ramified_prime(self):
        ms = maximal_ideals_above(ZI, 2)
        assert len(ms) == 1
        assert ms[0].generator.norm() == 2

    def test_rational_places(self):
        (m,) = maximal_ideals_above(ZZ, 7)
        assert m.residue_char == 7 and m.residue_size == 7


class TestValuation:
    def test_element_valuation_split(self):
        p, q = maximal_ideals_above(ZI, 5)
        z = GaussianInt(5, 0)
        assert element_valuation(ZI.kind, z, p) == 1
        assert element_valuation(ZI.kind, z, q) == 1

    def test_ramified(self):
        (m,) = maximal_ideals_above(ZI, 2)
        assert element_valuation(ZI.kind, GaussianInt(2, 0), m) == 2

    @given(st.integers(1, 400), st.sampled_from([2, 3, 5, 7]))
    def test_valuation_homomorphism(self, n, p):
        (m,) = maximal_ideals_above(ZZ, p)
        for k in range(1, 4):
            a = KElem.of(n, 0)
            assert kelem_valuation(ZZ, a**k, m) == k * kelem_valuation(ZZ, a, m)


class TestKElem:
    def test_inverse(self):
        x = KElem(Fraction(3, 4), Fraction(-2, 5))
        y = x * x.inverse()
        assert y == KElem.of(1, 0)

    def test_pow_negative(self):
        x = KElem.of(1, 2)
        assert x**3 * x**-3 == KElem.of(1, 0)

    def test_valuation_of_fraction(self):
        p, _ = maximal_ideals_above(ZI, 5)
        x = KElem(Fraction(1, 5), Fraction(0))
        assert kelem_valuation(ZI, x, p) == -1


class TestFractionalIdeal:
    def test_product_and_inverse(self):
        p, q = maximal_ideals_above(ZI, 5)
        a = FractionalIdealR.from_factors(ZI, {p: 2, q: -1})
        assert valuation(a * a.inverse(), p) == 0
        assert (a * a).factors == FractionalIdealR.from_factors(ZI, {p: 4, q: -2}).factors

    def test_sum_is_min(self):
        p, q = maximal_ideals_above(ZI, 5)
        a = FractionalIdealR.from_factors(ZI, {p: 2})
        b = FractionalIdealR.from_factors(ZI, {p: 1, q: 3})
        s = a + b
        assert valuation(s, p) == 1 and valuation(s, q) == 0

    def test_principality(self):
        p, q = maximal_ideals_above(ZI, 5)
        ok, gen = is_principal(FractionalIdealR.from_factors(ZI, {p: 1, q: 1}))
        assert ok
        assert gen == normalize_scalar(ZI, KElem.of(5, 0)) or gen == KElem.of(5, 0)
        ok_one, _ = is_principal(FractionalIdealR.from_factors(ZI, {p: 1}))
        assert ok_one  # PID base: everything principal

    def test_json_roundtrip(self):
        p, q = maximal_ideals_above(ZI, 5)
        a = FractionalIdealR.from_factors(ZI, {p: 2, q: -1})
        b = ideal_from_json(ZI, ideal_to_json(a))
        assert a.factors == b.factors

    def test_json_gen(self):
        a = ideal_from_json(ZZ, {"gen": 12})
        (m2,) = maximal_ideals_above(ZZ, 2)
        (m3,) = maximal_ideals_above(ZZ, 3)
        assert valuation(a, m2) == 2 and valuation(a, m3) == 1

    def test_integrality(self):
        (m,) = maximal_ideals_above(ZZ, 3)
        assert FractionalIdealR.from_factors(ZZ, {m: 1}).is_integral()
        assert not FractionalIdealR.from_factors(ZZ, {m: -1}).is_integral()
