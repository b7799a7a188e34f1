from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsum.cyc import CycNum, cyclotomic_poly, units_mod
from charsum.errors import DenominatorNotInvertible, InexactDivision, NotCoprime, OrderMismatch
from charsum.fq import build_field

ORDERS = [1, 2, 3, 4, 6, 8, 12]


def cyc(m: int):
    return st.lists(st.integers(-6, 6), min_size=m, max_size=m).map(lambda c: CycNum(m, c))


class TestCanonicalForm:
    def test_examples(self):
        z = CycNum.zeta(4)
        assert z * z == -1
        assert (1 + z) + (1 - z) == 2
        r = CycNum(4, [2, 2]).scalar_div(2)
        assert r == 1 + z and r.denom == 1

    @pytest.mark.parametrize("m", range(1, 25))
    def test_cyclotomic_poly_roots(self, m):
        phi = cyclotomic_poly(m)
        assert len(phi) - 1 == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)
        for k in range(m):
            z = cmath.exp(2j * math.pi * k / m)
            val = sum(c * z**i for i, c in enumerate(phi))
            assert (abs(val) < 1e-8) == (math.gcd(k, m) == 1)

    def test_phi12(self):
        assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)

    @pytest.mark.parametrize("m", ORDERS)
    def test_root_sum_vanishes(self, m):
        if m > 1:
            assert sum((CycNum.zeta(m, k) for k in range(m)), CycNum.zero(m)).is_zero()

    @pytest.mark.parametrize("m", ORDERS)
    def test_equality_matches_complex_value(self, m):
        @settings(max_examples=40, deadline=None)
        @given(cyc(m), cyc(m))
        def check(x, y):
            assert (x == y) == (abs(x.complex_embed() - y.complex_embed()) < 1e-9)

        check()


class TestRingAxioms:
    @pytest.mark.parametrize("m", ORDERS)
    def test_axioms(self, m):
        @settings(max_examples=40, deadline=None)
        @given(cyc(m), cyc(m), cyc(m))
        def check(x, y, z):
            assert (x + y) + z == x + (y + z)
            assert x * y == y * x
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert x - x == 0
            assert abs((x * y).complex_embed() - x.complex_embed() * y.complex_embed()) < 1e-6

        check()

    @pytest.mark.parametrize("m", [4, 6, 8, 12])
    def test_inverse(self, m):
        @settings(max_examples=30, deadline=None)
        @given(cyc(m))
        def check(x):
            if not x.is_zero():
                assert x * x.inverse() == 1
                assert (x / x) == 1

        check()

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatch):
            CycNum.zeta(4) + CycNum.zeta(6)

    def test_exact_div(self):
        assert CycNum(4, [6, 4]).exact_div(2) == CycNum(4, [3, 2])
        with pytest.raises(InexactDivision):
            CycNum(4, [3, 2]).exact_div(2)

    def test_pow(self):
        z = CycNum.zeta(12)
        assert z**12 == 1 and z**-1 == z.conj()


class TestGalois:
    def test_conj_examples(self):
        z = CycNum.zeta(4)
        assert z.conj() == CycNum.zeta(4, 3) == -z
        assert CycNum.from_int(4, 5).conj() == 5
        assert (1 - 2 * z).conj() == 1 + 2 * z

    def test_identity_and_conj(self):
        x = CycNum(12, [1, 2, 0, -3, 5])
        assert x.galois_apply(1) == x
        assert x.galois_apply(11) == x.conj()

    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            CycNum.zeta(12).galois_apply(4)

    @pytest.mark.parametrize("m", [5, 8, 12])
    def test_galois_is_ring_map(self, m):
        x, y = CycNum(m, [1, -2, 3]), CycNum(m, [0, 1, 1, -1])
        for t in units_mod(m):
            assert (x * y).galois_apply(t) == x.galois_apply(t) * y.galois_apply(t)
            assert (x + y).galois_apply(t) == x.galois_apply(t) + y.galois_apply(t)

    def test_norm_is_rational(self):
        x = CycNum(12, [2, -1, 0, 3])
        assert x.norm().as_rational_integer() is not None


class TestReduction:
    def test_examples(self):
        F = build_field(5)
        z = CycNum.zeta(4)
        assert z.reduce_to_field(F) == F(2)
        assert (1 - 2 * z).reduce_to_field(F) == F(2)
        assert CycNum(4, [1, 0, 1]).reduce_to_field(F) == F(0)

    def test_is_ring_map(self):
        F = build_field(3, 2)

        @settings(max_examples=40, deadline=None)
        @given(cyc(8), cyc(8))
        def check(x, y):
            assert (x * y).reduce_to_field(F) == x.reduce_to_field(F) * y.reduce_to_field(F)
            assert (x + y).reduce_to_field(F) == x.reduce_to_field(F) + y.reduce_to_field(F)

        check()

    def test_denominator_not_invertible(self):
        with pytest.raises(DenominatorNotInvertible):
            CycNum(4, [1], denom=5).reduce_to_field(build_field(5))


class TestEmbedAndRational:
    def test_complex_embed(self):
        assert abs(CycNum.zeta(4).complex_embed() - 1j) < 1e-12
        assert abs(sum((CycNum.zeta(4, k) for k in range(4)), CycNum.zero(4)).complex_embed()) < 1e-12

    def test_as_rational_integer(self):
        z = CycNum.zeta(4)
        assert CycNum.from_int(4, 7).as_rational_integer() == 7
        assert (z + z.conj()).as_rational_integer() == 0
        assert z.as_rational_integer() is None

    @pytest.mark.parametrize("m", ORDERS)
    def test_json_roundtrip(self, m):
        @settings(max_examples=30, deadline=None)
        @given(cyc(m), st.integers(1, 9))
        def check(x, d):
            y = x.scalar_div(d)
            back = CycNum.from_json(y.to_json())
            assert back == y and back.canonical() == y.canonical() and back.denom == y.denom

        check()
