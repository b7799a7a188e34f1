from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsum.errors import DivisionByZero, DlogOfZero, FieldMismatch, NotPrime, ReducibleModulus
from charsum.fq import (
    FieldSpec,
    arith,
    build_field,
    default_modulus,
    dlog,
    extend_and_embed,
    has_small_factor,
    is_irreducible,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (13, 1), (2, 3), (3, 2), (5, 2)]


def _codes(F):
    return st.integers(min_value=0, max_value=F.q - 1)


class TestConstruction:
    def test_f5_generator(self):
        F = build_field(5)
        assert F.q == 5 and F.generator == 2
        assert [pow(2, k, 5) for k in range(1, 5)].index(1) == 3  # ord(2) = 4

    def test_f9_modulus_accepted(self):
        F = build_field(3, 2, modulus=[1, 0, 1])  # x^2 + 1
        assert F.q == 9
        assert all((x * x + 1) % 3 for x in range(3))

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            build_field(4, 1)

    def test_reducible_modulus(self):
        with pytest.raises(ReducibleModulus):
            build_field(3, 2, modulus=[2, 0, 1])  # x^2 + 2 = (x-1)(x+1)

    def test_default_modulus_is_smallest_irreducible(self):
        for p, h in [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3)]:
            mod = default_modulus(p, h)
            for low in itertools.product(range(p), repeat=h):
                if tuple(low) + (1,) == tuple(mod):
                    break
                assert not is_irreducible(list(low) + [1], p)
            assert is_irreducible(list(mod), p)

    @pytest.mark.parametrize("p,h", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)])
    def test_rabin_matches_factor_search(self, p, h):
        for low in itertools.product(range(p), repeat=h):
            f = list(low) + [1]
            assert is_irreducible(f, p) == (not has_small_factor(f, p))

    def test_deterministic(self):
        a, b = build_field(3, 2), FieldSpec.from_dict(build_field(3, 2).to_dict())
        assert a == b and list(a.exp) == list(b.exp)

    def test_tables_read_only(self):
        F = build_field(5)
        with pytest.raises(ValueError):
            F.exp[0] = 3

    def test_json(self):
        F = build_field(3, 2)
        data = json.loads(F.to_json())
        assert data == {"p": 3, "h": 2, "modulus": list(F.modulus), "generator": F.code_to_coeffs(F.generator)}


class TestArithmetic:
    def test_examples(self):
        F = build_field(5)
        assert F(2) * F(3) == F(1)
        assert F(2).inv() == F(3)
        G = build_field(3, 2, modulus=[1, 0, 1])
        x = G([0, 1])
        assert x * x == G(-1)

    @pytest.mark.parametrize("p,h", FIELDS)
    def test_tables_against_polynomial_multiplication(self, p, h):
        F = build_field(p, h)
        mod = list(F.modulus)

        def polymul(a, b):
            out = [0] * (2 * h - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % p
            for i in range(len(out) - 1, h - 1, -1):
                c = out[i]
                if c:
                    for j in range(h + 1):
                        out[i - h + j] = (out[i - h + j] - c * mod[j]) % p
            return out[:h]

        for a in range(F.q):
            for b in range(F.q):
                ca, cb = F.code_to_coeffs(a), F.code_to_coeffs(b)
                assert F.mul(a, b) == F.coeffs_to_code(polymul(ca, cb))
                assert F.add(a, b) == F.coeffs_to_code([(x + y) % p for x, y in zip(ca, cb)])

    @pytest.mark.parametrize("p,h", FIELDS)
    def test_field_axioms(self, p, h):
        F = build_field(p, h)

        @settings(max_examples=60, deadline=None)
        @given(_codes(F), _codes(F), _codes(F))
        def check(a, b, c):
            x, y, z = F.from_code(a), F.from_code(b), F.from_code(c)
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert x + (-x) == F.zero
            if a:
                assert x * x.inv() == F.one

        check()

    def test_division_by_zero(self):
        F = build_field(7)
        with pytest.raises(DivisionByZero):
            F(0).inv()
        with pytest.raises(DivisionByZero):
            F(3) / F(0)

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            build_field(5)(1) + build_field(7)(1)

    def test_arith_dispatch(self):
        F = build_field(7)
        assert arith("add", F(3), F(5)) == F(1)
        assert arith("mul", F(3), F(5)) == F(1)
        assert arith("inv", F(3)) == F(5)


class TestDlog:
    def test_examples(self):
        F = build_field(5)
        assert dlog(F(1)) == 0 and dlog(F(2)) == 1 and dlog(F(4)) == 2

    def test_zero(self):
        with pytest.raises(DlogOfZero):
            dlog(build_field(5)(0))

    @pytest.mark.parametrize("p,h", FIELDS)
    def test_roundtrip(self, p, h):
        F = build_field(p, h)
        g = F.gen
        for k in range(F.m):
            assert dlog(g**k) == k
        assert sorted(int(x) for x in F.exp) == list(range(1, F.q))
        assert F.log[0] == -1

    @pytest.mark.parametrize("p,h", FIELDS)
    def test_zech(self, p, h):
        F = build_field(p, h)
        for k in range(F.m):
            s = F.add(1, int(F.exp[k]))
            assert F.zech[k] == (-1 if s == 0 else F.log[s])


class TestEmbedding:
    def test_identity(self):
        F = build_field(5)
        big, emb = extend_and_embed(F, 1)
        assert big is F and all(emb(x) == x for x in F.elements())

    def test_f25_generator_image(self):
        F = build_field(5)
        big, emb = extend_and_embed(F, 2)
        assert big.q == 25
        assert emb(F(2)) == big.gen ** 6

    @pytest.mark.parametrize("p,h,k", [(5, 1, 2), (3, 2, 2), (2, 2, 3), (7, 1, 2), (13, 1, 2)])
    def test_homomorphism(self, p, h, k):
        F = build_field(p, h)
        big, emb = extend_and_embed(F, k)
        for x in F.elements():
            for y in F.elements():
                assert emb(x + y) == emb(x) + emb(y)
                assert emb(x * y) == emb(x) * emb(y)
        assert len({emb(x) for x in F.elements()}) == F.q
        assert all(emb.preimage(emb(x)) == x for x in F.elements())

    def test_teichmuller_compatible(self):
        # eps(g) = G^{(Q-1)/(q-1)} so characters restrict consistently
        F = build_field(3, 2)
        big, emb = extend_and_embed(F, 2)
        ratio = big.m // F.m
        for x in F.nonzero():
            assert emb(x).dlog() == x.dlog() * ratio
