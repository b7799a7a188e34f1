from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from charsum.errors import NotTotallyRamified
from charsum.fq import build_field
from charsum.lseries import validate_cover
from charsum.sweep import field_covers
from charsum.zeta import (
    coeffs_from_power_sums,
    count_points,
    count_points_pairs,
    genus,
    power_sums,
    verify_counts,
    zeta_assembly,
)

F5, F7, F13 = build_field(5), build_field(7), build_field(13)


class TestGenus:
    def test_examples(self):
        assert genus(validate_cover(F5, 2, [0, 1, 2], [1, 1, 1])) == 1
        assert genus(validate_cover(F5, 4, [0, 1, 2], [1, 1, 1])) == 3
        assert genus(validate_cover(F7, 3, [0, 1], [1, 1])) == 1

    def test_not_totally_ramified(self):
        c = validate_cover(F5, 4, [0, 1, 2, 3], [1, 1, 1, 3])
        with pytest.raises(NotTotallyRamified):
            genus(c)
        with pytest.raises(NotTotallyRamified):
            count_points(c, 1)


class TestCounts:
    def test_examples(self):
        c = validate_cover(F5, 2, [0, 1, 2], [1, 1, 1])
        assert count_points(c, 1) == 8 and count_points(c, 2) == 32
        assert count_points(validate_cover(F7, 2, [0, 1, 3], [1, 1, 1]), 1) == 4

    @pytest.mark.parametrize("p,n,alphas,mults", [
        (5, 2, (0, 1, 3), (1, 1, 1)),
        (5, 4, (0, 1, 2), (1, 3, 1)),
        (7, 3, (0, 1, 4), (1, 2, 1)),
        (13, 4, (0, 1, 6), (3, 1, 1)),
        (7, 2, (0, 1, 2, 5, 6), (1, 1, 1, 1, 1)),
    ])
    def test_independent_enumeration(self, p, n, alphas, mults):
        c = validate_cover(build_field(p), n, alphas, mults)
        for k in (1, 2):
            assert count_points(c, k) == oracles.count_points(p, n, alphas, mults, k)

    def test_pair_scan(self):
        c = validate_cover(F5, 4, [0, 1, 2], [1, 1, 1])
        assert count_points(c, 2) == count_points_pairs(c, 2) == 44
        G = build_field(3, 2)
        c = validate_cover(G, 4, [0, 1, 5], [1, 3, 1])
        assert count_points(c, 2) == count_points_pairs(c, 2)


class TestAssembly:
    def test_legendre(self):
        assert zeta_assembly(validate_cover(F5, 2, [0, 1, 2], [1, 1, 1])) == [1, 2, 5]

    def test_quartic_degree_six(self):
        numer = zeta_assembly(validate_cover(F5, 4, [0, 1, 2], [1, 1, 1]))
        assert len(numer) == 7 and numer[0] == 1
        assert numer == [1, 2, 11, 12, 55, 50, 125]

    def test_functional_equation(self):
        for item in field_covers(F13, ds=(3,))[:20]:
            numer = zeta_assembly(item.cover)
            g = genus(item.cover)
            assert all(numer[2 * g - i] == 13 ** (g - i) * numer[i] for i in range(g + 1))

    @pytest.mark.parametrize("p,h", [(5, 1), (7, 1), (3, 2), (13, 1)])
    def test_counts_match(self, p, h):
        for item in field_covers(build_field(p, h), ds=(3,))[:12]:
            assert verify_counts(item.cover, K=2).match

    def test_depth_three(self):
        rep = verify_counts(validate_cover(F5, 4, [0, 1, 2], [1, 1, 1]), K=3)
        assert rep.N == [8, 44, 104] and rep.match


class TestNewton:
    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-20, 20), min_size=1, max_size=6))
    def test_roundtrip(self, tail):
        coeffs = [1] + tail
        K = len(tail)
        assert coeffs_from_power_sums(power_sums(coeffs, K)) == coeffs

    def test_roots(self):
        # (1 - 2t)(1 - 3t) = 1 - 5t + 6t^2
        assert power_sums([1, -5, 6], 3) == [5, 13, 35]
