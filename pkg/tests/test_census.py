from __future__ import annotations

import math

import pytest

import oracles
from charsum.census import (
    build_census,
    c1_star,
    charpoly_check,
    deuring_mod_p,
    deuring_poly,
    hermitian_det,
    hermitian_matrix,
    quotient_factor_check,
    rank_and_signature,
)
from charsum.cyc import CycNum
from charsum.errors import LambdaZero, PreconditionFailed
from charsum.fq import build_field
from charsum.jacobi import jacobi_plain
from charsum.linalg import charpoly, det, leading_minors

F5, F7, F13 = build_field(5), build_field(7), build_field(13)


def _elliptic_trace(p: int, lam: int) -> int:
    """a_p = p + 1 - #E from the independent pair count."""
    return p + 1 - oracles.count_points(p, 2, (0, 1, lam), (1, 1, 1), 1)


class TestTraces:
    def test_examples(self):
        assert c1_star(F5, F5(2))[1] == 2
        assert c1_star(F5, F5(3))[1] == -2
        assert c1_star(F5, F5(1))[1] == -1

    def test_formal_lambda_one(self):
        S = [jacobi_plain(F5, (-j, 2)) ** 2 for j in range(4)]
        assert S == [1, CycNum(4, [-3, -4]), 1, CycNum(4, [-3, 4])]

    def test_lambda_zero(self):
        with pytest.raises(LambdaZero):
            c1_star(F5, F5(0))

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_against_point_counts(self, p):
        F = build_field(p)
        sign = -1 if p % 4 == 3 else 1  # chi(-1)^{3(q-1)/2} bridges the conventions
        for lam in range(2, p):
            assert sign * c1_star(F, F(lam))[1] == -_elliptic_trace(p, lam)

    def test_census_rows(self):
        table = build_census(F5)
        assert [r.c1_paper for r in table.rows] == [-1, 2, -2, 2]
        assert [r.count_N1 for r in table.rows[1:]] == [8, 4, 8]
        assert table.supersingular == [] and table.n_point_rich == 2

    def test_p7_supersingular(self):
        table = build_census(F7)
        assert table.supersingular == [2, 4, 6]
        row = table.rows[5]
        assert row.lam == 6 and row.count_N1 == 8
        assert len(table.to_csv().strip().splitlines()) == 7


class TestDeuring:
    def test_p7_root(self):
        assert deuring_poly(F7, F7(6)) == F7(1 + 2 * 6 + 2 * 36 + 216)
        assert deuring_poly(F7, F7(6)).is_zero()

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_congruence(self, p):
        F = build_field(p)
        for lam in range(1, p):
            assert deuring_mod_p(F, F(lam)).congruence_ok

    def test_deuring_coefficients(self):
        half = 3
        assert [math.comb(half, j) ** 2 for j in range(half + 1)] == [1, 9, 9, 1]


class TestMatrix:
    def test_q5_entries(self):
        H = hermitian_matrix(F5)
        assert H.hermitian and H.circulant
        row = [H.entry(0, s) for s in range(4)]
        assert [x.complex_embed() for x in row] == pytest.approx([0.25, -0.75 - 1j, 0.25, -0.75 + 1j])
        assert H.trace() == 1

    def test_q5_charpoly(self):
        rep = charpoly_check(F5)
        assert rep.ok and rep.eigenvalues == [-2, -1, 2, 2]
        assert rep.charpoly_unprefixed == [2048, 256, -96, -4, 1]

    def test_q5_signature(self):
        sig = rank_and_signature(F5)
        assert sig.minors == [1, -24, -64, 2048]
        assert sig.rank == 4 and (sig.positive, sig.negative) == (2, 2)
        assert sig.positive_minors == 2 == sig.positive_c1

    def test_q7_rank(self):
        sig = rank_and_signature(F7)
        assert sig.rank == 3 and sig.rank_claim
        assert any("vanishes" in w for w in sig.warnings)

    def test_q13_charpoly(self):
        assert charpoly_check(F13).ok

    def test_det_is_product_of_eigenvalues(self):
        assert hermitian_det(F5) == 2048

    def test_odd_q_only(self):
        with pytest.raises(PreconditionFailed):
            build_census(build_field(2, 3))


class TestLinalg:
    def test_small_matrix(self):
        z = CycNum.zeta(4)
        A = [[CycNum.from_int(4, 2), z], [z.conj(), CycNum.from_int(4, 3)]]
        assert det(A) == 5
        assert charpoly(A) == [5, -5, 1]
        assert leading_minors(A) == [2, 5]

    def test_zero_pivot(self):
        o, z = CycNum.one(4), CycNum.zero(4)
        A = [[z, o], [o, z]]
        assert det(A) == -1
        assert leading_minors(A) == [0, -1]


class TestQuarticFactor:
    def test_q5(self):
        rep = quotient_factor_check(F5, F5(2))
        assert rep.c1_zero and rep.conj_ok and rep.corrected_c2 and rep.literal_c2
        rep = quotient_factor_check(F5, F5(3))
        assert rep.c1_zero and rep.conj_ok and rep.corrected_c2 and not rep.literal_c2

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            quotient_factor_check(F5, F5(4))
