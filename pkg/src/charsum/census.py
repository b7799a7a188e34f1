"""The Legendre family y^2 = x(x-1)(x-lambda): traces, Deuring polynomial, census matrix.

c1_star evaluates the squared-Jacobi-sum formula
    c_1(lambda) = (q-1)^{-1} sum_{j mod q-1} chi(lambda)^j (J^(-j, (q-1)/2))^2,
the monic-sum ("paper") convention first L-coefficient.  The census matrix is the
(q-1) x (q-1) circulant whose eigenvalues are exactly these values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chartab import chi_minus_one
from .cyc import CycNum
from .errors import LambdaZero, PreconditionFailed
from .fq import FieldSpec, FqElem
from .jacobi import jacobi_plain
from .linalg import charpoly, det, is_hermitian, leading_minors, polymul_int, sign_changes
from .lseries import (
    constant_term_unit,
    lseries_oracle_artin,
    lseries_oracle_paper,
    validate_cover,
)
from .parallel import pmap
from .zeta import count_points


def _odd(F: FieldSpec) -> int:
    if F.q % 2 == 0:
        raise PreconditionFailed("the Legendre family needs odd q")
    return F.m // 2


def squared_sums(F: FieldSpec) -> list[CycNum]:
    """S_j = (J^(j, (q-1)/2))^2 for j = 0..q-2."""
    a = _odd(F)
    return [jacobi_plain(F, (j, a)) ** 2 for j in range(F.m)]


def c1_star(F: FieldSpec, lam: FqElem) -> tuple[CycNum, int | None]:
    """Exact value of the squared-sum formula and its integer form."""
    F._check(lam)
    if lam.is_zero():
        raise LambdaZero("lambda must be nonzero")
    S = squared_sums(F)
    ell = lam.dlog()
    total = CycNum.zero(F.m)
    for j in range(F.m):
        total = total + S[(-j) % F.m].mul_zeta(j * ell)
    value = total.scalar_div(F.m)
    return value, value.as_rational_integer()


def deuring_poly(F: FieldSpec, lam: FqElem) -> FqElem:
    """H(lambda) = sum_{j <= (q-1)/2} lambda^j C((q-1)/2, j)^2."""
    a = _odd(F)
    return sum((lam**j * (math.comb(a, j) ** 2) for j in range(a + 1)), F(0))


@dataclass
class DeuringReport:
    lam: FqElem
    H: FqElem
    c1_reduced: FqElem

    @property
    def congruence_ok(self) -> bool:
        return self.c1_reduced == -self.H

    @property
    def root(self) -> bool:
        return self.H.is_zero()

    def to_dict(self) -> dict:
        return {"lambda": self.lam.coeffs, "H": self.H.coeffs, "c1_mod_p": self.c1_reduced.coeffs,
                "c1_eq_minus_H": self.congruence_ok}


def deuring_mod_p(F: FieldSpec, lam: FqElem) -> DeuringReport:
    value, _ = c1_star(F, lam)
    return DeuringReport(lam, deuring_poly(F, lam), value.reduce_to_field(F))


@dataclass
class CensusRow:
    lam: int  # field code
    c1_paper: int
    c1_artin: int
    count_N1: int
    supersingular: bool
    bridge_unit: int
    elliptic: bool

    def to_dict(self, F: FieldSpec) -> dict:
        return {
            "lambda": self.lam if F.h == 1 else F.code_to_coeffs(self.lam),
            "c1_artin": self.c1_artin,
            "c1_paper": self.c1_paper,
            "count_N1": self.count_N1,
            "supersingular": self.supersingular,
            "bridge_unit": self.bridge_unit,
            "elliptic": self.elliptic,
        }


CSV_COLUMNS = ["lambda", "c1_artin", "c1_paper", "count_N1", "supersingular", "bridge_unit"]


@dataclass
class LegendreTraceTable:
    field: FieldSpec
    rows: list[CensusRow]

    @property
    def supersingular(self) -> list[int]:
        return [r.lam for r in self.rows if r.elliptic and r.supersingular]

    @property
    def n_point_rich(self) -> int:
        """#{lambda : #E > q + 1}, over elliptic members."""
        return sum(1 for r in self.rows if r.elliptic and r.c1_artin > 0)

    @property
    def n_positive_paper(self) -> int:
        return sum(1 for r in self.rows if r.c1_paper > 0)

    def to_dict(self) -> dict:
        return {
            "q": self.field.q,
            "rows": [r.to_dict(self.field) for r in self.rows],
            "supersingular": self.supersingular,
            "n_supersingular": len(self.supersingular),
            "n_point_rich": self.n_point_rich,
        }

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for r in self.rows:
            d = r.to_dict(self.field)
            lam = d["lambda"] if self.field.h == 1 else ":".join(map(str, d["lambda"]))
            lines.append(",".join(str(x).lower() if isinstance(x, bool) else str(x)
                                  for x in [lam, d["c1_artin"], d["c1_paper"], d["count_N1"],
                                            d["supersingular"], d["bridge_unit"]]))
        return "\n".join(lines) + "\n"


def _row(F: FieldSpec, code: int) -> CensusRow:
    lam = F.from_code(code)
    _, c1 = c1_star(F, lam)
    if c1 is None:  # pragma: no cover - the formula value is always an integer
        raise ArithmeticError(f"c1 at lambda={code} is not a rational integer")
    bridge = chi_minus_one(F, 3 * (F.m // 2))
    if code == 1:
        return CensusRow(code, c1, bridge * c1, F.q + 1 + bridge * c1, c1 % F.p == 0, bridge, False)
    cover = validate_cover(F, 2, [0, 1, code], [1, 1, 1])
    artin = lseries_oracle_artin(cover, 1)[1].as_rational_integer()
    n1 = count_points(cover, 1)
    return CensusRow(code, c1, artin, n1, c1 % F.p == 0, bridge, True)


def build_census(F: FieldSpec, threads: int | None = None) -> LegendreTraceTable:
    """One row per lambda in F_q^x.  lambda = 1 is kept as a formal, non-elliptic row."""
    if F.q % 2 == 0 or F.q < 5:
        raise PreconditionFailed("census needs odd q >= 5")
    return LegendreTraceTable(F, pmap(lambda c: _row(F, c), range(1, F.q), threads))


# ---------------------------------------------------------------------------


@dataclass
class HermitianCensusMatrix:
    field: FieldSpec
    unprefixed: list[list[CycNum]]  # S_{(k-s) mod (q-1)}
    hermitian: bool
    circulant: bool

    @property
    def dim(self) -> int:
        return self.field.m

    def entry(self, k: int, s: int) -> CycNum:
        return self.unprefixed[k][s].scalar_div(self.field.m)

    @property
    def entries(self) -> list[list[CycNum]]:
        return [[self.entry(k, s) for s in range(self.dim)] for k in range(self.dim)]

    def trace(self) -> CycNum:
        return sum((self.entry(k, k) for k in range(self.dim)), CycNum.zero(self.field.m))

    def minors(self) -> list[CycNum]:
        return leading_minors(self.unprefixed)


def hermitian_matrix(F: FieldSpec) -> HermitianCensusMatrix:
    """entry(k, s) = (q-1)^{-1} (J^((k-s) mod (q-1), (q-1)/2))^2; row 0 reads S_0, S_{-1}, ..., S_{-(q-2)}."""
    S = squared_sums(F)
    m = F.m
    mat = [[S[(k - s) % m] for s in range(m)] for k in range(m)]
    circ = all(mat[k][s] == mat[(k + 1) % m][(s + 1) % m] for k in range(m) for s in range(m))
    return HermitianCensusMatrix(F, mat, is_hermitian(mat), circ)


def _integer_poly(coeffs: list[CycNum]) -> list[int] | None:
    ints = [c.as_rational_integer() for c in coeffs]
    return None if any(v is None for v in ints) else ints


@dataclass
class CharpolyReport:
    q: int
    charpoly_unprefixed: list[int]  # det(x I - S), low degree first
    charpoly_prefixed: list[tuple[int, int]]  # det(x I - S/(q-1)) as fractions (num, den)
    product_poly: list[int]  # prod_lambda (x - c_1(lambda))
    eigenvalues: list[int]
    ok: bool
    by_lambda: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "charpoly": [list(x) for x in self.charpoly_prefixed],
            "charpoly_unprefixed": self.charpoly_unprefixed,
            "product_poly": self.product_poly,
            "eigenvalues": self.eigenvalues,
            "ok": self.ok,
        }


def charpoly_check(F: FieldSpec, threads: int | None = None) -> CharpolyReport:
    H = hermitian_matrix(F)
    m = F.m
    unpref = _integer_poly(charpoly(H.unprefixed))
    if unpref is None:  # pragma: no cover - S is Hermitian with integer spectrum
        raise ArithmeticError("characteristic polynomial is not integral")
    values = pmap(lambda c: c1_star(F, F.from_code(c))[1], range(1, F.q), threads)
    eig = sorted(values)
    prod = [1]
    for e in eig:
        prod = polymul_int(prod, [-e, 1])
    # det(x I - S/m) = m^{-n} det(m x I - S): coefficient k scales by m^{k-n}
    pref = []
    for k, c in enumerate(unpref):
        num, den = c, m ** (m - k)
        g = math.gcd(num, den)
        pref.append((num // g, den // g))
    ok = all(den == 1 and num == p for (num, den), p in zip(pref, prod))
    return CharpolyReport(F.q, unpref, pref, prod, eig, ok, dict(zip(range(1, F.q), values)))


def _real_root_counts(poly: list[int]) -> tuple[int, int, int]:
    """(#zero, #positive, #negative) roots of a real-rooted integer polynomial, by Descartes' rule."""
    zeros = next(i for i, c in enumerate(poly) if c != 0)
    reduced = poly[zeros:]
    pos = sign_changes(list(reversed(reduced)))
    neg = sign_changes([c * (-1) ** i for i, c in reversed(list(enumerate(reduced)))])
    return zeros, pos, neg


@dataclass
class SignatureReport:
    q: int
    rank: int
    positive: int
    negative: int
    minors: list[int | None]
    positive_minors: int
    positive_c1: int
    n_nonzero_c1: int
    n_point_rich: int
    warnings: list[str] = field(default_factory=list)

    @property
    def minors_claim(self) -> bool:
        return self.positive_minors == self.positive_c1

    @property
    def rank_claim(self) -> bool:
        return self.rank == self.n_nonzero_c1

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "rank": self.rank,
            "signature": [self.positive, self.negative],
            "minors": self.minors,
            "positive_minors": self.positive_minors,
            "positive_c1": self.positive_c1,
            "minors_claim": self.minors_claim,
            "rank_claim": self.rank_claim,
            "n_point_rich": self.n_point_rich,
            "warnings": self.warnings,
        }


def rank_and_signature(F: FieldSpec, threads: int | None = None) -> SignatureReport:
    report = charpoly_check(F, threads)
    m = F.m
    zeros, pos, neg = _real_root_counts(report.charpoly_unprefixed)
    H = hermitian_matrix(F)
    minors = [x.as_rational_integer() for x in H.minors()]
    warnings = []
    if any(x is None for x in minors):
        warnings.append("some leading minor is not a rational integer")
    if any(x == 0 for x in minors):
        warnings.append("a leading minor vanishes: the sign-count criterion does not apply")
    if F.h != 1:
        warnings.append("q is not prime: c_1 = 0 mod p does not force c_1 = 0")
    pos_minors = sum(1 for x in minors if x is not None and x > 0)
    eig = report.eigenvalues
    bridge = chi_minus_one(F, 3 * (m // 2))
    rich = sum(1 for c, v in report.by_lambda.items() if c != 1 and bridge * v > 0)
    return SignatureReport(
        F.q, m - zeros, pos, neg, minors, pos_minors,
        sum(1 for e in eig if e > 0), sum(1 for e in eig if e != 0), rich, warnings,
    )


@dataclass
class QuotientFactorReport:
    lam: FqElem
    L1: list[CycNum]
    L3: list[CycNum]
    J: CycNum
    c1_zero: bool
    literal_c2: bool  # c_2 == -J^(a,a,a)
    conj_ok: bool
    corrected_c2: bool  # c_2 == unit * J^(a,a,a)

    @property
    def ok(self) -> bool:
        return self.c1_zero and self.literal_c2 and self.conj_ok

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam.coeffs,
            "L1": [c.to_dict() for c in self.L1],
            "L3": [c.to_dict() for c in self.L3],
            "J": self.J.to_dict(),
            "c1_zero": self.c1_zero,
            "c2_eq_minus_J": self.literal_c2,
            "conjugate": self.conj_ok,
            "c2_eq_unit_times_J": self.corrected_c2,
        }


def quotient_factor_check(F: FieldSpec, lam: FqElem) -> QuotientFactorReport:
    """y^4 = x(x-1)(x-lambda) with lambda^{(q-1)/2} = -1: shape of the j = 1 and j = 3 factors."""
    if F.m % 4:
        raise PreconditionFailed("need 4 | q-1")
    if lam.is_zero() or lam ** (F.m // 2) != F(-1):
        raise PreconditionFailed("need lambda^{(q-1)/2} = -1")
    cover = validate_cover(F, 4, [0, 1, lam.code], [1, 1, 1])
    L1 = lseries_oracle_paper(cover, 1)
    L3 = lseries_oracle_paper(cover, 3)
    a = F.m // 4
    J = jacobi_plain(F, (a, a, a))
    unit = constant_term_unit(cover, 1)
    return QuotientFactorReport(
        lam, L1.coeffs, L3.coeffs, J,
        L1[1].is_zero(), L1[2] == -J, L3 == L1.conj(), L1[2] == unit * J,
    )


def hermitian_det(F: FieldSpec) -> CycNum:
    return det(hermitian_matrix(F).unprefixed)
