"""Cyclic covers y^n = prod (x - alpha_i)^{n_i} of the line and their L-series.

Two conventions are carried side by side:

* ``paper``  (monic-sum) c_r = sum over monic v of degree r of prod_i chi^{j a_i}(v(alpha_i))
* ``artin``  c_r = sum over monic v of degree r of chi^{j(q-1)/n}(Res(v, f))

They differ by the unit chi(-1)^{r j sum a_i}.  The Artin convention is the
one whose product over j is the zeta numerator of the curve.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .chartab import chi_minus_one, index_of
from .cyc import CycNum
from .errors import (
    BranchPointsNotDistinct,
    CoverError,
    DegenerateCharacter,
    ExponentOutOfRange,
    NDoesNotDivideQMinus1,
    NotTotallyRamified,
    PreconditionFailed,
    UnramifiedAtInfinity,
)
from .fq import FieldSpec, FqElem, extend_and_embed
from .fqlin import inverse
from .jacobi import (
    AffineSubspace,
    IdentityCheck,
    _unit_index,
    jacobi_closed_mod_p,
    jacobi_plain,
    lemma_prod_product,
)
from .parallel import pmap


class CoverSpec:
    """Validated cover data.  Branch points are stored as field codes."""

    def __init__(self, field: FieldSpec, n: int, alphas: Sequence[int], mults: Sequence[int]):
        self.field = field
        self.n = n
        self.alphas = tuple(alphas)
        self.mults = tuple(mults)
        self.d = len(self.alphas)
        self.a = tuple(k * (field.m // n) for k in self.mults)
        self.n0 = (-sum(self.mults)) % n

    def exps(self, j: int = 1) -> tuple[int, ...]:
        return tuple((j * a) % self.field.m for a in self.a)

    def check_character(self, j: int) -> None:
        if not 1 <= j <= self.n - 1:
            raise DegenerateCharacter(f"character power j={j} outside [1, {self.n - 1}]")
        for i, k in enumerate((self.n0,) + self.mults):
            if (j * k) % self.n == 0:
                raise DegenerateCharacter(f"chi^{j} is unramified at branch point {i} (0 = infinity)")

    def is_totally_ramified(self) -> bool:
        return all(math.gcd(k, self.n) == 1 for k in (self.n0,) + self.mults)

    def elem(self, i: int) -> FqElem:
        return self.field.from_code(self.alphas[i])

    def with_alphas(self, alphas: Sequence[int]) -> "CoverSpec":
        return validate_cover(self.field, self.n, alphas, self.mults)

    def to_dict(self) -> dict:
        F = self.field
        return {
            "q": F.q,
            "n": self.n,
            "branch": [F.code_to_coeffs(a) for a in self.alphas],
            "exps": list(self.mults),
            "a": list(self.a),
            "n0": self.n0,
        }

    def label(self) -> str:
        return f"q={self.field.q} n={self.n} branch={list(self.alphas)} exps={list(self.mults)}"

    def __repr__(self) -> str:
        return f"CoverSpec({self.label()})"


def validate_cover(F: FieldSpec, n: int, branch: Sequence, exps: Sequence[int], j: int | None = None) -> CoverSpec:
    """Check the cover invariants.  Integer branch points are element codes."""
    n = int(n)
    if n < 2:
        raise CoverError("cover degree n must be >= 2")
    if F.m % n:
        raise NDoesNotDivideQMinus1(f"n={n} does not divide q-1={F.m}")
    alphas = []
    for b in branch:
        if isinstance(b, FqElem):
            F._check(b)
            alphas.append(b.code)
        else:
            c = int(b)
            if not 0 <= c < F.q:
                raise CoverError(f"branch point code {c} outside F_{F.q}")
            alphas.append(c)
    if len(alphas) < 2:
        raise CoverError("need at least two branch points")
    if len(set(alphas)) != len(alphas):
        raise BranchPointsNotDistinct(f"branch points {alphas} are not distinct")
    mults = [int(k) for k in exps]
    if len(mults) != len(alphas):
        raise CoverError("one exponent per branch point is required")
    for k in mults:
        if not 0 < k < n:
            raise ExponentOutOfRange(f"exponent {k} outside (0, {n})")
    cover = CoverSpec(F, n, alphas, mults)
    if cover.n0 == 0:
        raise UnramifiedAtInfinity("sum of exponents is 0 mod n: infinity is unramified")
    if j is not None:
        cover.check_character(j)
    return cover


def affine_normalize(cover: CoverSpec) -> tuple[CoverSpec, int]:
    """Move alpha_1, alpha_2 to 0, 1 by x -> (x - alpha_1)/(alpha_2 - alpha_1).

    Returns the new cover and the index t with chi(s)^{sum a} = zeta^t,
    s = alpha_2 - alpha_1; then c_r(original, j) = zeta^(r j t) c_r(new, j)
    in the monic-sum ("paper") convention.
    """
    F = cover.field
    a1, a2 = cover.alphas[0], cover.alphas[1]
    s = F.sub(a2, a1)
    inv = F.inv(s)
    new = [F.mul(F.sub(x, a1), inv) for x in cover.alphas]
    t = (sum(cover.a) * int(F.log[s])) % F.m
    return cover.with_alphas(new), t


class LPolynomial:
    """c_0 + c_1 t + ... with CycNum coefficients."""

    def __init__(self, coeffs: Sequence[CycNum], convention: str, q: int, n: int, j: int):
        self.coeffs = list(coeffs)
        self.convention = convention
        self.q, self.n, self.j = q, n, j

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, r: int) -> CycNum:
        return self.coeffs[r]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        m = a[0].m
        pad = lambda c: c + [CycNum.zero(m)] * (n - len(c))  # noqa: E731
        return pad(list(a)) == pad(list(b))

    def conj(self) -> "LPolynomial":
        return LPolynomial([c.conj() for c in self.coeffs], self.convention, self.q, self.n, self.n - self.j)

    def to_dict(self) -> dict:
        return {
            "convention": self.convention,
            "coeffs": [c.to_dict() for c in self.coeffs],
            "q": self.q,
            "n": self.n,
            "j": self.j,
        }

    @staticmethod
    def from_dict(data: dict) -> "LPolynomial":
        return LPolynomial(
            [CycNum.from_dict(c) for c in data["coeffs"]], data["convention"], data["q"], data["n"], data["j"]
        )

    def __repr__(self) -> str:
        return f"LPolynomial[{self.convention}]({self.coeffs})"


def _tables(F: FieldSpec):
    return F.log, F.exp, F.zech


def _alpha_array(cover: CoverSpec) -> np.ndarray:
    return np.asarray(cover.alphas, dtype=np.int64)


def lseries_oracle_paper(cover: CoverSpec, j: int = 1, threads: int | None = None) -> LPolynomial:
    """Enumerate monic v of degree r < d and sum prod chi^{j a_i}(v(alpha_i))."""
    cover.check_character(j)
    F = cover.field
    exps = np.asarray(cover.exps(j), dtype=np.int64)
    alphas = _alpha_array(cover)

    def coeff(r: int) -> CycNum:
        hist = kernels.monic_histogram(r, F.q, alphas, exps, *_tables(F))
        return CycNum(F.m, [int(x) for x in hist])

    return LPolynomial(pmap(coeff, range(cover.d), threads), "paper", F.q, cover.n, j)


def lseries_oracle_artin(cover: CoverSpec, j: int = 1, threads: int | None = None) -> LPolynomial:
    """Enumerate monic v and sum chi^{j(q-1)/n}(Res(v, f)), Res = prod ((-1)^r v(alpha_i))^{n_i}."""
    cover.check_character(j)
    F = cover.field
    alphas = _alpha_array(cover)
    mults = np.asarray(cover.mults, dtype=np.int64)
    scale = (j * (F.m // cover.n)) % F.m

    def coeff(r: int) -> CycNum:
        hist = kernels.resultant_histogram(r, F.q, alphas, mults, scale, F.neg_one, *_tables(F))
        return CycNum(F.m, [int(x) for x in hist])

    return LPolynomial(pmap(coeff, range(cover.d), threads), "artin", F.q, cover.n, j)


def bridge_unit(cover: CoverSpec, j: int, r: int) -> int:
    """chi(-1)^{r j sum a_i}, as +1 or -1."""
    return chi_minus_one(cover.field, r * j * sum(cover.a))


def paper_from_artin(cover: CoverSpec, artin: LPolynomial) -> LPolynomial:
    coeffs = [c * bridge_unit(cover, artin.j, r) for r, c in enumerate(artin.coeffs)]
    return LPolynomial(coeffs, "paper", artin.q, artin.n, artin.j)


def build_subspace_for_degree(cover: CoverSpec, r: int) -> AffineSubspace:
    """Evaluation vectors (v(alpha_1), ..., v(alpha_d)) of monic v of degree r.

    The first r evaluations determine v; writing z = W A + alpha^r with W the
    Vandermonde matrix of alpha_1..alpha_r gives z_k = w_k W^{-1}(z_free - alpha^r) + alpha_k^r.
    """
    F = cover.field
    d = cover.d
    if not 1 <= r <= d - 1:
        raise ValueError("need 1 <= r <= d-1")
    al = cover.alphas
    vand = [[F.power(al[i], l) for l in range(r)] for i in range(r)]
    vinv = inverse(F, vand)
    top = [F.power(al[i], r) for i in range(r)]
    coef, const = [], []
    for k in range(r, d):
        wk = [F.power(al[k], l) for l in range(r)]
        row = []
        for jj in range(r):
            acc = 0
            for l in range(r):
                acc = F.add(acc, F.mul(wk[l], vinv[l][jj]))
            row.append(acc)
        c = F.power(al[k], r)
        for jj in range(r):
            c = F.sub(c, F.mul(row[jj], top[jj]))
        coef.append(row)
        const.append(c)
    return AffineSubspace(F, r, coef, const)


def lseries_jacobi(cover: CoverSpec, j: int = 1, threads: int | None = None, mode: str = "plain") -> LPolynomial:
    """Coefficients from the product formula over the elimination subspaces.

    Every factor J_w is rewritten as unit * plain Jacobi sum via the form
    normalisation (``mode="plain"``); ``mode="form"`` enumerates each form directly.
    """
    cover.check_character(j)
    F = cover.field
    exps = cover.exps(j)
    coeffs = [CycNum.one(F.m)]
    for r in range(1, cover.d):
        H = build_subspace_for_degree(cover, r)
        coeffs.append(lemma_prod_product(H, exps, mode=mode, threads=threads))
    return LPolynomial(coeffs, "paper", F.q, cover.n, j)


# ---------------------------------------------------------------------------
# closed forms for the first coefficient


def _require_01(cover: CoverSpec) -> None:
    if cover.alphas[0] != 0 or cover.alphas[1] != 1:
        raise PreconditionFailed("closed forms need alpha_1 = 0 and alpha_2 = 1")


def c1_d3_closed_form(cover: CoverSpec, j: int = 1) -> CycNum:
    """c_1 (monic-sum convention, label "paper") for alpha = (0, 1, alpha_3, ..., alpha_d).

    (q-1)^{d-2} (-1)^{d-1} chi(-1)^{a_2+..+a_d} c_1 =
      sum over i_3..i_d of prod_k chi^{a_k - i_k}(alpha_k) J^(a_1 + sum i, a_2) prod_k J^(-i_k, a_k).
    For d = 3 this is a single sum over i in [0, q-2].
    """
    cover.check_character(j)
    _require_01(cover)
    F, m, d = cover.field, cover.field.m, cover.d
    if d < 3:
        raise PreconditionFailed("need d >= 3")
    a = cover.exps(j)
    logs = [int(F.log[al]) for al in cover.alphas[2:]]
    total = CycNum.zero(m)
    for idx in itertools.product(range(m), repeat=d - 2):
        t = sum((a[k + 2] - i) * lg for k, (i, lg) in enumerate(zip(idx, logs)))
        term = jacobi_plain(F, (a[0] + sum(idx), a[1])).mul_zeta(t)
        for k, i in enumerate(idx):
            term = term * jacobi_plain(F, (-i, a[k + 2]))
        total = total + term
    sign = (-1) ** (d - 1) * chi_minus_one(F, sum(a[1:]))
    return (total * sign).exact_div(m ** (d - 2))


@dataclass
class ConstantTermReport:
    """Checks on c_2 of a d = 3 cover (monic-sum convention, label "paper")."""

    c2: CycNum
    jacobi: CycNum
    literal_ok: bool  # c_2 == -J^(j a)
    elliptic_ok: bool | None  # n = 2 only: c_2 == q
    predicted: CycNum  # unit * J^(j a) from the normalised single form
    corrected_ok: bool

    @property
    def ok(self) -> bool:
        return self.literal_ok and self.elliptic_ok is not False

    def to_dict(self) -> dict:
        return {
            "c2": self.c2.to_dict(),
            "J": self.jacobi.to_dict(),
            "literal_c2_eq_minus_J": self.literal_ok,
            "c2_eq_q": self.elliptic_ok,
            "predicted": self.predicted.to_dict(),
            "c2_eq_unit_times_J": self.corrected_ok,
        }


def constant_term_unit(cover: CoverSpec, j: int = 1) -> CycNum:
    """The unit u with c_2 = u * J^(j a) for a d = 3 cover, from the normalised form."""
    F = cover.field
    H = build_subspace_for_degree(cover, 2)
    c = H.const[0]
    inv = F.inv(c)
    b = [F.neg(F.mul(x, inv)) for x in H.coef[0]] + [inv]
    sign, t = _unit_index(F, b, cover.exps(j))
    return CycNum.zeta(F.m, t) * sign


def constant_term_check(cover: CoverSpec, j: int = 1, lpoly: LPolynomial | None = None) -> ConstantTermReport:
    if cover.d != 3:
        raise PreconditionFailed("constant term check needs d = 3")
    cover.check_character(j)
    if lpoly is None:
        lpoly = lseries_oracle_paper(cover, j)
    c2 = lpoly[2]
    J = jacobi_plain(cover.field, cover.exps(j))
    predicted = constant_term_unit(cover, j) * J
    elliptic = (c2 == cover.field.q) if cover.n == 2 else None
    return ConstantTermReport(c2, J, c2 == -J, elliptic, predicted, c2 == predicted)


def lemma54_predicate(cover: CoverSpec, j: int = 1) -> bool:
    """a_3 = a_2, 2(a_1 + a_2) = 0 mod q-1, a_1 + a_2 != q-1 and alpha_3^{(q-1)/2} = -1."""
    if cover.d != 3:
        raise PreconditionFailed("predicate needs d = 3")
    F = cover.field
    a1, a2, a3 = cover.exps(j)
    if F.q % 2 == 0:
        return False
    alpha = cover.alphas[2]
    return (
        a3 == a2
        and (2 * (a1 + a2)) % F.m == 0
        and a1 + a2 != F.m
        and alpha != 0
        and F.power(alpha, F.m // 2) == F.neg_one
    )


# ---------------------------------------------------------------------------
# Euler product


def _exact_degree_orbits(big: FieldSpec, base_q: int, k: int) -> np.ndarray:
    """Smallest code in each Frobenius orbit of elements of exact degree k over F_q."""
    codes = np.arange(1, big.q, dtype=np.int64)
    logs = big.log[codes]
    M = big.m
    cur = codes
    iterates = [codes]
    degree = np.zeros(codes.size, dtype=np.int64)
    lg = logs.copy()
    for l in range(1, k + 1):
        lg = (lg * base_q) % M
        cur = big.exp[lg]
        fixed = (cur == codes) & (degree == 0)
        degree[fixed] = l
        if l < k:
            iterates.append(cur)
    stack = np.vstack(iterates)
    rep = stack.min(axis=0)
    picked = codes[(degree == k) & (rep == codes)]
    if k == 1:
        picked = np.concatenate([[0], picked])  # x - 0 is irreducible too
    return picked


def irreducible_characters(cover: CoverSpec, j: int, k: int) -> list[int | None]:
    """For each monic irreducible pi of degree k: chi-index of prod chi^{j a_i}(pi(alpha_i)), None if it vanishes."""
    F = cover.field
    big, emb = extend_and_embed(F, k)
    exps = cover.exps(j)
    thetas = _exact_degree_orbits(big, F.q, k)
    out: list[int | None] = []
    embedded = [emb.code(a) for a in cover.alphas]
    for theta in thetas:
        theta = int(theta)
        conj = [theta]
        for _ in range(k - 1):
            conj.append(big.power(conj[-1], F.q))
        idx = 0
        dead = False
        for e, al in zip(exps, embedded):
            val = 1
            for t in conj:
                val = big.mul(val, big.sub(al, t))
            if val == 0:
                dead = True
                break
            idx += e * int(F.log[emb.preimage_code(val)])
        out.append(None if dead else idx % F.m)
    return out


def euler_product_truncated(cover: CoverSpec, j: int, degree_bound: int) -> list[CycNum]:
    """Power series of prod_pi (1 - chi(pi) t^deg pi)^{-1} up to t^degree_bound (monic-sum convention, label "paper")."""
    cover.check_character(j)
    if degree_bound > 2 * (cover.d - 1):
        raise ValueError("degree_bound must be <= 2(d-1)")
    F, m = cover.field, cover.field.m
    series = [CycNum.one(m)] + [CycNum.zero(m) for _ in range(degree_bound)]
    for k in range(1, degree_bound + 1):
        counts: dict[int, int] = {}
        for idx in irreducible_characters(cover, j, k):
            if idx is not None:
                counts[idx] = counts.get(idx, 0) + 1
        for idx, N in sorted(counts.items()):
            factor = [CycNum.zero(m) for _ in range(degree_bound + 1)]
            for s in range(degree_bound // k + 1):
                factor[k * s] = CycNum.zeta(m, idx * s) * math.comb(N + s - 1, s)
            series = [
                sum((series[a] * factor[n - a] for a in range(n + 1)), CycNum.zero(m))
                for n in range(degree_bound + 1)
            ]
    return series


# ---------------------------------------------------------------------------
# mod-p formula and the printed coefficient expansion


@dataclass
class CoeffModPReport:
    r: int
    formula: FqElem
    reduced: FqElem
    details: dict = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.formula == self.reduced

    def to_dict(self) -> dict:
        return {"r": self.r, "formula": self.formula.coeffs, "reduced": self.reduced.coeffs,
                "match": self.match, **self.details}


def coeff_mod_p(cover: CoverSpec, j: int, r: int, lpoly: LPolynomial | None = None) -> CoeffModPReport:
    """c_r mod p from the product formula with every Jacobi sum replaced by its binomial closed form.

    Units chi(beta)^e reduce to beta^e; the (q-1)^{-r(d-r-1)} factor reduces
    to a power of -1.  Compared against the reduction of the exact c_r.
    """
    cover.check_character(j)
    F, m, d = cover.field, cover.field.m, cover.d
    if not 1 <= r <= d - 1:
        raise ValueError("need 1 <= r <= d-1")
    if lpoly is None:
        lpoly = lseries_oracle_paper(cover, j)
    H = build_subspace_for_degree(cover, r)
    e = cover.exps(j)
    a_free, a_dep = e[:r], e[r:]

    def row_factor(k: int, left: Sequence[int], ak: int) -> FqElem:
        c = H.const[k]
        inv = F.inv(c)
        b = [F.neg(F.mul(x, inv)) for x in H.coef[k]] + [inv]
        ex = list(left) + [ak]
        sign, t = _unit_index(F, b, ex)
        unit = F.from_code(int(F.exp[t])) * sign
        return unit * jacobi_closed_mod_p(F, ex)

    K = d - r - 1
    total = F(0)
    for tup in itertools.product(itertools.product(range(m), repeat=r), repeat=K):
        s = [(a_free[l] + sum(t[l] for t in tup)) % m for l in range(r)]
        term = row_factor(0, s, a_dep[0])
        for k, t in enumerate(tup):
            if not term:
                break
            term = term * row_factor(k + 1, [-x for x in t], a_dep[k + 1])
        total = total + term
    formula = total / F(m) ** (r * K) if K else total
    details = {}
    if cover.n == 2 and d == 3 and r == 1 and cover.alphas[:2] == (0, 1):
        lam = cover.elem(2)
        half = m // 2
        H_val = sum((lam**i) * (math.comb(half, i) ** 2) for i in range(half + 1))
        details["minus_deuring"] = (-H_val).coeffs
    return CoeffModPReport(r, formula, lpoly[r].reduce_to_field(F), details)


def theorem51_printed(cover: CoverSpec, j: int, r: int, lpoly: LPolynomial | None = None) -> IdentityCheck:
    """The closed-form C-coefficient expansion taken literally, against the exact c_r.

    C = (-1)^{r(d-r)+a_1+..+a_d} prod_{l<=r} (alpha_l - alpha_{r+1})^{sum_k i_l^k}
        prod_{l != j <= r+1} (alpha_j - alpha_l)^{a_j}
        prod_{k>=r+2} (-1)^{a_k} prod_{j<=r} (alpha_j - alpha_k)^{a_k - i_j^k},
    read as a field element and fed to chi.  Diagnostic only.
    """
    cover.check_character(j)
    _require_01(cover)
    F, m, d = cover.field, cover.field.m, cover.d
    if lpoly is None:
        lpoly = lseries_oracle_paper(cover, j)
    a = cover.exps(j)
    al = cover.alphas
    K = d - r - 1

    def chi_index(x: int, power: int) -> int | None:
        return None if x == 0 else (int(F.log[x]) * power) % m

    fixed = 0
    for jj in range(r + 1):
        for l in range(r + 1):
            if jj != l:
                fixed += chi_index(F.sub(al[jj], al[l]), a[jj])
    sign_exp = r * (d - r) + sum(a) + sum(a[r + 1 :])
    fixed += (sign_exp * int(F.log[F.neg_one])) % m if F.q % 2 else 0

    total = CycNum.zero(m)
    for tup in itertools.product(itertools.product(range(m), repeat=r), repeat=K):
        t = fixed
        for l in range(r):
            t += chi_index(F.sub(al[l], al[r]), sum(x[l] for x in tup))
        for k, ik in enumerate(tup):
            kk = r + 1 + k
            for jj in range(r):
                t += chi_index(F.sub(al[jj], al[kk]), a[kk] - ik[jj])
        first = [a[l] + sum(x[l] for x in tup) for l in range(r)] + [a[r]]
        term = jacobi_plain(F, first).mul_zeta(t)
        for k, ik in enumerate(tup):
            term = term * jacobi_plain(F, [-x for x in ik] + [a[r + 1 + k]])
        total = total + term
    value = total.scalar_div(m ** (r * K)) if K else total
    return IdentityCheck("printed_expansion", value == lpoly[r], value, lpoly[r], {"r": r})
