"""Point counts of the smooth model and the zeta numerator.

Counting is deliberately naive: enumerate x in F_{q^k}, evaluate f and test
whether f(x) is an n-th power via its discrete log.  Nothing here uses a
character sum, so it serves as the independent oracle for the L-series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .cyc import CycNum
from .errors import InexactDivision, NotTotallyRamified
from .fq import extend_and_embed
from .lseries import CoverSpec, lseries_oracle_artin


def _require_total(cover: CoverSpec) -> None:
    if not cover.is_totally_ramified():
        raise NotTotallyRamified(f"{cover.label()} has a branch exponent sharing a factor with n")


def genus(cover: CoverSpec) -> int:
    _require_total(cover)
    return (cover.n - 1) * (cover.d - 1) // 2


def count_points(cover: CoverSpec, k: int = 1) -> int:
    """N_k: affine points over F_{q^k} plus one point above each of the d + 1 branch points."""
    _require_total(cover)
    big, emb = extend_and_embed(cover.field, k)
    neg = np.asarray([big.neg(emb.code(a)) for a in cover.alphas], dtype=np.int64)
    mults = np.asarray(cover.mults, dtype=np.int64)
    affine = kernels.count_affine(big.q, neg, mults, cover.n, big.log, big.exp, big.zech)
    return int(affine) + cover.d + 1


def count_points_pairs(cover: CoverSpec, k: int = 1) -> int:
    """Slow pair scan over (x, y) in F_{q^k}^2; test oracle for :func:`count_points`."""
    _require_total(cover)
    big, emb = extend_and_embed(cover.field, k)
    al = [emb.code(a) for a in cover.alphas]
    powers = {}
    for y in range(1, big.q):
        v = big.power(y, cover.n)
        powers[v] = powers.get(v, 0) + 1
    total = 0
    for x in range(big.q):
        f = 1
        for a, e in zip(al, cover.mults):
            f = big.mul(f, big.power(big.sub(x, a), e))
        if f:
            total += powers.get(f, 0)
    return total + cover.d + 1


def zeta_assembly(cover: CoverSpec, threads: int | None = None) -> list[int]:
    """prod over j = 1..n-1 of the Artin-convention L-polynomials, as integers."""
    m = cover.field.m
    prod = [CycNum.one(m)]
    for j in range(1, cover.n):
        L = lseries_oracle_artin(cover, j, threads=threads)
        out = [CycNum.zero(m) for _ in range(len(prod) + len(L) - 1)]
        for a, x in enumerate(prod):
            for b, y in enumerate(L.coeffs):
                out[a + b] = out[a + b] + x * y
        prod = out
    ints = [c.as_rational_integer() for c in prod]
    if any(v is None for v in ints):
        raise InexactDivision(f"zeta numerator of {cover.label()} is not integral: {prod}")
    while len(ints) > 1 and ints[-1] == 0:
        ints.pop()
    return ints


def power_sums(coeffs: list[int], K: int) -> list[int]:
    """s_k = sum omega_i^k for P(t) = sum c_i t^i = prod (1 - omega_i t), k = 1..K."""
    e = [(-1) ** i * c for i, c in enumerate(coeffs)]
    s: list[int] = []
    for k in range(1, K + 1):
        ek = e[k] if k < len(e) else 0
        val = (-1) ** (k - 1) * k * ek
        for i in range(1, k):
            ei = e[i] if i < len(e) else 0
            val += (-1) ** (i - 1) * ei * s[k - i - 1]
        s.append(val)
    return s


def coeffs_from_power_sums(s: list[int]) -> list[int]:
    """Inverse of :func:`power_sums`: c_0..c_K with c_0 = 1."""
    e = [1]
    for k in range(1, len(s) + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i - 1] for i in range(1, k + 1))
        if acc % k:
            raise InexactDivision("power sums are not those of an integer polynomial")
        e.append(acc // k)
    return [(-1) ** i * x for i, x in enumerate(e)]


@dataclass
class PointCountReport:
    cover: CoverSpec
    N: list[int]
    predicted: list[int]
    numerator_counts: list[int]
    numerator_lseries: list[int]
    match: bool

    def to_dict(self) -> dict:
        return {
            "cover": self.cover.to_dict(),
            "N": self.N,
            "predicted": self.predicted,
            "numerator_counts": self.numerator_counts,
            "numerator_lseries": self.numerator_lseries,
            "match": self.match,
        }


def verify_counts(cover: CoverSpec, K: int = 2, threads: int | None = None) -> PointCountReport:
    """Compare N_1..N_K against q^k + 1 - s_k from the assembled numerator."""
    q = cover.field.q
    g = genus(cover)
    numer = zeta_assembly(cover, threads=threads)
    s = power_sums(numer, K)
    predicted = [q**k + 1 - s[k - 1] for k in range(1, K + 1)]
    N = [count_points(cover, k) for k in range(1, K + 1)]
    from_counts = coeffs_from_power_sums([q**k + 1 - n for k, n in enumerate(N, start=1)])
    if K >= g:
        # functional equation c_{2g-i} = q^{g-i} c_i completes the polynomial
        full = from_counts[: g + 1] + [0] * g
        for i in range(g):
            full[2 * g - i] = q ** (g - i) * from_counts[i]
        from_counts = full
    padded = numer + [0] * (len(from_counts) - len(numer))
    match = N == predicted and padded[: len(from_counts)] == from_counts
    return PointCountReport(cover, N, predicted, from_counts, numer, match)
