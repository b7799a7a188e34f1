"""Jacobi sums over hyperplanes and affine subspaces of F_q^d.

Conventions: chi is the Teichmüller character of :mod:`charsum.chartab` and
every power of it vanishes at 0.  For an exponent tuple a = (a_1..a_d),

* ``jacobi_plain``  J^(a)   = (-1)^(d-1) * sum_{z_1+..+z_d+1=0} prod chi^{a_i}(z_i)
* ``jacobi_form``   J_w^(a) = sum_{w(z)=0} prod chi^{a_i}(z_i)
* ``jacobi_subspace_brute`` J_H^(a) = sum_{z in H} prod chi^{a_i}(z_i)

The product formula (:func:`lemma_prod_product`) rebuilds J_H from Jacobi
sums of the individual defining forms by expanding chi^{a_k} of each
dependent coordinate in characters of the free ones.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .chartab import index_of
from .cyc import CycNum, _cyclic_mul
from .errors import ZeroCoefficient
from .fq import FieldSpec, FqElem
from .fqlin import row_reduce
from .parallel import chunks, pmap, resolve_threads

_INT64_SAFE = 1 << 62


def _code(F: FieldSpec, v) -> int:
    """Ints are element codes; outside [0, q) they are read mod p in a prime field."""
    if isinstance(v, FqElem):
        F._check(v)
        return v.code
    v = int(v)
    if 0 <= v < F.q:
        return v
    if F.h == 1:
        return v % F.p
    raise ValueError(f"{v} is not an element code of F_{F.q}")


# ---------------------------------------------------------------------------
# data types


class ExponentTuple:
    """Exponents reduced mod q-1, keeping the signed input for display."""

    __slots__ = ("m", "raw", "values")

    def __init__(self, m: int, values: Iterable[int]):
        self.m = m
        self.raw = tuple(int(v) for v in values)
        if not self.raw:
            raise ValueError("exponent tuple must be non-empty")
        self.values = tuple(v % m for v in self.raw)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def negated(self) -> "ExponentTuple":
        return ExponentTuple(self.m, [-v for v in self.raw])

    def scaled(self, j: int) -> "ExponentTuple":
        return ExponentTuple(self.m, [j * v for v in self.raw])

    def __eq__(self, other) -> bool:
        if isinstance(other, ExponentTuple):
            return self.m == other.m and self.values == other.values
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.m, self.values))

    def __repr__(self) -> str:
        return f"ExponentTuple({list(self.raw)} mod {self.m})"


def _exps(F: FieldSpec, a) -> tuple[int, ...]:
    if isinstance(a, ExponentTuple):
        if a.m != F.m:
            raise ValueError(f"exponents mod {a.m} used over F_{F.q}")
        return a.values
    return tuple(int(x) % F.m for x in a)


class LinearForm:
    """w(z) = g_1 z_1 + ... + g_d z_d + g over F_q, stored as codes."""

    __slots__ = ("field", "coeffs", "const")

    def __init__(self, field: FieldSpec, coeffs: Sequence, const=0):
        self.field = field
        self.coeffs = tuple(_code(field, c) for c in coeffs)
        self.const = _code(field, const)
        if not any(self.coeffs) and not self.const:
            raise ValueError("linear form is identically zero")

    @classmethod
    def from_codes(cls, field: FieldSpec, coeffs: Sequence[int], const: int) -> "LinearForm":
        form = cls.__new__(cls)
        form.field, form.coeffs, form.const = field, tuple(int(c) for c in coeffs), int(const)
        if not any(form.coeffs) and not form.const:
            raise ValueError("linear form is identically zero")
        return form

    @property
    def d(self) -> int:
        return len(self.coeffs)

    def evaluate(self, z: Sequence[int]) -> int:
        F = self.field
        acc = self.const
        for g, x in zip(self.coeffs, z):
            acc = F.add(acc, F.mul(g, x))
        return acc

    def scale(self, c) -> "LinearForm":
        F = self.field
        c = _code(F, c)
        if c == 0:
            raise ZeroCoefficient("scaling a form by 0")
        return LinearForm.from_codes(F, [F.mul(c, g) for g in self.coeffs], F.mul(c, self.const))

    def __repr__(self) -> str:
        return f"LinearForm(coeffs={list(self.coeffs)}, const={self.const}, q={self.field.q})"


class AffineSubspace:
    """An affine subspace of F_q^d in solved form.

    Coordinates ``free`` range over F_q; dependent coordinate ``dep[k]`` equals
    ``const[k] + sum_j coef[k][j] * z[free[j]]``.  The point set has q^r elements.
    """

    def __init__(self, field: FieldSpec, r: int, coef, const, free=None, dep=None):
        self.field = field
        self.r = int(r)
        self.coef = tuple(tuple(_code(field, c) for c in row) for row in coef)
        self.const = tuple(_code(field, c) for c in const)
        if len(self.coef) != len(self.const):
            raise ValueError("coef and const disagree on the number of equations")
        if any(len(row) != self.r for row in self.coef):
            raise ValueError("each row needs r coefficients")
        self.d = self.r + len(self.const)
        self.free = tuple(range(self.r)) if free is None else tuple(free)
        self.dep = tuple(range(self.r, self.d)) if dep is None else tuple(dep)
        if sorted(self.free + self.dep) != list(range(self.d)):
            raise ValueError("free and dependent coordinates must partition range(d)")

    @property
    def nd(self) -> int:
        return len(self.const)

    @classmethod
    def from_equations(cls, field: FieldSpec, d: int, forms: Sequence[LinearForm]) -> "AffineSubspace":
        """Solve the equations w(z) = 0; the lowest-indexed coordinates are kept free."""
        F = field
        rows = [list(f.coeffs) + [F.neg(f.const)] for f in forms]
        red, pivots = row_reduce(F, rows, list(reversed(range(d))))
        free = [c for c in range(d) if c not in pivots]
        order = sorted(range(len(pivots)), key=lambda i: pivots[i])
        coef, const = [], []
        for i in order:
            row = red[i]
            coef.append([F.neg(row[f]) for f in free])
            const.append(row[-1])
        return cls(F, len(free), coef, const, free=free, dep=[pivots[i] for i in order])

    @classmethod
    def hyperplane(cls, form: LinearForm) -> "AffineSubspace":
        return cls.from_equations(form.field, form.d, [form])

    def dependent_value(self, k: int, zfree: Sequence[int]) -> int:
        F = self.field
        acc = self.const[k]
        for c, z in zip(self.coef[k], zfree):
            acc = F.add(acc, F.mul(c, z))
        return acc

    def points(self) -> Iterator[tuple[int, ...]]:
        """All q^r points as code tuples in ambient coordinate order."""
        for zfree in itertools.product(range(self.field.q), repeat=self.r):
            pt = [0] * self.d
            for i, z in zip(self.free, zfree):
                pt[i] = z
            for k, i in enumerate(self.dep):
                pt[i] = self.dependent_value(k, zfree)
            yield tuple(pt)

    def equations(self) -> list[LinearForm]:
        """Forms z_dep - sum coef * z_free - const, one per dependent coordinate."""
        F = self.field
        out = []
        for k, i in enumerate(self.dep):
            g = [0] * self.d
            g[i] = 1
            for j, f in enumerate(self.free):
                g[f] = F.neg(self.coef[k][j])
            out.append(LinearForm.from_codes(F, g, F.neg(self.const[k])))
        return out

    def kernel_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        coef = np.asarray(self.coef, dtype=np.int64).reshape(self.nd, self.r)
        return coef, np.asarray(self.const, dtype=np.int64)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "free": list(self.free),
            "dep": list(self.dep),
            "coef": [list(r) for r in self.coef],
            "const": list(self.const),
        }

    def __repr__(self) -> str:
        return f"AffineSubspace(d={self.d}, r={self.r}, q={self.field.q})"


# ---------------------------------------------------------------------------
# brute-force sums


def jacobi_subspace_brute(H: AffineSubspace, a) -> CycNum:
    F = H.field
    e = _exps(F, a)
    if len(e) != H.d:
        raise ValueError(f"{len(e)} exponents for a subspace of F_q^{H.d}")
    order = np.asarray([e[i] for i in H.free + H.dep], dtype=np.int64)
    coef, const = H.kernel_arrays()
    hist = kernels.subspace_histogram(H.r, F.q, coef, const, order, F.log, F.exp, F.zech)
    return CycNum(F.m, [int(x) for x in hist])


@functools.lru_cache(maxsize=200_000)
def _jacobi_plain_cached(F: FieldSpec, e: tuple[int, ...]) -> CycNum:
    d = len(e)
    H = AffineSubspace(F, d - 1, [[F.neg_one] * (d - 1)], [F.neg_one])
    s = jacobi_subspace_brute(H, e)
    return s if d % 2 == 1 else -s


def jacobi_plain(F: FieldSpec, a) -> CycNum:
    """J^(a) = (-1)^(d-1) sum over z_1 + ... + z_d + 1 = 0.  Cached per field and tuple."""
    return _jacobi_plain_cached(F, _exps(F, a))


def jacobi_form(form: LinearForm, a) -> CycNum:
    if not any(form.coeffs):
        raise ValueError("form needs a nonzero coefficient")
    return jacobi_subspace_brute(AffineSubspace.hyperplane(form), a)


# ---------------------------------------------------------------------------
# normalisation of forms  b_1 z_1 + ... + b_D z_D - 1


def _unit_index(F: FieldSpec, b: Sequence[int], e: Sequence[int]) -> tuple[int, int]:
    """(sign, t) with unit = sign * zeta^t = (-1)^(D-1) chi(-1)^(sum e) prod chi^{-e_l}(b_l)."""
    if any(x == 0 for x in b):
        raise ZeroCoefficient("normalisation needs every coefficient nonzero")
    t = sum(e) * int(F.log[F.neg_one])
    for bl, el in zip(b, e):
        t -= el * int(F.log[bl])
    sign = -1 if (len(b) - 1) % 2 else 1
    return sign, t % F.m


def normalize_form(form: LinearForm, exps) -> tuple[CycNum, ExponentTuple]:
    """Express J_w^(e) for w = sum b_l z_l - 1 as unit * J^(e).

    With D variables and substitution u_l = -b_l z_l the unit is
    (-1)^(D-1) chi(-1)^(e_1+..+e_D) prod chi^{-e_l}(b_l); for odd q,
    chi(-1) = -1.
    """
    F = form.field
    if form.const != F.neg_one:
        raise ValueError("form must have constant term -1")
    e = _exps(F, exps)
    if len(e) != form.d:
        raise ValueError("exponent count does not match the form")
    sign, t = _unit_index(F, form.coeffs, e)
    unit = CycNum.zeta(F.m, t) * sign
    return unit, ExponentTuple(F.m, exps if isinstance(exps, ExponentTuple) else list(exps))


@dataclass
class IdentityCheck:
    name: str
    ok: bool
    lhs: object
    rhs: object
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, CycNum):
                return v.to_dict()
            if isinstance(v, FqElem):
                return v.coeffs
            return v

        return {"name": self.name, "ok": self.ok, "lhs": enc(self.lhs), "rhs": enc(self.rhs),
                **({"details": self.details} if self.details else {})}


def reflect_identity(F: FieldSpec, b: int, c: int) -> IdentityCheck:
    """J^(b,c) against J^(-b-c, c)."""
    lhs = jacobi_plain(F, (b, c))
    rhs = jacobi_plain(F, (-b - c, c))
    return IdentityCheck("reflect", lhs == rhs, lhs, rhs, {"b": b % F.m, "c": c % F.m})


# ---------------------------------------------------------------------------
# character expansion of chi^a(c_1 z_1 + ... + c_r z_r + c)


def _digits(m: int, r: int) -> np.ndarray:
    return kernels._grid(0, m**r, m, r)


def _form_numerators(F: FieldSpec, coef: Sequence[int], const: int, a: int) -> np.ndarray:
    """numer[i] = J_w^(-i_1..-i_r, a) as group-ring vectors, w = z_k - sum coef z - const."""
    m, r = F.m, len(coef)
    logs = _digits(m, r)  # every point with nonzero free coordinates, by discrete logs
    w = F.exp[logs]
    v = np.full(logs.shape[0], const, dtype=np.int64)
    for j in range(r):
        v = kernels._vadd(v, kernels._vmul(coef[j], w[:, j], F.log, F.exp, F.m), F.log, F.exp, F.zech, m)
    keep = v != 0
    logs, e = logs[keep], (a * F.log[v[keep]]) % m
    idx = _digits(m, r)
    M = idx.shape[0]
    out = np.zeros(M * m, dtype=np.int64)
    step = max(1, (1 << 22) // max(1, logs.shape[0]))
    for s in range(0, M, step):
        block = idx[s : s + step]
        ex = (e[None, :] - block @ logs.T) % m
        flat = (np.arange(s, s + block.shape[0], dtype=np.int64)[:, None] * m + ex).ravel()
        out += np.bincount(flat, minlength=M * m)
    return out.reshape(M, m)


def _plain_numerators(F: FieldSpec, coef: Sequence[int], const: int, a: int) -> np.ndarray:
    """Same table via normalize_form: w/const has coefficients -coef/const, 1/const and constant -1."""
    m, r = F.m, len(coef)
    if const == 0:
        raise ZeroCoefficient("constant term 0 cannot be normalised")
    inv = F.inv(const)
    b = [F.neg(F.mul(c, inv)) for c in coef] + [inv]
    idx = _digits(m, r)
    out = np.zeros((idx.shape[0], m), dtype=np.int64)
    for flat, i in enumerate(idx):
        e = [(-int(x)) % m for x in i] + [a % m]
        sign, t = _unit_index(F, b, e)
        val = jacobi_plain(F, e)
        vec = np.asarray(val.coeffs, dtype=np.int64)
        out[flat] = sign * np.roll(vec, t)
    return out


class CharExpansion:
    """chi^a(c_1 z_1 + ... + c_r z_r + c) = sum_i coeff(i) prod chi^{i_j}(z_j) on nonzero z.

    ``numer[i]`` holds J_w^(-i, a) for w = z_{r+1} - sum c_j z_j - c and the
    coefficient is numer[i] / (q-1)^r.  Index tuples are flattened with i_1
    least significant.
    """

    def __init__(self, field: FieldSpec, coef: Sequence[int], const: int, a: int, numer: np.ndarray):
        self.field = field
        self.coef = tuple(coef)
        self.const = const
        self.a = a % field.m
        self.r = len(coef)
        self.numer = numer
        self.scale = field.m**self.r

    def flat(self, i: Sequence[int]) -> int:
        m = self.field.m
        return sum((int(x) % m) * m**j for j, x in enumerate(i))

    def coefficient(self, i: Sequence[int]) -> CycNum:
        return CycNum(self.field.m, self.numer[self.flat(i)]).scalar_div(self.scale)

    def jacobi(self, i: Sequence[int]) -> CycNum:
        return CycNum(self.field.m, self.numer[self.flat(i)])

    def evaluate(self, z: Sequence[int]) -> CycNum:
        """Right-hand side at the code tuple z (all entries nonzero)."""
        F, m = self.field, self.field.m
        logs = np.asarray([F.dlog_code(x) for x in z], dtype=np.int64)
        idx = _digits(m, self.r)
        shifts = (idx @ logs) % m
        acc = np.zeros(m, dtype=object)
        for row, s in zip(self.numer, shifts):
            acc += np.roll(row.astype(object), int(s))
        return CycNum(m, [int(x) for x in acc]).scalar_div(self.scale)

    def direct(self, z: Sequence[int]) -> CycNum:
        """Left-hand side chi^a(c_1 z_1 + ... + c) computed directly."""
        F = self.field
        acc = self.const
        for c, x in zip(self.coef, z):
            acc = F.add(acc, F.mul(c, x))
        k = index_of(F, self.a, acc)
        return CycNum.zero(F.m) if k is None else CycNum.zeta(F.m, k)


def lemma_car_expand(F: FieldSpec, row: tuple[Sequence, object], a_k: int, mode: str = "form") -> CharExpansion:
    """Expansion table of chi^{a_k}(sum_j alpha_kj z_j + alpha_k); ``row = (alphas, alpha_k)``."""
    coef, const = row
    coef = [_code(F, c) for c in coef]
    const = _code(F, const)
    if not coef:
        raise ValueError("need r >= 1")
    build = _form_numerators if mode == "form" else _plain_numerators
    return CharExpansion(F, coef, const, a_k, build(F, coef, const, a_k % F.m))


def _batched_cyclic(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    m = x.shape[1]
    idx = (np.arange(m)[:, None] - np.arange(m)[None, :]) % m
    return np.einsum("bi,bki->bk", x, y[:, idx])


def lemma_prod_product(H: AffineSubspace, a, mode: str = "form", threads: int | None = None) -> CycNum:
    """J_H^(a) from Jacobi sums of the defining forms.

    (q-1)^{r(d-r-1)} J_H = sum over index tuples i^k in [0, q-2]^r, one per
    dependent row k >= 2, of
        J_{w_1}^(a_free + sum_k i^k, a_dep1) * prod_k J_{w_k}^(-i^k, a_depk).
    ``mode="form"`` evaluates each J_w by enumeration; ``mode="plain"`` goes
    through :func:`normalize_form` and plain Jacobi sums.  The final division
    is exact; a remainder raises InexactDivision.
    """
    F = H.field
    m, r, nd = F.m, H.r, H.nd
    if r < 1 or nd < 1:
        raise ValueError("need 1 <= r <= d-1")
    e = _exps(F, a)
    a_free = np.asarray([e[i] for i in H.free], dtype=np.int64)
    a_dep = [e[i] for i in H.dep]
    build = _form_numerators if mode == "form" else _plain_numerators
    tables = [build(F, H.coef[k], H.const[k], a_dep[k]) for k in range(nd)]
    digits = _digits(m, r)
    weights = m ** np.arange(r, dtype=np.int64)
    first = tables[0]
    if nd == 1:
        return CycNum(m, [int(x) for x in first[int(((-a_free) % m) @ weights)]])

    M, K = m**r, nd - 1
    total = M**K
    norms = [int(np.abs(t).sum(axis=1).max()) for t in tables]
    bound = math.prod(norms) * total

    def work(span: tuple[int, int]) -> list[int]:
        start, stop = span
        acc_total = [0] * m
        if bound < _INT64_SAFE:
            step = max(1, (1 << 20) // (m * m))
            for s in range(start, stop, step):
                t = np.arange(s, min(stop, s + step), dtype=np.int64)
                idx = [(t // M**k) % M for k in range(K)]
                svec = a_free[None, :] + sum(digits[ix] for ix in idx)
                acc = first[((-svec) % m) @ weights]
                for k in range(K):
                    acc = _batched_cyclic(acc, tables[k + 1][idx[k]])
                for kk, v in enumerate(acc.sum(axis=0)):
                    acc_total[kk] += int(v)
            return acc_total
        for t in range(start, stop):  # pragma: no cover - only for huge q
            idx = [(t // M**k) % M for k in range(K)]
            svec = a_free + sum(digits[ix] for ix in idx)
            acc = [int(x) for x in first[int(((-svec) % m) @ weights)]]
            for k in range(K):
                acc = _cyclic_mul(acc, [int(x) for x in tables[k + 1][idx[k]]], m)
            acc_total = [x + y for x, y in zip(acc_total, acc)]
        return acc_total

    parts = pmap(work, chunks(total, resolve_threads(threads)), threads)
    summed = [sum(col) for col in zip(*parts)]
    return CycNum(m, summed).exact_div(total)


# ---------------------------------------------------------------------------
# reduction mod p


def _multinomial(n: int, ks: Sequence[int]) -> int:
    out = math.factorial(n)
    for k in ks:
        out //= math.factorial(k)
    return out


def jacobi_closed_mod_p(F: FieldSpec, exps) -> FqElem:
    """J^(e_1..e_r, b) mod the prime above p, from the binomial expansion.

    Representatives e', b' are taken in [1, q-1].  Then
    J = (-1)^{b'} sum multinomial(b'; k_1..k_r, b' - sum k) over k_l in
    {q-1-e'_l, 2(q-1)-e'_l} with sum k <= b'.
    """
    e = _exps(F, exps)
    m = F.m
    *head, b = e
    bp = b if b else m
    reps = [x if x else m for x in head]
    choices = [[m - x, 2 * m - x] for x in reps]
    total = 0
    for ks in itertools.product(*choices):
        s = sum(ks)
        if s <= bp:
            total += _multinomial(bp, list(ks) + [bp - s])
    if bp % 2:
        total = -total
    return F(total)


@dataclass
class ModPReport:
    i_tuple: tuple[int, ...]
    b: int
    brute: FqElem
    closed: FqElem
    signed: FqElem
    printed: FqElem | None

    @property
    def match(self) -> bool:
        return self.brute == self.closed

    @property
    def signed_match(self) -> bool:
        return self.brute == self.signed

    @property
    def printed_match(self) -> bool:
        return self.printed is not None and self.brute == self.printed

    def to_dict(self) -> dict:
        return {
            "i": list(self.i_tuple),
            "b": self.b,
            "brute": self.brute.coeffs,
            "closed": self.closed.coeffs,
            "signed_multinomial": self.signed.coeffs,
            "unsigned_printed": None if self.printed is None else self.printed.coeffs,
            "match": self.match,
            "signed_match": self.signed_match,
            "printed_match": self.printed_match,
        }


def _mod_p_fraction(F: FieldSpec, x: Fraction) -> FqElem | None:
    if x.denominator % F.p == 0:
        return None
    return F(x.numerator) / F(x.denominator)


def jacobi_mod_p(F: FieldSpec, i_tuple: Sequence[int], b: int) -> ModPReport:
    """Reduction of J^(-i_1..-i_r, b) together with three closed-form predictions.

    * ``closed``  -- the full binomial-expansion value (always equal to brute)
    * ``signed``  -- (-1)^b b!/(i_1!..i_r!(b-sum i)!) with negative i shifted by q-1; 0 if sum i > b
    * ``printed`` -- b!/(i_1!..i_r!) without sign or residual factorial
    """
    m = F.m
    i_tuple = tuple(int(x) for x in i_tuple)
    if any(abs(x) > m - 1 for x in i_tuple) or not 0 <= b <= m - 1:
        raise ValueError("need |i_l| <= q-2 and 0 <= b <= q-2")
    exps = [-x for x in i_tuple] + [b]
    brute = jacobi_plain(F, exps).reduce_to_field(F)
    closed = jacobi_closed_mod_p(F, exps)

    shifted = [x + m if x < 0 else x for x in i_tuple]
    if sum(shifted) <= b:
        val = _multinomial(b, shifted + [b - sum(shifted)])
        signed = F(-val if b % 2 else val)
    else:
        signed = F(0)

    printed: FqElem | None
    if all(0 <= x <= b for x in i_tuple):
        base = i_tuple
    elif all(0 <= x + m <= b for x in i_tuple):
        base = tuple(x + m for x in i_tuple)
    else:
        base = None
    if base is None:
        printed = F(0)
    else:
        printed = _mod_p_fraction(F, Fraction(math.factorial(b), math.prod(math.factorial(x) for x in base)))
    return ModPReport(i_tuple, b, brute, closed, signed, printed)
