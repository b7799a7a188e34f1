"""Exact arithmetic in Z[zeta_m][1/N].

A :class:`CycNum` stores a group-ring vector of length m (coefficient k
multiplies zeta^k) and a positive scalar denominator.  The vector is not
reduced modulo the cyclotomic polynomial until equality, hashing or
serialisation needs the canonical form, which keeps the inner loops of
character sums to plain index arithmetic.
"""

from __future__ import annotations

import cmath
import functools
import json
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DenominatorNotInvertible,
    InexactDivision,
    NotCoprime,
    OrderMismatch,
)

_INT64_SAFE = 1 << 62


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), den monic."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        out[i - dn] = c
        if c:
            for k, dk in enumerate(den):
                num[i - dn + k] -= c * dk
    if any(num[:dn]):
        raise InexactDivision("cyclotomic polynomial division left a remainder")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Phi_m, low degree first, from x^m - 1 divided by Phi_d for proper divisors d."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def units_mod(m: int) -> tuple[int, ...]:
    if m <= 2:
        return (1,)
    return tuple(t for t in range(1, m) if math.gcd(t, m) == 1)


def _reduce(coeffs: Sequence[int], m: int) -> tuple[int, ...]:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    a = list(coeffs)
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            base = i - deg
            for k in range(deg):
                if phi[k]:
                    a[base + k] -= c * phi[k]
            a[i] = 0
    return tuple(a[:deg])


def _cyclic_mul(a: Sequence[int], b: Sequence[int], m: int) -> list[int]:
    amax = max(abs(x) for x in a)
    bmax = max(abs(x) for x in b)
    if amax == 0 or bmax == 0:
        return [0] * m
    if amax * bmax * m < _INT64_SAFE:
        full = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        res = full[:m].copy()
        res[: m - 1] += full[m:]
        return [int(x) for x in res]
    out = [0] * m
    nz_b = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            for j, y in nz_b:
                k = i + j
                if k >= m:
                    k -= m
                out[k] += x * y
    return out


class CycNum:
    """An element of Z[zeta_m] divided by a positive integer."""

    __slots__ = ("m", "coeffs", "denom", "_canon")

    def __init__(self, m: int, coeffs: Iterable[int] | None = None, denom: int = 1):
        if m < 1:
            raise ValueError("order must be positive")
        vec = [0] * m
        if coeffs is not None:
            for k, c in enumerate(coeffs):
                vec[k % m] += int(c)
        denom = int(denom)
        if denom == 0:
            raise ZeroDivisionError("zero denominator")
        if denom < 0:
            denom = -denom
            vec = [-c for c in vec]
        self.m = m
        self._canon = None
        if denom > 1:
            canon = _reduce(vec, m)
            g = math.gcd(denom, *canon)
            if g > 1:
                denom //= g
                canon = tuple(c // g for c in canon)
            vec = list(canon) + [0] * (m - len(canon))
            self._canon = canon
        self.coeffs = tuple(vec)
        self.denom = denom

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_int(cls, m: int, n: int) -> "CycNum":
        return cls(m, [n])

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycNum":
        vec = [0] * m
        vec[k % m] = 1
        return cls(m, vec)

    @classmethod
    def zero(cls, m: int) -> "CycNum":
        return cls(m)

    @classmethod
    def one(cls, m: int) -> "CycNum":
        return cls(m, [1])

    # -- canonical form --------------------------------------------------------

    def canonical(self) -> tuple[int, ...]:
        """Numerator reduced modulo Phi_m, length phi(m)."""
        if self._canon is None:
            self._canon = _reduce(self.coeffs, self.m)
        return self._canon

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.m != self.m:
                raise OrderMismatch(f"orders {self.m} and {other.m} differ")
            return other
        if isinstance(other, int):
            return CycNum.from_int(self.m, other)
        return NotImplemented

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.denom == o.denom:
            return CycNum(self.m, [x + y for x, y in zip(self.coeffs, o.coeffs)], self.denom)
        return CycNum(
            self.m,
            [x * o.denom + y * self.denom for x, y in zip(self.coeffs, o.coeffs)],
            self.denom * o.denom,
        )

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.m, [-c for c in self.coeffs], self.denom)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum(self.m, [c * other for c in self.coeffs], self.denom)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycNum(self.m, _cyclic_mul(self.coeffs, o.coeffs, self.m), self.denom * o.denom)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def mul_zeta(self, k: int) -> "CycNum":
        """Multiply by zeta^k (a rotation of the group-ring vector)."""
        k %= self.m
        vec = self.coeffs[-k:] + self.coeffs[:-k] if k else self.coeffs
        return CycNum(self.m, vec, self.denom)

    def scalar_div(self, n: int) -> "CycNum":
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return CycNum(self.m, self.coeffs, self.denom * n)

    def exact_div(self, n: int) -> "CycNum":
        """Divide by n, insisting the numerator is divisible (no new denominator)."""
        if n == 0:
            raise ZeroDivisionError("division by zero")
        canon = self.canonical()
        if any(c % n for c in canon):
            raise InexactDivision(f"{self!r} is not divisible by {n}")
        return CycNum(self.m, [c // n for c in canon], self.denom)

    def __truediv__(self, other):
        if isinstance(other, int):
            return self.scalar_div(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def norm(self) -> "CycNum":
        """Product of all Galois conjugates; a rational number."""
        out = CycNum.one(self.m)
        for t in units_mod(self.m):
            out = out * self.galois_apply(t)
        return out

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        others = CycNum(self.m, [1])
        for t in units_mod(self.m):
            if t != 1:
                others = others * CycNum(self.m, self._galois_vec(t))
        numer = CycNum(self.m, self.coeffs) * others
        n = numer.as_rational_integer()
        if n is None:  # pragma: no cover - the norm is always rational
            raise InexactDivision("norm is not rational")
        return (others * self.denom).scalar_div(n)

    # -- automorphisms ----------------------------------------------------------

    def _galois_vec(self, t: int) -> list[int]:
        vec = [0] * self.m
        for k, c in enumerate(self.coeffs):
            if c:
                vec[(k * t) % self.m] += c
        return vec

    def galois_apply(self, t: int) -> "CycNum":
        if math.gcd(t, self.m) != 1:
            raise NotCoprime(f"gcd({t}, {self.m}) != 1")
        return CycNum(self.m, self._galois_vec(t), self.denom)

    def conj(self) -> "CycNum":
        return CycNum(self.m, self._galois_vec(-1), self.denom)

    # -- projections -----------------------------------------------------------

    def reduce_to_field(self, F) -> "FqElem":  # noqa: F821
        """Image under zeta -> generator of F (requires m = q - 1)."""
        from .fq import FqElem

        if F.m != self.m:
            raise OrderMismatch(f"order {self.m} does not match F_{F.q}")
        d = self.denom % F.p
        if d == 0:
            raise DenominatorNotInvertible(f"denominator {self.denom} divisible by {F.p}")
        acc = 0
        for k, c in enumerate(self.coeffs):
            c %= F.p
            if c:
                acc = F.add(acc, F.mul(c, int(F.exp[k])))
        return FqElem(F, F.mul(acc, F.inv(d)))

    def complex_embed(self) -> complex:
        """zeta -> exp(2 pi i / m).  Advisory only: never used to decide equality."""
        w = [cmath.exp(2j * math.pi * k / self.m) for k in range(self.m)]
        total = sum(c * w[k] for k, c in enumerate(self.coeffs) if c)
        return complex(total) / self.denom

    def as_rational_integer(self) -> int | None:
        if self.denom != 1:
            return None
        canon = self.canonical()
        if any(canon[1:]):
            return None
        return canon[0] if canon else 0

    def as_rational(self) -> tuple[int, int] | None:
        """(numerator, denominator) when the value is rational."""
        canon = self.canonical()
        if any(canon[1:]):
            return None
        return (canon[0] if canon else 0), self.denom

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- identity --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycNum.from_int(self.m, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.m != self.m:
            return False
        return self.denom == other.denom and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.m, self.canonical(), self.denom))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.canonical()):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        body = " + ".join(terms) or "0"
        if self.denom != 1:
            body = f"({body})/{self.denom}"
        return f"CycNum[{self.m}]({body})"

    def to_dict(self) -> dict:
        z = self.complex_embed()
        return {
            "m": self.m,
            "coeffs": list(self.canonical()),
            "denom": self.denom,
            "approx": [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(data: dict) -> "CycNum":
        return CycNum(int(data["m"]), [int(c) for c in data["coeffs"]], int(data.get("denom", 1)))

    @staticmethod
    def from_json(text: str) -> "CycNum":
        return CycNum.from_dict(json.loads(text))


def ring_ops(op: str, *operands):
    """Dispatch ``add``, ``mul``, ``neg`` or ``scalar_div`` on CycNum operands."""
    if op == "add":
        a, b = operands
        return a + b
    if op == "mul":
        a, b = operands
        return a * b
    if op == "neg":
        (a,) = operands
        return -a
    if op == "scalar_div":
        a, n = operands
        return a.scalar_div(int(n))
    raise ValueError(f"unknown op {op!r}")


def conj(x: CycNum) -> CycNum:
    return x.conj()


def galois_apply(x: CycNum, t: int) -> CycNum:
    return x.galois_apply(t)


def reduce_to_field(x: CycNum, F):
    return x.reduce_to_field(F)


def complex_embed(x: CycNum) -> complex:
    return x.complex_embed()


def as_rational_integer(x: CycNum) -> int | None:
    return x.as_rational_integer()


def csum(values: Iterable[CycNum], m: int) -> CycNum:
    """Sum of CycNums sharing denominator 1 without intermediate normalisation."""
    vec = [0] * m
    rest = None
    for v in values:
        if v.m != m:
            raise OrderMismatch(f"orders {m} and {v.m} differ")
        if v.denom == 1:
            for k, c in enumerate(v.coeffs):
                if c:
                    vec[k] += c
        else:
            rest = v if rest is None else rest + v
    out = CycNum(m, vec)
    return out if rest is None else out + rest
