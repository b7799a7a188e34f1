"""Finite fields F_q, q = p^h, with dense discrete-log tables.

Elements are encoded as integer codes: the residue c_0 + c_1 x + ... + c_{h-1} x^{h-1}
has code c_0 + c_1 p + ... + c_{h-1} p^{h-1}.  Multiplication goes through the
log/exp tables and addition through a Zech-logarithm table, so every field
operation is O(1) after construction.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    DivisionByZero,
    DlogOfZero,
    FieldMismatch,
    NotPrime,
    ReducibleModulus,
)

# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomials over F_p, low degree first


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _ptrim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _ptrim(a)
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return _pmod(result, f, p)


def _pgcd(a, b, p):
    a = _ptrim([c % p for c in a])
    b = _ptrim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (low degree first) over F_p."""
    h = len(f) - 1
    if h < 1:
        return False
    if h == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**h, f, p), x, p):
        return False
    for ell in prime_factors(h):
        g = _pgcd(f, _psub(_ppowmod(x, p ** (h // ell), f, p), x, p), p)
        if len(g) > 1:
            return False
    return True


def has_small_factor(f: Sequence[int], p: int) -> bool:
    """Brute force: does some monic polynomial of degree 1..deg(f)//2 divide f?"""
    h = len(f) - 1
    for deg in range(1, h // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _pmod(f, list(low) + [1], p):
                return True
    return False


# ---------------------------------------------------------------------------


class FieldSpec:
    """The field F_q = F_p[x]/(modulus) with a fixed generator of F_q^x.

    Instances are immutable and hashable; all tables are read-only numpy arrays.
    """

    def __init__(self, p: int, h: int, modulus: Sequence[int], generator: int):
        self.p = p
        self.h = h
        self.q = p**h
        self.m = self.q - 1
        self.modulus = tuple(int(c) % p for c in modulus)
        self.generator = int(generator)
        self._weights = [p**i for i in range(h)]

        exp = kernels.power_table(
            p, h, np.asarray(self.modulus, dtype=np.int64),
            np.asarray(self.code_to_coeffs(self.generator), dtype=np.int64),
        )
        exp = np.asarray(exp, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(self.m, dtype=np.int64)
        if np.count_nonzero(log >= 0) != self.m:
            raise ValueError(f"{generator} does not generate F_{self.q}^x")
        low = exp % p
        bumped = exp - low + (low + 1) % p
        zech = log[bumped]
        for arr in (exp, log, zech):
            arr.setflags(write=False)
        self.exp, self.log, self.zech = exp, log, zech
        self.neg_one = (p - 1) % p if p > 2 else 1
        self.key = (p, h, self.modulus, self.generator)

    # -- codes ---------------------------------------------------------------

    def code_to_coeffs(self, code: int) -> list[int]:
        out = []
        for _ in range(self.h):
            out.append(code % self.p)
            code //= self.p
        return out

    def coeffs_to_code(self, coeffs: Sequence[int]) -> int:
        coeffs = _pmod(list(coeffs), self.modulus, self.p) if len(coeffs) > self.h else coeffs
        return sum((int(c) % self.p) * w for c, w in zip(coeffs, self._weights))

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = int(self.log[a])
        z = int(self.zech[(int(self.log[b]) - la) % self.m])
        return 0 if z < 0 else int(self.exp[(la + z) % self.m])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.m])

    def neg(self, a: int) -> int:
        return self.mul(a, self.neg_one)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return int(self.exp[(-int(self.log[a])) % self.m])

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of 0")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % self.m])

    def dlog_code(self, a: int) -> int:
        if a == 0:
            raise DlogOfZero("discrete log of 0")
        return int(self.log[a])

    def from_int(self, n: int) -> int:
        """Code of the prime-field element n mod p."""
        return n % self.p

    # -- elements --------------------------------------------------------------

    def __call__(self, value) -> "FqElem":
        """``F(n)`` for an integer gives n mod p; a list gives the residue with those coefficients."""
        if isinstance(value, FqElem):
            self._check(value)
            return value
        if isinstance(value, (list, tuple)):
            return FqElem(self, self.coeffs_to_code(value))
        return FqElem(self, self.from_int(int(value)))

    def from_code(self, code: int) -> "FqElem":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} outside [0, {self.q})")
        return FqElem(self, int(code))

    def elements(self) -> Iterator["FqElem"]:
        for c in range(self.q):
            yield FqElem(self, c)

    def nonzero(self) -> Iterator["FqElem"]:
        for c in range(1, self.q):
            yield FqElem(self, c)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    @property
    def gen(self) -> "FqElem":
        return FqElem(self, self.generator)

    def _check(self, x: "FqElem") -> None:
        if x.field is not self and x.field.key != self.key:
            raise FieldMismatch(f"element of {x.field!r} used in {self!r}")

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and other.key == self.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q}, modulus={list(self.modulus)}, generator={self.code_to_coeffs(self.generator)})"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "h": self.h,
            "modulus": list(self.modulus),
            "generator": self.code_to_coeffs(self.generator),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_dict(data: dict) -> "FieldSpec":
        p, h = int(data["p"]), int(data["h"])
        modulus = tuple(int(c) for c in data["modulus"])
        probe = FieldSpec.__new__(FieldSpec)
        probe.p, probe.h, probe._weights = p, h, [p**i for i in range(h)]
        probe.modulus = modulus
        gen = probe.coeffs_to_code(data["generator"])
        return build_field(p, h, modulus, generator=gen)


class FqElem:
    """An element of a :class:`FieldSpec`; a value type with field-checked arithmetic."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> list[int]:
        return self.field.code_to_coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            self.field._check(other)
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.code))

    def inv(self) -> "FqElem":
        return FqElem(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.mul(self.code, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.mul(o, self.field.inv(self.code)))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.power(self.code, e))

    def dlog(self) -> int:
        return self.field.dlog_code(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElem):
            return self.field.key == other.field.key and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.key, self.code))

    def __repr__(self) -> str:
        if self.field.h == 1:
            return f"FqElem({self.code} mod {self.field.p})"
        return f"FqElem({self.coeffs} in F_{self.field.q})"

    def to_json(self) -> list[int]:
        return self.coeffs


def arith(op: str, *operands: FqElem) -> FqElem:
    """Dispatch ``add``, ``mul``, ``neg``, ``inv`` or ``pow`` on elements of one field."""
    if op == "add":
        a, b = operands
        return a + b
    if op == "mul":
        a, b = operands
        return a * b
    if op == "neg":
        (a,) = operands
        return -a
    if op == "inv":
        (a,) = operands
        return a.inv()
    if op == "pow":
        a, e = operands
        return a ** int(e)
    raise ValueError(f"unknown op {op!r}")


def dlog(x: FqElem) -> int:
    return x.dlog()


# ---------------------------------------------------------------------------
# construction


def default_modulus(p: int, h: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree h, scanning (c_0, ..., c_{h-1}) lexicographically."""
    for low in itertools.product(range(p), repeat=h):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _is_generator(code: int, p: int, h: int, modulus, factors) -> bool:
    q = p**h
    a = []
    c = code
    for _ in range(h):
        a.append(c % p)
        c //= p
    a = _ptrim(a)
    if not a:
        return False
    if q == 2:
        return True
    for ell in factors:
        if _ppowmod(a, (q - 1) // ell, list(modulus), p) == [1]:
            return False
    return True


def _first_generator(p: int, h: int, modulus) -> int:
    factors = prime_factors(p**h - 1)
    for code in range(1, p**h):
        if _is_generator(code, p, h, modulus, factors):
            return code
    raise AssertionError("no generator found")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def _build(p: int, h: int, modulus: tuple | None, generator: int | None) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        modulus = default_modulus(p, h)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != h + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {h}")
        if not is_irreducible(list(modulus), p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")
    if generator is None:
        generator = _first_generator(p, h, modulus)
    return FieldSpec(p, h, modulus, generator)


def build_field(p: int, h: int = 1, modulus: Iterable[int] | None = None, generator: int | None = None) -> FieldSpec:
    """Build F_{p^h}.  Identical arguments return the identical (cached) object."""
    mod = None if modulus is None else tuple(int(c) for c in modulus)
    return _build(int(p), int(h), mod, None if generator is None else int(generator))


class Embedding:
    """The ring map F_q -> F_{q^k}; callable on elements, with a code table and its inverse."""

    def __init__(self, base: FieldSpec, big: FieldSpec, table: np.ndarray):
        self.base = base
        self.big = big
        self.table = table
        self.table.setflags(write=False)
        self._inverse = {int(c): i for i, c in enumerate(table)}

    def __call__(self, x: FqElem) -> FqElem:
        self.base._check(x)
        return FqElem(self.big, int(self.table[x.code]))

    def code(self, c: int) -> int:
        return int(self.table[c])

    def preimage_code(self, c: int) -> int:
        """Code in the base field of a big-field element lying in the image."""
        return self._inverse[int(c)]

    def preimage(self, y: FqElem) -> FqElem:
        self.big._check(y)
        return FqElem(self.base, self._inverse[y.code])


@functools.lru_cache(maxsize=None)
def extend_and_embed(base: FieldSpec, k: int) -> tuple[FieldSpec, Embedding]:
    """F_{q^k} together with the embedding F_q -> F_{q^k}.

    The generator G of F_{q^k} is the smallest one whose norm G^{(q^k-1)/(q-1)}
    equals the image of the base generator, so that embedding g equals the
    norm of G and the two discrete-log tables are compatible.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return base, Embedding(base, base, np.arange(base.q, dtype=np.int64))
    p, H = base.p, base.h * k
    Q = p**H
    work = build_field(p, H)
    codes = np.arange(Q, dtype=np.int64)
    # Horner evaluation of the base modulus (an F_p polynomial) at every element.
    val = np.ones(Q, dtype=np.int64)
    for c in reversed(base.modulus[:-1]):
        val = kernels._vadd(
            kernels._vmul(val, codes, work.log, work.exp, work.m), c, work.log, work.exp, work.zech, work.m
        )
    beta = int(np.flatnonzero(val == 0)[0])
    powers = [1]
    for _ in range(base.h - 1):
        powers.append(work.mul(powers[-1], beta))
    table = np.zeros(base.q, dtype=np.int64)
    for code in range(base.q):
        acc = 0
        for c, bpow in zip(base.code_to_coeffs(code), powers):
            acc = work.add(acc, work.mul(c, bpow))
        table[code] = acc
    target = int(table[base.generator])
    s = (Q - 1) // (base.q - 1)
    w = (int(work.log[target]) // s) % (base.q - 1)
    gen = None
    for code in range(1, Q):
        u = int(work.log[code])
        if math.gcd(u, Q - 1) == 1 and u % (base.q - 1) == w:
            gen = code
            break
    big = build_field(p, H, work.modulus, generator=gen)
    return big, Embedding(base, big, table)
