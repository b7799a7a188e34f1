"""The Teichmüller character of F_q and its powers.

The character sends the generator of F_q^x to zeta_{q-1}; reducing zeta to
the generator (see :meth:`CycNum.reduce_to_field`) then recovers the
argument, which is the defining congruence of the Teichmüller lift.

Zero convention: every power, including the trivial one, sends 0 to 0.
"""

from __future__ import annotations

from .cyc import CycNum
from .fq import FieldSpec, FqElem


class Character:
    """chi^a on a fixed field, exponent stored in [0, q-2]."""

    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, a: int):
        self.field = field
        self.a = a % field.m

    def index(self, x: FqElem) -> int | None:
        """Exponent k with chi^a(x) = zeta^k, or None for x = 0."""
        self.field._check(x)
        return index_of(self.field, self.a, x.code)

    def __call__(self, x: FqElem) -> CycNum:
        return char_eval(self.a, x)

    def __mul__(self, other: "Character") -> "Character":
        if other.field != self.field:
            raise TypeError("characters of different fields")
        return Character(self.field, self.a + other.a)

    def __pow__(self, e: int) -> "Character":
        return Character(self.field, self.a * e)

    def conj(self) -> "Character":
        return Character(self.field, -self.a)

    def is_trivial(self) -> bool:
        return self.a == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and other.field == self.field and other.a == self.a

    def __hash__(self) -> int:
        return hash((self.field.key, self.a))

    def __repr__(self) -> str:
        return f"Character(q={self.field.q}, a={self.a})"


def index_of(F: FieldSpec, a: int, code: int) -> int | None:
    if code == 0:
        return None
    return (a * int(F.log[code])) % F.m


def teichmuller(x: FqElem) -> CycNum:
    return char_eval(1, x)


def char_eval(a: int, x: FqElem) -> CycNum:
    F = x.field
    k = index_of(F, a, x.code)
    if k is None:
        return CycNum.zero(F.m)
    return CycNum.zeta(F.m, k)


def chi_minus_one(F: FieldSpec, a: int = 1) -> int:
    """chi^a(-1) as the integer +1 or -1."""
    k = index_of(F, a, F.neg_one)
    if k == 0:
        return 1
    # chi(-1) has order dividing 2, so k = m/2
    return -1
