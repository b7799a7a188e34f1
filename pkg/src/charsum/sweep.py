"""The desk-scale family of covers used by the verification suites.

For q in {5, 7, 9, 13} and n in {2, 4} with n | q-1:

* d = 3: branch points (0, 1, lambda) for every lambda outside {0, 1};
  exponents (1, 1, 1) for n = 2 and every tuple in {1, 3}^3 for n = 4.
* d = 4: branch points (0, 1, alpha_3, alpha_4), alpha_3 < alpha_4; only n = 4
  is possible (for n = 2 the exponents sum to 0 mod 2 and infinity is
  unramified).  Exponents (1, 1, 1, 3) and (1, 2, 1, 1); j = 2 is degenerate
  for both and is skipped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DegenerateCharacter
from .fq import FieldSpec, build_field
from .lseries import CoverSpec, validate_cover

SWEEP_FIELDS = ((5, 1), (7, 1), (3, 2), (13, 1))
D4_EXPONENTS = ((1, 1, 1, 3), (1, 2, 1, 1))


@dataclass(frozen=True)
class SweepItem:
    cover: CoverSpec
    js: tuple[int, ...]


def _valid_js(cover: CoverSpec) -> tuple[int, ...]:
    out = []
    for j in range(1, cover.n):
        try:
            cover.check_character(j)
        except DegenerateCharacter:
            continue
        out.append(j)
    return tuple(out)


def field_covers(F: FieldSpec, ds=(3, 4), ns=(2, 4)) -> list[SweepItem]:
    items = []
    points = range(2, F.q)
    for n in ns:
        if F.m % n:
            continue
        if 3 in ds:
            exps3 = [(1, 1, 1)] if n == 2 else list(itertools.product((1, 3), repeat=3))
            for lam in points:
                for ex in exps3:
                    cover = validate_cover(F, n, [0, 1, lam], ex)
                    items.append(SweepItem(cover, _valid_js(cover)))
        if 4 in ds and n == 4:
            for a3, a4 in itertools.combinations(points, 2):
                for ex in D4_EXPONENTS:
                    cover = validate_cover(F, n, [0, 1, a3, a4], ex)
                    items.append(SweepItem(cover, _valid_js(cover)))
    return items


def sweep(fields=SWEEP_FIELDS, ds=(3, 4), ns=(2, 4)) -> list[SweepItem]:
    out = []
    for p, h in fields:
        out.extend(field_covers(build_field(p, h), ds, ns))
    return out
