"""Compare the numba and numpy kernel backends on desk-scale workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--q 13]

Both backends are called directly from ``kernels.BACKENDS``, so the
environment flag CHARSUM_DISABLE_NUMBA does not matter here.  Results are
checked for equality before timings are reported; the first numba call is
timed separately because it includes compilation (or a cache load).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from charsum import kernels
from charsum._accel import HAVE_NUMBA
from charsum.fq import build_field, extend_and_embed


def workloads(q: int):
    F = build_field(q)
    tabs = (F.log, F.exp, F.zech)
    alphas = np.asarray([0, 1, 2, 3], dtype=np.int64)
    exps = np.asarray([F.m // 2, F.m // 2, F.m // 2, F.m // 4 or 1], dtype=np.int64)
    mults = np.asarray([1, 1, 1, 3], dtype=np.int64)
    coef = np.asarray([[1, 2, 3]], dtype=np.int64)
    const = np.asarray([4], dtype=np.int64)
    big, emb = extend_and_embed(F, 2)
    neg = np.asarray([big.neg(emb.code(a)) for a in (0, 1, 2)], dtype=np.int64)
    G = build_field(5, 6)
    gen = np.asarray(G.code_to_coeffs(G.generator), dtype=np.int64)
    return [
        ("monic_histogram r=3", "monic_histogram", (3, F.q, alphas, exps, *tabs)),
        ("resultant_histogram r=3", "resultant_histogram", (3, F.q, alphas, mults, F.m // 4, F.neg_one, *tabs)),
        ("subspace_histogram r=3", "subspace_histogram", (3, F.q, coef, const, exps, *tabs)),
        (f"count_affine F_{big.q}", "count_affine",
         (big.q, neg, np.asarray([1, 1, 1], dtype=np.int64), 2, big.log, big.exp, big.zech)),
        ("power_table p=5 h=6", "power_table", (5, 6, np.asarray(G.modulus, dtype=np.int64), gen)),
    ]


def _time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=13, help="prime field size for the workloads")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed: the 'numba' column runs the same loops in pure Python")
    print(f"{'kernel':28s} {'numpy [s]':>10s} {'numba [s]':>10s} {'first nb [s]':>12s} {'speedup':>8s}")
    for label, name, kargs in workloads(args.q):
        f_np = kernels.BACKENDS["numpy"][name]
        f_nb = kernels.BACKENDS["numba"][name]
        t0 = time.perf_counter()
        r_nb = f_nb(*kargs)
        first = time.perf_counter() - t0
        r_np = f_np(*kargs)
        if not np.array_equal(np.asarray(r_np), np.asarray(r_nb)):
            raise SystemExit(f"{label}: backends disagree")
        t_np = _time(f_np, kargs, args.repeat)
        t_nb = _time(f_nb, kargs, args.repeat)
        print(f"{label:28s} {t_np:10.4f} {t_nb:10.4f} {first:12.3f} {t_np / max(t_nb, 1e-9):8.1f}x")


if __name__ == "__main__":
    main()
