"""Hot enumeration kernels.

Every kernel walks a grid of F_q elements encoded as integer codes and
either histograms a discrete-log linear form modulo q-1 or counts points.
Field arithmetic runs on three tables owned by :class:`charsum.fq.FieldSpec`:

* ``log``  -- length q, ``log[0] == -1``
* ``exp``  -- length q-1, ``exp[k]`` is the code of g**k
* ``zech`` -- length q-1, ``zech[k] = log(1 + g**k)`` or -1 when that is 0

Each kernel has a numba loop version (``*_nb``) and a numpy version
(``*_np``).  The public name is bound to one of them according to
:data:`charsum._accel.USE_NUMBA`; both stay importable so the benchmark and
the tests can compare them.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, jit

_CHUNK = 1 << 16


# ---------------------------------------------------------------------------
# scalar field ops for the loop kernels


@jit
def _fmul(a, b, log, exp, m):
    if a == 0 or b == 0:
        return 0
    k = log[a] + log[b]
    if k >= m:
        k -= m
    return exp[k]


@jit
def _fadd(a, b, log, exp, zech, m):
    if a == 0:
        return b
    if b == 0:
        return a
    la = log[a]
    d = log[b] - la
    if d < 0:
        d += m
    z = zech[d]
    if z < 0:
        return 0
    k = la + z
    if k >= m:
        k -= m
    return exp[k]


# ---------------------------------------------------------------------------
# vectorised field ops for the numpy kernels


def _vmul(a, b, log, exp, m):
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    out = np.zeros(a.shape, dtype=np.int64)
    nz = (a != 0) & (b != 0)
    out[nz] = exp[(log[a[nz]] + log[b[nz]]) % m]
    return out


def _vadd(a, b, log, exp, zech, m):
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    out = np.where(a == 0, b, a).astype(np.int64)
    both = (a != 0) & (b != 0)
    la = log[a[both]]
    z = zech[(log[b[both]] - la) % m]
    res = np.zeros(la.shape, dtype=np.int64)
    ok = z >= 0
    res[ok] = exp[(la[ok] + z[ok]) % m]
    out[both] = res
    return out


def _grid(start, stop, q, r):
    t = np.arange(start, stop, dtype=np.int64)
    cols = np.empty((t.size, r), dtype=np.int64)
    for j in range(r):
        cols[:, j] = t % q
        t = t // q
    return cols


# ---------------------------------------------------------------------------
# 1. affine subspace in solved form


@jit
def subspace_histogram_nb(r, q, coef, const, exps, log, exp, zech):
    """Histogram of sum_i exps[i]*log(z_i) mod q-1 over points of a solved subspace.

    Free coordinates z_0..z_{r-1} range over F_q; dependent coordinate k is
    ``const[k] + sum_j coef[k, j] * z_j``.  Points with a zero coordinate are
    skipped (the character convention chi(0) = 0).
    """
    m = q - 1
    nd = const.shape[0]
    hist = np.zeros(m, dtype=np.int64)
    z = np.zeros(max(r, 1), dtype=np.int64)
    total = 1
    for _ in range(r):
        total *= q
    for t in range(total):
        tt = t
        ok = True
        s = 0
        for j in range(r):
            zj = tt % q
            tt //= q
            if zj == 0:
                ok = False
                break
            z[j] = zj
            s += exps[j] * log[zj]
        if not ok:
            continue
        for k in range(nd):
            v = const[k]
            for j in range(r):
                v = _fadd(v, _fmul(coef[k, j], z[j], log, exp, m), log, exp, zech, m)
            if v == 0:
                ok = False
                break
            s += exps[r + k] * log[v]
        if ok:
            hist[s % m] += 1
    return hist


def subspace_histogram_np(r, q, coef, const, exps, log, exp, zech):
    m = q - 1
    nd = len(const)
    hist = np.zeros(m, dtype=np.int64)
    total = q**r
    for start in range(0, total, _CHUNK):
        z = _grid(start, min(total, start + _CHUNK), q, r)
        keep = np.all(z != 0, axis=1)
        z = z[keep]
        if r:
            s = (np.asarray(exps[:r]) * log[z]).sum(axis=1)
        else:
            s = np.zeros(z.shape[0], dtype=np.int64)
        alive = np.ones(z.shape[0], dtype=bool)
        for k in range(nd):
            v = np.full(z.shape[0], const[k], dtype=np.int64)
            for j in range(r):
                v = _vadd(v, _vmul(coef[k, j], z[:, j], log, exp, m), log, exp, zech, m)
            alive &= v != 0
            s = s + exps[r + k] * np.where(v != 0, log[v], 0)
        hist += np.bincount(s[alive] % m, minlength=m)
    return hist


# ---------------------------------------------------------------------------
# 2. monic polynomials evaluated at branch points (monic-sum convention)


@jit
def monic_histogram_nb(r, q, alphas, exps, log, exp, zech):
    """Histogram of sum_i exps[i]*log(v(alpha_i)) over monic v of degree r."""
    m = q - 1
    d = alphas.shape[0]
    hist = np.zeros(m, dtype=np.int64)
    coeffs = np.zeros(max(r, 1), dtype=np.int64)
    total = 1
    for _ in range(r):
        total *= q
    for t in range(total):
        tt = t
        for k in range(r):
            coeffs[k] = tt % q
            tt //= q
        s = 0
        ok = True
        for i in range(d):
            v = 1
            for k in range(r - 1, -1, -1):
                v = _fadd(_fmul(v, alphas[i], log, exp, m), coeffs[k], log, exp, zech, m)
            if v == 0:
                ok = False
                break
            s += exps[i] * log[v]
        if ok:
            hist[s % m] += 1
    return hist


def _eval_monic_np(coeffs, alpha, log, exp, zech, m):
    r = coeffs.shape[1]
    v = np.ones(coeffs.shape[0], dtype=np.int64)
    for k in range(r - 1, -1, -1):
        v = _vadd(_vmul(v, alpha, log, exp, m), coeffs[:, k], log, exp, zech, m)
    return v


def monic_histogram_np(r, q, alphas, exps, log, exp, zech):
    m = q - 1
    hist = np.zeros(m, dtype=np.int64)
    total = q**r
    for start in range(0, total, _CHUNK):
        coeffs = _grid(start, min(total, start + _CHUNK), q, r)
        s = np.zeros(coeffs.shape[0], dtype=np.int64)
        alive = np.ones(coeffs.shape[0], dtype=bool)
        for i, alpha in enumerate(alphas):
            v = _eval_monic_np(coeffs, alpha, log, exp, zech, m)
            alive &= v != 0
            s += exps[i] * np.where(v != 0, log[v], 0)
        hist += np.bincount(s[alive] % m, minlength=m)
    return hist


# ---------------------------------------------------------------------------
# 3. resultant Res(v, f) = prod_i ((-1)^r v(alpha_i))^{n_i}  (Artin convention)


@jit
def resultant_histogram_nb(r, q, alphas, mults, scale, neg_one, log, exp, zech):
    """Histogram of scale*log(Res(v, f)) over monic v of degree r with Res != 0."""
    m = q - 1
    d = alphas.shape[0]
    hist = np.zeros(m, dtype=np.int64)
    coeffs = np.zeros(max(r, 1), dtype=np.int64)
    sign = 1
    if r % 2 == 1:
        sign = neg_one
    total = 1
    for _ in range(r):
        total *= q
    for t in range(total):
        tt = t
        for k in range(r):
            coeffs[k] = tt % q
            tt //= q
        res = 1
        for i in range(d):
            v = 1
            for k in range(r - 1, -1, -1):
                v = _fadd(_fmul(v, alphas[i], log, exp, m), coeffs[k], log, exp, zech, m)
            v = _fmul(v, sign, log, exp, m)
            if v == 0:
                res = 0
                break
            for _ in range(mults[i]):
                res = _fmul(res, v, log, exp, m)
        if res != 0:
            hist[(scale * log[res]) % m] += 1
    return hist


def resultant_histogram_np(r, q, alphas, mults, scale, neg_one, log, exp, zech):
    m = q - 1
    hist = np.zeros(m, dtype=np.int64)
    sign = neg_one if r % 2 else 1
    total = q**r
    for start in range(0, total, _CHUNK):
        coeffs = _grid(start, min(total, start + _CHUNK), q, r)
        res = np.ones(coeffs.shape[0], dtype=np.int64)
        for alpha, mult in zip(alphas, mults):
            v = _vmul(_eval_monic_np(coeffs, alpha, log, exp, zech, m), sign, log, exp, m)
            for _ in range(int(mult)):
                res = _vmul(res, v, log, exp, m)
        alive = res != 0
        hist += np.bincount((scale * log[res[alive]]) % m, minlength=m)
    return hist


# ---------------------------------------------------------------------------
# 4. affine points of y^n = prod (x - alpha_i)^{n_i}


@jit
def count_affine_nb(q, neg_alphas, mults, n, log, exp, zech):
    """Number of affine (x, y) with f(x) != 0 and y^n = f(x); requires n | q-1."""
    m = q - 1
    d = neg_alphas.shape[0]
    count = 0
    for x in range(q):
        s = 0
        ok = True
        for i in range(d):
            v = _fadd(x, neg_alphas[i], log, exp, zech, m)
            if v == 0:
                ok = False
                break
            s += mults[i] * log[v]
        if ok and s % n == 0:
            count += n
    return count


def count_affine_np(q, neg_alphas, mults, n, log, exp, zech):
    m = q - 1
    x = np.arange(q, dtype=np.int64)
    s = np.zeros(q, dtype=np.int64)
    alive = np.ones(q, dtype=bool)
    for na, mult in zip(neg_alphas, mults):
        v = _vadd(x, na, log, exp, zech, m)
        alive &= v != 0
        s += mult * np.where(v != 0, log[v], 0)
    return int(n * np.count_nonzero(alive & (s % n == 0)))


# ---------------------------------------------------------------------------
# 5. power table g^k as codes, by polynomial multiplication over F_p


@jit
def power_table_nb(p, h, modulus, gen):
    """exp[k] = code of gen**k in F_p[x]/(modulus) for k < p**h - 1."""
    q = 1
    for _ in range(h):
        q *= p
    out = np.zeros(q - 1, dtype=np.int64)
    cur = np.zeros(h, dtype=np.int64)
    cur[0] = 1
    prod = np.zeros(2 * h, dtype=np.int64)
    for k in range(q - 1):
        code = 0
        for i in range(h - 1, -1, -1):
            code = code * p + cur[i]
        out[k] = code
        for i in range(2 * h):
            prod[i] = 0
        for i in range(h):
            if cur[i] != 0:
                for j in range(h):
                    prod[i + j] += cur[i] * gen[j]
        for i in range(2 * h - 1, h - 1, -1):
            c = prod[i] % p
            if c != 0:
                for j in range(h):
                    prod[i - h + j] -= c * modulus[j]
            prod[i] = 0
        for i in range(h):
            cur[i] = prod[i] % p
    return out


def power_table_np(p, h, modulus, gen):
    q = p**h
    out = np.zeros(q - 1, dtype=np.int64)
    weights = p ** np.arange(h, dtype=np.int64)
    cur = np.zeros(h, dtype=np.int64)
    cur[0] = 1
    gen = np.asarray(gen, dtype=np.int64)
    low = np.asarray(modulus[:h], dtype=np.int64)
    for k in range(q - 1):
        out[k] = int(cur @ weights)
        prod = np.convolve(cur, gen)
        for i in range(2 * h - 2, h - 1, -1):
            c = prod[i] % p
            if c:
                prod[i - h : i] -= c * low
        cur = prod[:h] % p
    return out


BACKENDS = {
    "numpy": {
        "subspace_histogram": subspace_histogram_np,
        "monic_histogram": monic_histogram_np,
        "resultant_histogram": resultant_histogram_np,
        "count_affine": count_affine_np,
        "power_table": power_table_np,
    },
    "numba": {
        "subspace_histogram": subspace_histogram_nb,
        "monic_histogram": monic_histogram_nb,
        "resultant_histogram": resultant_histogram_nb,
        "count_affine": count_affine_nb,
        "power_table": power_table_nb,
    },
}

_active = BACKENDS["numba" if USE_NUMBA else "numpy"]
subspace_histogram = _active["subspace_histogram"]
monic_histogram = _active["monic_histogram"]
resultant_histogram = _active["resultant_histogram"]
count_affine = _active["count_affine"]
power_table = _active["power_table"]
