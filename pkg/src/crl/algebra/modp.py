"""Word-size prime-field kernels (numba).

The exact kernels take int64 coefficient arrays, lowest degree first, with
entries already reduced to ``[0, p)``. Their primes stay below 2**31 so a
product of two residues fits in a signed 64-bit integer.

The screening kernels used in the Monte Carlo hot loop work on float64
residues modulo primes below 2**24 instead, where products are still exact
and floor-based reduction is much cheaper than integer modulo.
"""

from __future__ import annotations

import numpy as np
from numba import njit

PRIME_CEILING = 1 << 31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _descending_primes(count: int) -> tuple[int, ...]:
    out = []
    k = PRIME_CEILING - 1
    while len(out) < count:
        if _is_prime(k):
            out.append(k)
        k -= 2 if k % 2 else 1
    return tuple(out)


_prime_cache: list[int] = list(_descending_primes(64))


def primes(count: int) -> tuple[int, ...]:
    """The ``count`` largest primes below 2**31, in descending order."""
    if count > len(_prime_cache):
        _prime_cache[:] = _descending_primes(count)
    return tuple(_prime_cache[:count])


def reduce_coeffs(coeffs, p: int) -> np.ndarray:
    return np.array([c % p for c in coeffs], dtype=np.int64)


@njit(cache=True)
def _powmod(a, e, p):
    r = 1
    a %= p
    while e > 0:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


@njit(cache=True)
def _inv(a, p):
    return _powmod(a, p - 2, p)


@njit(cache=True)
def _deg(a, hi):
    k = hi
    while k >= 0 and a[k] == 0:
        k -= 1
    return k


@njit(cache=True)
def _rem_inplace(a, da, b, db, p):
    """Reduce a (degree da) modulo b (degree db >= 0) in place; return new degree."""
    inv = _inv(b[db], p)
    while da >= db:
        t = a[da] * inv % p
        if t != 0:
            off = da - db
            for i in range(db + 1):
                a[off + i] = (a[off + i] - t * b[i]) % p
        da = _deg(a, da - 1)
    return da


@njit(cache=True)
def resultant_modp(f, g, p):
    """Res(f, g) mod p via the Euclidean recurrence.

    Degrees are the true degrees of the reduced arrays; callers must skip
    primes that divide a leading coefficient when the formal Sylvester
    determinant is wanted.
    """
    a = f.copy()
    b = g.copy()
    da = _deg(a, a.shape[0] - 1)
    db = _deg(b, b.shape[0] - 1)
    if da < 0 or db < 0:
        return 0
    res = 1
    while True:
        if db == 0:
            return res * _powmod(b[0], da, p) % p
        if da == 0:
            return res * _powmod(a[0], db, p) % p
        # Res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * Res(b, r)
        dr = _rem_inplace(a, da, b, db, p)
        if dr < 0:
            return 0
        if (da * db) % 2 == 1:
            res = (p - res) % p
        res = res * _powmod(b[db], da - dr, p) % p
        a, b = b, a
        da, db = db, dr


@njit(cache=True)
def gcd_modp(f, g, p):
    """Monic gcd of f and g over GF(p); empty array when both are zero."""
    a = f.copy()
    b = g.copy()
    da = _deg(a, a.shape[0] - 1)
    db = _deg(b, b.shape[0] - 1)
    while db >= 0:
        da = _rem_inplace(a, da, b, db, p)
        a, b = b, a
        da, db = db, da
    if da < 0:
        return np.zeros(0, dtype=np.int64)
    inv = _inv(a[da], p)
    out = np.empty(da + 1, dtype=np.int64)
    for i in range(da + 1):
        out[i] = a[i] * inv % p
    return out


@njit(cache=True)
def det_modp(m, p):
    """Determinant of a square matrix over GF(p) by Gaussian elimination."""
    a = m.copy()
    n = a.shape[0]
    det = 1
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if a[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for k in range(n):
                t = a[c, k]
                a[c, k] = a[piv, k]
                a[piv, k] = t
            det = (p - det) % p
        det = det * a[c, c] % p
        inv = _inv(a[c, c], p)
        for r in range(c + 1, n):
            if a[r, c] != 0:
                t = a[r, c] * inv % p
                for k in range(c, n):
                    a[r, k] = (a[r, k] - t * a[c, k]) % p
    return det


@njit(cache=True)
def sylvester_modp(f, df, g, dg, p):
    """Sylvester matrix with the dg rows of f first (coefficients highest first)."""
    n = df + dg
    s = np.zeros((n, n), dtype=np.int64)
    for r in range(dg):
        for i in range(df + 1):
            s[r, r + i] = f[df - i] % p
    for r in range(df):
        for i in range(dg + 1):
            s[dg + r, r + i] = g[dg - i] % p
    return s


# Screening primes stay below 2**24: residues are kept loosely in (-2p, 2p)
# as float64, so every product and difference stays below 2**53 and is exact.
SCREEN_PRIME_CEILING = 1 << 24


def screen_primes(count: int) -> tuple[int, ...]:
    out = []
    k = SCREEN_PRIME_CEILING - 1
    while len(out) < count:
        if _is_prime(k):
            out.append(k)
        k -= 2 if k % 2 else 1
    return tuple(out)


@njit(cache=True, nogil=True)
def _canon(v, p, pinv):
    r = v - np.floor(v * pinv) * p
    if r < 0.0:
        r += p
    elif r >= p:
        r -= p
    return r


@njit(cache=True, nogil=True)
def coprime_modp(f, g, p):
    """True when gcd(f, g) over GF(p) is a nonzero constant.

    Inverse-free pseudo-division on float64 residues. For p dividing neither
    leading coefficient this is equivalent to Res(f, g) != 0 mod p.
    """
    pinv = 1.0 / p
    a = f.copy()
    b = g.copy()
    da = a.shape[0] - 1
    while da >= 0 and _canon(a[da], p, pinv) == 0.0:
        da -= 1
    db = b.shape[0] - 1
    while db >= 0 and _canon(b[db], p, pinv) == 0.0:
        db -= 1
    if da < 0 or db < 0:
        return False
    if da < db:
        a, b = b, a
        da, db = db, da
    while db > 0:
        lb = b[db]
        while da >= db:
            t = a[da]
            off = da - db
            for i in range(off):
                v = a[i] * lb
                a[i] = v - np.floor(v * pinv) * p
            for i in range(db):
                v = a[off + i] * lb - t * b[i]
                a[off + i] = v - np.floor(v * pinv) * p
            a[da] = 0.0
            da -= 1
            while da >= 0 and _canon(a[da], p, pinv) == 0.0:
                da -= 1
        if da < 0:
            return False
        a, b = b, a
        da, db = db, da
    return db == 0


@njit(cache=True, nogil=True)
def screen_pairs(signs, prime_list, budget, use_filter):
    """Per-trial decision stage for pairs of +-1 polynomials.

    ``signs`` has shape (T, 2, m). Returns a code per trial:
    0 = coprime, certified modulo one of the screening primes,
    1 = common root at +1 or -1 found by the exact +-1 pre-filter,
    2 = undecided, the caller must run the exact gcd.
    """
    t_count = signs.shape[0]
    m = signs.shape[2]
    out = np.empty(t_count, dtype=np.int8)
    f = np.empty(m, dtype=np.float64)
    g = np.empty(m, dtype=np.float64)
    for t in range(t_count):
        if use_filter:
            s1a = 0
            s1b = 0
            s2a = 0
            s2b = 0
            for i in range(m):
                a = signs[t, 0, i]
                b = signs[t, 1, i]
                s1a += a
                s2a += b
                if i % 2 == 0:
                    s1b += a
                    s2b += b
                else:
                    s1b -= a
                    s2b -= b
            if (s1a == 0 and s2a == 0) or (s1b == 0 and s2b == 0):
                out[t] = 1
                continue
        code = 2
        for k in range(budget):
            p = prime_list[k]
            for i in range(m):
                f[i] = signs[t, 0, i]
                g[i] = signs[t, 1, i]
            if coprime_modp(f, g, p):
                code = 0
                break
        out[t] = code
    return out


@njit(cache=True)
def interpolate_modp(xs, ys, p):
    """Coefficients (lowest first) of the polynomial of degree < len(xs) through the points."""
    n = xs.shape[0]
    # Newton divided differences
    c = ys.copy() % p
    consecutive = True
    for i in range(1, n):
        if xs[i] != xs[i - 1] + 1:
            consecutive = False
    for j in range(1, n):
        # on consecutive nodes every denominator of this pass equals j
        invj = _inv(j % p, p) if consecutive else 0
        for i in range(n - 1, j - 1, -1):
            num = (c[i] - c[i - 1]) % p
            if consecutive:
                c[i] = num * invj % p
            else:
                c[i] = num * _inv((xs[i] - xs[i - j]) % p, p) % p
    out = np.zeros(n, dtype=np.int64)
    # expand Newton form by Horner from the top
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + c[i]
        for k in range(n - 1, 0, -1):
            out[k] = (out[k - 1] - xs[i] * out[k]) % p
        out[0] = (-xs[i] * out[0]) % p
        out[0] = (out[0] + c[i]) % p
    return out


@njit(cache=True)
def bivariate_resultant_modp(pc, qc, npoints, p):
    """Res_y(P, Q) mod p as a polynomial in x, by evaluation and interpolation.

    ``pc[k, i]`` is the coefficient of x**i y**k. The formal Sylvester
    determinant in y is used at every point: the Euclidean recurrence when
    both y-leading coefficients survive the specialization, the full
    determinant otherwise.
    """
    dp = pc.shape[0] - 1
    dq = qc.shape[0] - 1
    xs = np.empty(npoints, dtype=np.int64)
    ys = np.empty(npoints, dtype=np.int64)
    fy = np.empty(dp + 1, dtype=np.int64)
    gy = np.empty(dq + 1, dtype=np.int64)
    for t in range(npoints):
        x = t % p
        xs[t] = x
        for k in range(dp + 1):
            acc = 0
            for i in range(pc.shape[1] - 1, -1, -1):
                acc = (acc * x + pc[k, i]) % p
            fy[k] = acc
        for k in range(dq + 1):
            acc = 0
            for i in range(qc.shape[1] - 1, -1, -1):
                acc = (acc * x + qc[k, i]) % p
            gy[k] = acc
        if fy[dp] != 0 and gy[dq] != 0:
            ys[t] = resultant_modp(fy, gy, p)
        else:
            ys[t] = det_modp(sylvester_modp(fy, dp, gy, dq, p), p)
    return interpolate_modp(xs, ys, p)
