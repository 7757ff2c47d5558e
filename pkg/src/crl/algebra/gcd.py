"""Polynomial gcd over Z: modular algorithm plus a subresultant-PRS reference."""

from __future__ import annotations

import math

from crl.algebra import modp
from crl.algebra.intpoly import IntPoly


def _symmetric(v: int, m: int) -> int:
    v %= m
    return v - m if v > m // 2 else v


def gcd_int(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd of f and g with positive leading coefficient.

    Images mod word-size primes are combined by CRT; a candidate is accepted
    once it divides both inputs exactly. Primes dividing the gcd of the
    leading coefficients are skipped, so the modular degree never undershoots
    the true degree and an exactly dividing candidate is the gcd.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    if f.degree == 0 or g.degree == 0:
        return IntPoly([1])

    fp, gp = f.primitive_part(), g.primitive_part()
    lead = math.gcd(fp.lc, gp.lc)

    best_deg = min(fp.degree, gp.degree) + 1
    acc: list[int] | None = None
    modulus = 1
    used = 0
    for p in _prime_iter():
        if lead % p == 0:
            continue
        used += 1
        h = modp.gcd_modp(modp.reduce_coeffs(fp.coeffs, p), modp.reduce_coeffs(gp.coeffs, p), p)
        dh = len(h) - 1
        if dh == 0:
            return IntPoly([1])
        if dh > best_deg:
            continue
        scaled = [int(c) * lead % p for c in h]
        if dh < best_deg:
            best_deg = dh
            acc = scaled
            modulus = p
        else:
            acc = [_crt2(a, modulus, b, p) for a, b in zip(acc, scaled)]
            modulus *= p
        cand = IntPoly(_symmetric(c, modulus) for c in acc).primitive_part()
        if cand.degree == best_deg and cand.divides(fp) and cand.divides(gp):
            return cand
        if used > 10_000:
            raise RuntimeError("modular gcd did not converge")
    raise AssertionError("unreachable")


def _prime_iter():
    k = 0
    while True:
        batch = modp.primes(k + 64)
        for p in batch[k:]:
            yield p
        k += 64


def _crt2(a: int, m: int, b: int, p: int) -> int:
    """x = a (mod m), x = b (mod p), 0 <= x < m*p."""
    t = (b - a) * pow(m, -1, p) % p
    return a + m * t


def gcd_subresultant(f: IntPoly, g: IntPoly) -> IntPoly:
    """Reference gcd through the subresultant polynomial remainder sequence."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    a, b = (f, g) if f.degree >= g.degree else (g, f)
    if b.degree == 0:
        return IntPoly([1])
    a, b = a.primitive_part(), b.primitive_part()
    lead, h = 1, 1
    while True:
        delta = a.degree - b.degree
        r = a.pseudo_rem(b)
        if r.is_zero():
            return b.primitive_part()
        if r.degree == 0:
            return IntPoly([1])
        a = b
        b = r.exact_div_scalar(lead * h ** delta)
        lead = a.lc
        if delta == 0:
            continue
        # h <- lead^delta / h^(delta - 1), exact
        num = lead ** delta
        den = h ** (delta - 1)
        assert num % den == 0
        h = num // den


def pseudo_remainders_vanish(f: IntPoly, g: IntPoly, h: IntPoly) -> bool:
    """True when h divides f and g (pseudo-division remainders are zero)."""
    return f.pseudo_rem(h).is_zero() and g.pseudo_rem(h).is_zero()
