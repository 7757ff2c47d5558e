"""Exact resultants by CRT, a modular coprimality filter, and the d=1 decision.

Sign convention: Res(f, g) is the determinant of the Sylvester matrix whose
first deg(g) rows carry the coefficients of f, i.e.
Res(f, g) = lc(f)**deg(g) * prod(g(a) for a a root of f).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from crl.algebra import modp
from crl.algebra.gcd import gcd_int
from crl.algebra.intpoly import IntPoly
from crl.poly import BernoulliPolyUni, eval_at_pm1

NONZERO = "NonzeroCertified"
ZERO = "ZeroCertified"
UNDECIDED = "Undecided"


@dataclass(frozen=True)
class ResultantVerdict:
    tag: str
    witness_primes: tuple[int, ...] = ()
    value: int | None = None
    primes_tried: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "tag": self.tag,
                "witness_primes": list(self.witness_primes),
                "value": None if self.value is None else str(self.value),
                "primes_tried": self.primes_tried,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> ResultantVerdict:
        d = json.loads(text)
        value = None if d["value"] is None else int(d["value"])
        return cls(d["tag"], tuple(d["witness_primes"]), value, d["primes_tried"])


def hadamard_bound(f: IntPoly, g: IntPoly) -> int:
    """Upper bound on |Res(f, g)| from the Sylvester row norms."""
    return f.norm2_ceil() ** g.degree * g.norm2_ceil() ** f.degree


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Exact Sylvester resultant, reconstructed from residues modulo word-size primes."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if f.degree == 0 and g.degree == 0:
        return 1
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    target = 2 * hadamard_bound(f, g) + 1
    value, modulus = 0, 1
    k = 0
    while modulus < target:
        k += 1
        for p in modp.primes(k)[k - 1:]:
            if f.lc % p == 0 or g.lc % p == 0:
                continue
            r = int(modp.resultant_modp(modp.reduce_coeffs(f.coeffs, p), modp.reduce_coeffs(g.coeffs, p), p))
            t = (r - value) * pow(modulus, -1, p) % p
            value += modulus * t
            modulus *= p
    return value - modulus if value > modulus // 2 else value


def modular_resultant_filter(f: IntPoly, g: IntPoly, prime_budget: int) -> ResultantVerdict:
    """Try to certify Res(f, g) != 0 with at most ``prime_budget`` primes."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if prime_budget < 1:
        raise ValueError("prime_budget must be positive")
    tried = 0
    for p in modp.primes(prime_budget):
        tried += 1
        if f.lc % p == 0 or g.lc % p == 0:
            continue
        r = modp.resultant_modp(modp.reduce_coeffs(f.coeffs, p), modp.reduce_coeffs(g.coeffs, p), p)
        if r != 0:
            return ResultantVerdict(NONZERO, (p,), None, tried)
    return ResultantVerdict(UNDECIDED, (), None, tried)


def certify_resultant(f: IntPoly, g: IntPoly, prime_budget: int = 2) -> ResultantVerdict:
    """Filter first, then settle undecided cases exactly."""
    v = modular_resultant_filter(f, g, prime_budget)
    if v.tag == NONZERO:
        return v
    value = resultant(f, g)
    return ResultantVerdict(ZERO if value == 0 else NONZERO, (), value, v.primes_tried)


# -- reference oracle -----------------------------------------------------

def sylvester_matrix(f: IntPoly, g: IntPoly) -> list[list[int]]:
    df, dg = f.degree, g.degree
    n = df + dg
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for r in range(dg):
        rows.append([0] * r + fc + [0] * (n - r - df - 1))
    for r in range(df):
        rows.append([0] * r + gc + [0] * (n - r - dg - 1))
    return rows


def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def resultant_bareiss(f: IntPoly, g: IntPoly) -> int:
    return bareiss_det(sylvester_matrix(f, g))


# -- d = 1 decision -------------------------------------------------------

def to_int_poly(p: BernoulliPolyUni) -> IntPoly:
    return IntPoly(p.coeffs)


@dataclass
class StageCounts:
    """How many decisions each pipeline stage settled."""

    prefilter_hits: int = 0
    modular_rejects: int = 0
    exact_checks: int = 0
    exact_hits: int = 0

    def merge(self, other: StageCounts) -> StageCounts:
        return StageCounts(
            self.prefilter_hits + other.prefilter_hits,
            self.modular_rejects + other.modular_rejects,
            self.exact_checks + other.exact_checks,
            self.exact_hits + other.exact_hits,
        )


def common_root_exists(
    p: BernoulliPolyUni,
    q: BernoulliPolyUni,
    prime_budget: int = 2,
    use_filter: bool = True,
    stages: StageCounts | None = None,
) -> bool:
    """True iff p and q share a complex root (deg gcd >= 1).

    Stages: exact values at +1/-1, then a modular resultant over
    ``prime_budget`` primes, then the exact gcd.
    """
    if use_filter:
        a1, am1 = eval_at_pm1(p)
        b1, bm1 = eval_at_pm1(q)
        if (a1 == 0 and b1 == 0) or (am1 == 0 and bm1 == 0):
            if stages is not None:
                stages.prefilter_hits += 1
            return True
    f, g = to_int_poly(p), to_int_poly(q)
    if f.degree == 0 or g.degree == 0:
        if stages is not None:
            stages.modular_rejects += 1
        return False
    if modular_resultant_filter(f, g, prime_budget).tag == NONZERO:
        if stages is not None:
            stages.modular_rejects += 1
        return False
    hit = gcd_int(f, g).degree >= 1
    if stages is not None:
        stages.exact_checks += 1
        stages.exact_hits += hit
    return hit
