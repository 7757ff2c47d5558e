"""Where common roots live.

Univariate side: every root of a +-1 polynomial lies in the open annulus
1/2 < |z| < 2, so a root of low algebraic degree must be a root of one of
finitely many monic integer polynomials. Common factors of two Bernoulli
polynomials are split into the x -/+ 1 factors, the low-degree candidates,
and an unresolved remainder.

Bivariate side: a point is tagged by whether a coordinate vanishes, whether
it satisfies a two-term monomial relation, or neither.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from crl.algebra.gcd import gcd_int
from crl.algebra.intpoly import IntPoly
from crl.algebra.resultant import to_int_poly
from crl.atoms import walk_return_prob
from crl.dunomial import NUMERIC, Dunomial, r_of_x
from crl.poly import BernoulliPolyUni

ANNULUS_GUARD = 1e-6
CANDIDATE_GUARD = 1e-9


def annulus_filter(roots, eps: float = ANNULUS_GUARD) -> list[complex]:
    """Keep the roots with 1/2 - eps < |z| < 2 + eps, in input order."""
    return [z for z in roots if 0.5 - eps < abs(z) < 2.0 + eps]


# -- candidates -----------------------------------------------------------

@dataclass(frozen=True)
class CandidatePoly:
    poly: IntPoly
    algebraic_degree: int

    def __post_init__(self):
        if not self.poly.is_monic():
            raise ValueError("candidate polynomials are monic")
        if self.poly.degree != self.algebraic_degree:
            raise ValueError("degree mismatch")

    def roots(self) -> np.ndarray:
        return np.roots(list(reversed(self.poly.coeffs)))

    def __str__(self):
        return self.poly.pretty()


def _in_closed_annulus(coeffs) -> bool:
    rts = np.roots(list(reversed(coeffs)))
    return bool(np.all((np.abs(rts) >= 0.5 - CANDIDATE_GUARD) & (np.abs(rts) <= 2.0 + CANDIDATE_GUARD)))


def _has_integer_root(coeffs) -> bool:
    c0 = coeffs[0]
    if c0 == 0:
        return True
    for r in range(1, abs(c0) + 1):
        if abs(c0) % r == 0:
            for z in (r, -r):
                if IntPoly(coeffs)(z) == 0:
                    return True
    return False


def quadratic_pool(bound: int = 4) -> list[tuple[int, int]]:
    """All (a, b) with |a|, |b| <= bound, i.e. x^2 - a x - b before filtering."""
    return [(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)]


def quadratic_qualifies(a: int, b: int) -> bool:
    """x^2 - a x - b is irreducible over Q with both roots in [1/2, 2] in modulus."""
    coeffs = (-b, -a, 1)
    if _has_integer_root(coeffs):
        return False
    return _in_closed_annulus(coeffs)


@lru_cache(maxsize=None)
def enumerate_candidates(algebraic_degree: int) -> tuple[CandidatePoly, ...]:
    """Monic irreducible integer polynomials of exactly the given degree whose
    roots all lie in the closed annulus 1/2 <= |z| <= 2.

    Degree 1 gives x - 1 and x + 1. Degree 2 uses the Vieta box |a|, |b| <= 4
    for x^2 - a x - b. Degrees 3 and 4 bound the coefficient of x^(k-j) by
    C(k, j) * 2^j and require constant term +-1: a factor of a polynomial
    with leading and constant coefficients +-1 has a unit constant term.
    """
    k = algebraic_degree
    if k == 1:
        return (CandidatePoly(IntPoly([-1, 1]), 1), CandidatePoly(IntPoly([1, 1]), 1))
    if k == 2:
        return tuple(
            CandidatePoly(IntPoly([-b, -a, 1]), 2) for a, b in quadratic_pool() if quadratic_qualifies(a, b)
        )
    if k in (3, 4):
        return tuple(_higher_candidates(k))
    raise ValueError("candidate enumeration supports degrees 1 to 4")


def _higher_candidates(k: int) -> list[CandidatePoly]:
    import sympy

    x = sympy.Symbol("x")
    ranges = [range(-math.comb(k, j) * 2 ** j, math.comb(k, j) * 2 ** j + 1) for j in range(k - 1, 0, -1)]
    out = []
    for c0 in (-1, 1):
        for mids in itertools.product(*ranges):
            # mids are the coefficients of x^(k-1), ..., x^1
            coeffs = (c0,) + tuple(reversed(mids)) + (1,)
            if IntPoly(coeffs)(1) == 0 or IntPoly(coeffs)(-1) == 0:
                continue
            if not _in_closed_annulus(coeffs):
                continue
            if sympy.Poly(list(reversed(coeffs)), x).is_irreducible:
                out.append(CandidatePoly(IntPoly(coeffs), k))
    return out


# -- decomposition --------------------------------------------------------

@dataclass(frozen=True)
class DecompositionTerms:
    n: int
    I: Fraction
    II: Fraction
    III: Fraction

    @property
    def total(self) -> Fraction:
        return self.I + self.II + self.III

    def to_dict(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("I", "II", "III")} | {"n": self.n, "sum": str(self.total)}


def decompose_terms(n: int) -> DecompositionTerms:
    """Exact probabilities of the dominant common-root events for degree n.

    I: both polynomials vanish at 1. II: both vanish at -1. III is the
    inclusion-exclusion correction, minus the probability that both vanish
    at 1 and -1, which splits into independent even- and odd-index walks.
    """
    if n < 1:
        raise ValueError("n must be positive")
    m = n + 1
    single = walk_return_prob(m)
    q_even = walk_return_prob(n // 2 + 1)
    q_odd = walk_return_prob((n + 1) // 2)
    return DecompositionTerms(n, single ** 2, single ** 2, -(q_even * q_odd) ** 2)


# -- univariate classification --------------------------------------------

RATIONAL_PM1 = "RationalPM1"
LOW_DEGREE = "LowDegree"
HIGHER = "Higher"


@dataclass(frozen=True)
class RootClass:
    tag: str
    which: int | None = None
    candidate: CandidatePoly | None = None

    def to_dict(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.which is not None:
            out["which"] = self.which
        if self.candidate is not None:
            out["candidate"] = str(self.candidate)
        return out


def classify_common_roots_1d(
    p: BernoulliPolyUni, q: BernoulliPolyUni, max_degree: int = 2
) -> list[tuple[IntPoly, RootClass]]:
    """Split gcd(p, q) into x-1, x+1, low-degree candidates and a remainder.

    Each factor is peeled by exact division as many times as it divides, and
    listed once per occurrence.
    """
    g = gcd_int(to_int_poly(p), to_int_poly(q))
    return classify_factor(g, max_degree)


def classify_factor(g: IntPoly, max_degree: int = 2) -> list[tuple[IntPoly, RootClass]]:
    out: list[tuple[IntPoly, RootClass]] = []
    if g.degree < 1:
        return out
    for k in range(1, max_degree + 1):
        for cand in enumerate_candidates(k):
            while g.degree >= k:
                quo = g.divmod_exact(cand.poly)
                if quo is None:
                    break
                g = quo
                if k == 1:
                    out.append((cand.poly, RootClass(RATIONAL_PM1, which=-cand.poly.coeffs[0])))
                else:
                    out.append((cand.poly, RootClass(LOW_DEGREE, candidate=cand)))
    if g.degree >= 1:
        out.append((g.normalized(), RootClass(HIGHER)))
    return out


# -- point zones ----------------------------------------------------------

Z1 = "Z1"
Z2 = "Z2"
Z3 = "Z3"


@dataclass(frozen=True)
class ZoneTag:
    tag: str
    zero_coord_index: int | None = None
    witness: Dunomial | None = None

    def to_dict(self) -> dict:
        out: dict = {"zone": self.tag}
        if self.zero_coord_index is not None:
            out["zero_coord_index"] = self.zero_coord_index
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def classify_point(x, n: int, tol: float = 1e-9) -> ZoneTag:
    """Z1 if a coordinate is numerically zero, Z2 if a dunomial of degree <= n
    vanishes (minimal-order witness), Z3 otherwise."""
    coords = [complex(v) for v in x]
    mags = [abs(v) for v in coords]
    i = int(np.argmin(mags))
    if mags[i] < tol:
        return ZoneTag(Z1, zero_coord_index=i)
    res = r_of_x(coords, n, NUMERIC, tol)
    if res.is_finite:
        return ZoneTag(Z2, witness=res.witness)
    return ZoneTag(Z3)
