"""Bivariate elimination and the d=2 common-root decision."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from crl.algebra import modp, numeric
from crl.algebra.gcd import gcd_int
from crl.algebra.intpoly import IntPoly
from crl.poly import BernoulliPolyMulti, ComplexPoint

YES = "Yes"
NO = "No"
UNDECIDED = "Undecided"


class BivarIntPoly:
    """Integer polynomial in x, y stored as coefficients of y**k, each an IntPoly in x."""

    __slots__ = ("coeffs_y",)

    def __init__(self, coeffs_y):
        c = [p if isinstance(p, IntPoly) else IntPoly(p) for p in coeffs_y]
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "coeffs_y", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("BivarIntPoly is immutable")

    @classmethod
    def from_terms(cls, terms: dict) -> BivarIntPoly:
        """Build from ``{(i, k): c}`` meaning c * x**i * y**k."""
        if not terms:
            return cls(())
        dy = max(k for _, k in terms)
        dx = max(i for i, _ in terms)
        rows = [[0] * (dx + 1) for _ in range(dy + 1)]
        for (i, k), c in terms.items():
            rows[k][i] += c
        return cls(rows)

    @classmethod
    def from_bernoulli(cls, p: BernoulliPolyMulti) -> BivarIntPoly:
        if p.d != 2:
            raise ValueError("need a polynomial in two variables")
        return cls.from_terms({(j[0], j[1]): c for j, c in zip(p.exponents, p.coeffs)})

    def terms(self) -> dict:
        return {(i, k): c for k, row in enumerate(self.coeffs_y) for i, c in enumerate(row.coeffs) if c}

    @property
    def degree_y(self) -> int:
        return len(self.coeffs_y) - 1

    @property
    def degree_x(self) -> int:
        return max((row.degree for row in self.coeffs_y), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + k for (i, k) in self.terms()), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs_y

    def norm1(self) -> int:
        return sum(abs(c) for c in self.terms().values())

    def transpose(self) -> BivarIntPoly:
        """Swap the roles of x and y."""
        return BivarIntPoly.from_terms({(k, i): c for (i, k), c in self.terms().items()})

    def specialize_x(self, x) -> list:
        """Coefficients (lowest first) of the univariate polynomial in y at a given x."""
        return [row(x) for row in self.coeffs_y]

    def __call__(self, x, y):
        acc = 0
        for row in reversed(self.coeffs_y):
            acc = acc * y + row(x)
        return acc

    def as_array(self, p: int | None = None) -> np.ndarray:
        out = np.zeros((self.degree_y + 1, self.degree_x + 1), dtype=object)
        for (i, k), c in self.terms().items():
            out[k, i] = c
        if p is not None:
            return np.array([[int(v) % p for v in row] for row in out], dtype=np.int64)
        return out

    def __eq__(self, other):
        return isinstance(other, BivarIntPoly) and self.coeffs_y == other.coeffs_y

    def __hash__(self):
        return hash(self.coeffs_y)

    def __repr__(self):
        return f"BivarIntPoly({self.terms()})"


def eliminate_y(P: BivarIntPoly, Q: BivarIntPoly) -> IntPoly:
    """Res_y(P, Q) in Z[x] from the formal Sylvester matrix in y.

    Residues mod word-size primes come from evaluation at x = 0, 1, ... and
    interpolation; the number of points uses the crude bound
    deg_y(Q) * deg_x(P) + deg_y(P) * deg_x(Q), so the degree of the result is
    measured rather than imposed.
    """
    if P.is_zero() or Q.is_zero():
        raise ValueError("eliminate_y needs nonzero polynomials")
    if P.degree_y < 1 or Q.degree_y < 1:
        raise ValueError("eliminate_y needs positive y-degree")
    dp, dq = P.degree_y, Q.degree_y
    npoints = dq * P.degree_x + dp * Q.degree_x + 1
    target = 2 * P.norm1() ** dq * Q.norm1() ** dp + 1
    acc = None
    modulus = 1
    k = 0
    while modulus < target:
        k += 1
        p = modp.primes(k)[-1]
        r = modp.bivariate_resultant_modp(P.as_array(p), Q.as_array(p), npoints, p)
        r = [int(v) for v in r]
        if acc is None:
            acc = r
        else:
            inv = pow(modulus, -1, p)
            acc = [a + modulus * ((b - a) * inv % p) for a, b in zip(acc, r)]
        modulus *= p
    half = modulus // 2
    return IntPoly(a - modulus if a > half else a for a in acc)


@dataclass(frozen=True)
class Decision2D:
    tag: str
    witness: ComplexPoint | None = None
    reason: str = ""


def _clean(z: complex, scale: float = 1e-12) -> complex:
    return complex(0.0 if abs(z.real) < scale else z.real, 0.0 if abs(z.imag) < scale else z.imag)


def common_root_exists_2d(
    P1: BernoulliPolyMulti,
    P2: BernoulliPolyMulti,
    P3: BernoulliPolyMulti,
    tol: float = 1e-8,
    reject: float = 1e-4,
) -> Decision2D:
    """Decide whether three polynomials in two variables share a point of C^2.

    ``No`` is certified when the gcd of the two x-eliminants (or of the two
    y-eliminants) is constant. Otherwise common x-roots are lifted to y-roots
    of P1 numerically: a lift whose relative residuals in P2 and P3 are below
    ``tol`` is a witness; if every lift misses by more than ``reject`` the
    answer is a numerical ``No``; anything in between is ``Undecided``.

    When an eliminant vanishes identically, P1 shares a curve with P2 or P3.
    The other eliminant still bounds the candidate x values; if both vanish,
    points of P1 over a few fixed x values are probed for a witness.
    """
    polys = [BivarIntPoly.from_bernoulli(p) for p in (P1, P2, P3)]
    r12, r13 = _eliminants(polys)
    if not r12.is_zero() and not r13.is_zero():
        gx = gcd_int(r12, r13)
        if gx.degree == 0:
            return Decision2D(NO, None, "x-eliminants coprime")
        t12, t13 = _eliminants([p.transpose() for p in polys])
        if not t12.is_zero() and not t13.is_zero() and gcd_int(t12, t13).degree == 0:
            return Decision2D(NO, None, "y-eliminants coprime")
        xs = numeric.roots(gx.coeffs, newton_steps=2)
    elif r12.is_zero() and r13.is_zero():
        best, point = min((_best_lift(polys, x) for x in PROBE_X), key=lambda t: t[0])
        if best < tol:
            return Decision2D(YES, ComplexPoint(point), "shared curve, probed lift verified")
        return Decision2D(UNDECIDED, None, "P1 shares a factor with P2 and P3")
    else:
        xs = numeric.roots((r13 if r12.is_zero() else r12).coeffs, newton_steps=2)
    ambiguous = False
    for xr in xs:
        best, point = _best_lift(polys, complex(xr))
        if best < tol:
            return Decision2D(YES, ComplexPoint(point), "numeric lift verified")
        if best <= reject:
            ambiguous = True
    if ambiguous:
        return Decision2D(UNDECIDED, None, "ambiguous lift")
    return Decision2D(NO, None, "no lift of a common x-root matches")


# generic-looking x values used when every eliminant vanishes
PROBE_X = (0.3141592653589793 + 0.2718281828459045j, -0.5772156649015329 + 0.1618033988749895j)


def _eliminants(polys):
    return eliminate_y(polys[0], polys[1]), eliminate_y(polys[0], polys[2])


def _best_lift(polys, x: complex):
    """Smallest max relative residual of P2, P3 over y-roots of P1(x, .)."""
    ycoeffs = [complex(row(x)) for row in polys[0].coeffs_y]
    best = float("inf")
    point = None
    for y in numeric.roots(ycoeffs, newton_steps=2):
        res = max(_rel_residual(p, x, complex(y)) for p in polys)
        if res < best:
            best = res
            point = (_clean(x), _clean(complex(y)))
    return best, point


def _rel_residual(p: BivarIntPoly, x: complex, y: complex) -> float:
    val = 0j
    scale = 0.0
    for (i, k), c in p.terms().items():
        t = c * x ** i * y ** k
        val += t
        scale += abs(t)
    return abs(val) / scale if scale else 0.0
