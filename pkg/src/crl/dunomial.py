"""Two-term monomial relations x^alpha + s * x^beta = 0 ("dunomials").

A point x with nonzero coordinates satisfies such a relation exactly when
x^(alpha - beta) = -s, so everything here is driven by the difference vector
delta = alpha - beta. Points are handled either exactly (Gaussian-rational
coordinates) or numerically in log space with a relative tolerance.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from crl.exact import GaussianRational
from crl.poly import exponents

EXACT = "exact"
NUMERIC = "numeric"
DEFAULT_TOL = 1e-9


def _glex_key(v: tuple[int, ...]):
    return (sum(v), v)


@dataclass(frozen=True)
class Dunomial:
    """x^alpha + sign * x^beta = 0, sign in {+1, -1}."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    sign: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        if len(self.alpha) != len(self.beta):
            raise ValueError("exponent vectors differ in length")
        if self.alpha == self.beta:
            raise ValueError("alpha and beta must differ")
        if min(self.alpha + self.beta) < 0:
            raise ValueError("exponents must be non-negative")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def d(self) -> int:
        return len(self.alpha)

    @property
    def order(self) -> int:
        return sum(abs(a - b) for a, b in zip(self.alpha, self.beta))

    @property
    def degree(self) -> int:
        return max(sum(self.alpha), sum(self.beta))

    @property
    def delta(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.alpha, self.beta))

    def is_reduced(self) -> bool:
        return all(min(a, b) == 0 for a, b in zip(self.alpha, self.beta))

    def reduce(self) -> Dunomial:
        """Cancel the common monomial factor; zero set on the torus is unchanged."""
        m = [min(a, b) for a, b in zip(self.alpha, self.beta)]
        return Dunomial(
            tuple(a - c for a, c in zip(self.alpha, m)),
            tuple(b - c for b, c in zip(self.beta, m)),
            self.sign,
        )

    def canonical(self) -> Dunomial:
        """Representative with alpha >= beta in graded-lex order.

        Swapping sides keeps the relation when sign is -1 and also when sign is
        +1, since x^a + x^b = 0 is symmetric.
        """
        if _glex_key(self.alpha) >= _glex_key(self.beta):
            return self
        return Dunomial(self.beta, self.alpha, self.sign)

    def evaluate(self, x: Sequence[complex]) -> complex:
        return _mono(x, self.alpha) + self.sign * _mono(x, self.beta)

    def vanishes_at(self, x, mode: str = EXACT, tol: float = DEFAULT_TOL) -> bool:
        if mode == EXACT:
            pt = _exact_point(x)
            return _exact_mono(pt, self.alpha) + self.sign * _exact_mono(pt, self.beta) == 0
        la, ta = _log_mono(x, self.alpha)
        lb, tb = _log_mono(x, self.beta)
        return _pair_vanishes(la, ta, lb, tb, self.sign, tol)

    def __str__(self):
        def mono(e):
            parts = [f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
            return "*".join(parts) if parts else "1"

        op = "+" if self.sign > 0 else "-"
        return f"{mono(self.alpha)} {op} {mono(self.beta)}"

    def to_dict(self) -> dict:
        return {"alpha": list(self.alpha), "beta": list(self.beta), "sign": "+" if self.sign > 0 else "-",
                "order": self.order, "degree": self.degree, "text": str(self)}


def from_delta(delta: Sequence[int], sign: int) -> Dunomial:
    """The reduced dunomial with alpha = delta+ and beta = delta-."""
    alpha = tuple(max(v, 0) for v in delta)
    beta = tuple(max(-v, 0) for v in delta)
    return Dunomial(alpha, beta, sign)


# -- enumeration ----------------------------------------------------------

def enumerate_dunomials(d: int, n: int) -> Iterator[Dunomial]:
    """All dunomials with |alpha|, |beta| <= n, one per unordered pair and sign."""
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    exps = exponents(d, n)
    for j in range(len(exps)):
        for i in range(j):
            for s in (-1, 1):
                yield Dunomial(exps[j], exps[i], s)


def count_dunomials(d: int, n: int) -> int:
    m = math.comb(n + d, d)
    return 2 * math.comb(m, 2)


def deltas_of_norm(d: int, r: int) -> Iterator[tuple[int, ...]]:
    """Every integer vector of length d with l1 norm exactly r."""
    if d == 1:
        if r == 0:
            yield (0,)
        else:
            yield (r,)
            yield (-r,)
        return
    for k in range(-r, r + 1):
        for rest in deltas_of_norm(d - 1, r - abs(k)):
            yield (k,) + rest


def _half_deltas(d: int, r: int) -> Iterator[tuple[int, ...]]:
    """One of delta, -delta for every delta with |delta|_1 = r >= 1."""
    for delta in deltas_of_norm(d, r):
        alpha = tuple(max(v, 0) for v in delta)
        beta = tuple(max(-v, 0) for v in delta)
        if _glex_key(alpha) > _glex_key(beta):
            yield delta


def enumerate_reduced_by_order(d: int, r: int) -> list[Dunomial]:
    """Reduced dunomials of order exactly r, canonical under the side swap."""
    if d < 1 or r < 1:
        raise ValueError("need d >= 1 and r >= 1")
    return [from_delta(delta, s) for delta in _half_deltas(d, r) for s in (-1, 1)]


# -- points ---------------------------------------------------------------

def parse_coordinate(text: str):
    """Exact Gaussian rational if possible (``2``, ``1/2``, ``0.5``, ``1+2i``), else complex."""
    try:
        return GaussianRational.parse(text)
    except (ValueError, ZeroDivisionError):
        return complex(text.replace("i", "j"))


def parse_point(text: str) -> list:
    return [parse_coordinate(t) for t in text.split(",") if t.strip()]


def is_exact_point(x) -> bool:
    return all(isinstance(v, (int, Fraction, GaussianRational)) for v in x)


def _exact_point(x) -> list[GaussianRational]:
    if not is_exact_point(x):
        raise ValueError("exact mode needs rational or Gaussian-rational coordinates")
    return [v if isinstance(v, GaussianRational) else GaussianRational(v) for v in x]


def _check_nonzero(x):
    for i, v in enumerate(x):
        if v == 0:
            raise ValueError(f"coordinate {i} is zero")


def _mono(x, e):
    out = 1
    for v, k in zip(x, e):
        if k:
            out = out * v ** k
    return out


def _logs(x) -> tuple[np.ndarray, np.ndarray]:
    z = np.array([complex(v) for v in x], dtype=complex)
    return np.log(np.abs(z)), np.angle(z)


def _log_mono(x, e) -> tuple[float, float]:
    lr, th = _logs(x)
    e = np.asarray(e, dtype=float)
    return float(e @ lr), float(e @ th)


def _pair_vanishes(la, ta, lb, tb, sign, tol) -> bool:
    # |x^a + s x^b| <= tol * max(|x^a|, |x^b|), scaled by the larger modulus
    dl = lb - la
    if abs(dl) > 1.0:
        return False
    ratio = np.exp(dl + 1j * (tb - ta))
    return bool(abs(1.0 + sign * ratio) <= tol * max(1.0, abs(ratio)))


def _power_sign(x, delta, mode: str, tol: float) -> int:
    """+1 or -1 when x^delta equals it (exactly or within tol), else 0."""
    if mode == EXACT:
        v = _exact_mono(x, delta)
        if v == 1:
            return 1
        if v == -1:
            return -1
        return 0
    lr, th = _logs(x)
    dv = np.asarray(delta, dtype=float)
    lmod = float(dv @ lr)
    if abs(lmod) > 1.0:
        return 0
    val = np.exp(lmod + 1j * float(dv @ th))
    scale = max(1.0, abs(val))
    if abs(val - 1.0) <= tol * scale:
        return 1
    if abs(val + 1.0) <= tol * scale:
        return -1
    return 0


def _exact_mono(x, delta):
    out = GaussianRational(1)
    for v, k in zip(x, delta):
        if k:
            out = out * v ** k
    return out


# -- r(x) and counting ----------------------------------------------------

@dataclass(frozen=True)
class OrderResult:
    """Minimal order of a dunomial vanishing at a point.

    ``value`` is None when nothing was found within the cap. In that case
    ``infinite`` tells whether no relation of any degree exists (proved by a
    full-rank valuation matrix), and ``lower_bound`` is what the search
    certifies otherwise.
    """

    value: int | None
    witness: Dunomial | None
    cap: int
    infinite: bool = False
    lower_bound: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        return {
            "r": self.value if self.value is not None else "Infinity",
            "cap": self.cap,
            "proven_infinite": self.infinite,
            "lower_bound": self.lower_bound,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def r_of_x(x, n_cap: int, mode: str = EXACT, tol: float = DEFAULT_TOL) -> OrderResult:
    """Minimal order among dunomials of degree <= n_cap vanishing at x."""
    _check_nonzero(x)
    if n_cap < 1:
        raise ValueError("cap must be positive")
    if mode == EXACT:
        x = _exact_point(x)
    d = len(x)
    for r in range(1, 2 * n_cap + 1):
        for delta in _half_deltas(d, r):
            pos = sum(v for v in delta if v > 0)
            if pos > n_cap or r - pos > n_cap:
                continue
            s = _power_sign(x, delta, mode, tol)
            if s:
                return OrderResult(r, from_delta(delta, -s), n_cap)
    if mode == EXACT and valuation_rank(x) == d:
        return OrderResult(None, None, n_cap, infinite=True)
    # every reduced relation of order <= cap has degree <= cap
    return OrderResult(None, None, n_cap, infinite=False, lower_bound=n_cap + 1)


def valuation_rank(x) -> int:
    """Rank of the prime-valuation matrix of the norms |x_i|^2.

    Full rank means no nonzero delta has |x^delta| = 1, so x satisfies no
    dunomial of any degree.
    """
    import sympy

    norms = [_exact_point([v])[0].norm() for v in x]
    primes: set[int] = set()
    for q in norms:
        primes |= set(sympy.factorint(q.numerator)) | set(sympy.factorint(q.denominator))
    primes.discard(1)
    if not primes:
        return 0
    rows = []
    for p in sorted(primes):
        rows.append([sympy.multiplicity(p, q.numerator) - sympy.multiplicity(p, q.denominator) for q in norms])
    return sympy.Matrix(rows).rank()


def count_satisfied(x, n: int, mode: str = EXACT, tol: float = DEFAULT_TOL) -> int:
    """Number of dunomials of degree <= n (unordered pair, sign) vanishing at x."""
    _check_nonzero(x)
    exps = exponents(len(x), n)
    if mode == EXACT:
        pt = _exact_point(x)
        vals = Counter(_exact_mono(pt, e) for e in exps)
        same = sum(c * (c - 1) // 2 for c in vals.values())
        opposite = 0
        for v, c in vals.items():
            if (v.re, v.im) > (0, 0):
                opposite += c * vals.get(-v, 0)
        return same + opposite
    lr, th = _logs(x)
    e = np.array(exps, dtype=float)
    lm = e @ lr
    tm = e @ th
    iu, ju = np.triu_indices(len(exps), k=1)
    dl = lm[ju] - lm[iu]
    near = np.abs(dl) <= 1.0
    iu, ju, dl = iu[near], ju[near], dl[near]
    ratio = np.exp(dl + 1j * (tm[ju] - tm[iu]))
    scale = tol * np.maximum(1.0, np.abs(ratio))
    hits = (np.abs(1.0 - ratio) <= scale).sum() + (np.abs(1.0 + ratio) <= scale).sum()
    return int(hits)


def count_satisfied_pairwise(x, n: int) -> int:
    """Reference count by checking every dunomial exactly, one at a time."""
    _check_nonzero(x)
    pt = _exact_point(x)
    exps = exponents(len(pt), n)
    vals = [_exact_mono(pt, e) for e in exps]
    total = 0
    for j in range(len(exps)):
        for i in range(j):
            for s in (-1, 1):
                if vals[j] + s * vals[i] == 0:
                    total += 1
    return total


def lemma_constant(x, n: int, cap: int | None = None) -> float:
    """count * r^d / n^(2d) for one exact point; 0 when no relation exists."""
    d = len(x)
    count = count_satisfied(x, n)
    if count == 0:
        return 0.0
    res = r_of_x(x, cap or n)
    assert res.value is not None
    return count * res.value ** d / n ** (2 * d)
