"""Exact Littlewood-Offord atoms: P(sum eps_i xi_i = 0) for Rademacher signs.

Three entry modes are supported, all with decidable equality:

* ``integer``: Python ints;
* ``gaussian``: :class:`~crl.exact.GaussianRational`;
* ``numberfield``: residues in Q[x]/(modulus), as tuples of Fractions.

Nothing in this module touches floating point except the reported ratios.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from crl.exact import GaussianRational, QuotientRing

INTEGER = "integer"
GAUSSIAN = "gaussian"
NUMBERFIELD = "numberfield"

ENUMERATION_LIMIT = 30


@dataclass(frozen=True)
class AtomVector:
    entries: tuple
    mode: str = INTEGER
    ring: QuotientRing | None = None

    def __post_init__(self):
        if len(self.entries) < 1:
            raise ValueError("need at least one entry")
        if self.mode == INTEGER:
            object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        elif self.mode == GAUSSIAN:
            object.__setattr__(
                self, "entries",
                tuple(v if isinstance(v, GaussianRational) else GaussianRational(v) for v in self.entries),
            )
        elif self.mode == NUMBERFIELD:
            if self.ring is None:
                raise ValueError("numberfield mode needs a modulus")
            object.__setattr__(self, "entries", tuple(self.ring.reduce(v) for v in self.entries))
        else:
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def integers(cls, values: Sequence[int]) -> AtomVector:
        return cls(tuple(values), INTEGER)

    @classmethod
    def gaussian(cls, values) -> AtomVector:
        return cls(tuple(values), GAUSSIAN)

    @classmethod
    def number_field(cls, modulus, residues) -> AtomVector:
        return cls(tuple(residues), NUMBERFIELD, QuotientRing(modulus))

    @property
    def m(self) -> int:
        return len(self.entries)

    def zero(self):
        if self.mode == INTEGER:
            return 0
        if self.mode == GAUSSIAN:
            return GaussianRational(0)
        return self.ring.zero()

    def add(self, a, b):
        if self.mode == NUMBERFIELD:
            return self.ring.add(a, b)
        return a + b

    def neg(self, a):
        if self.mode == NUMBERFIELD:
            return self.ring.neg(a)
        return -a

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def pm_key(self, a):
        """Key shared by a and -a, used to count couples."""
        if self.mode == INTEGER:
            return abs(a)
        if self.mode == GAUSSIAN:
            return min(a.key(), (-a).key())
        return min(a, self.ring.neg(a))

    def scaled(self, c) -> AtomVector:
        """Multiply every entry by an exact scalar of the same mode."""
        if self.mode == NUMBERFIELD:
            c = self.ring.reduce(c) if not isinstance(c, tuple) else c
            return AtomVector(tuple(self.ring.mul(c, v) for v in self.entries), NUMBERFIELD, self.ring)
        return AtomVector(tuple(c * v for v in self.entries), self.mode, self.ring)

    @property
    def reducible_modulus(self) -> bool:
        if self.mode != NUMBERFIELD:
            return False
        import sympy

        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(self.ring.modulus)), x, domain="QQ")
        return not poly.is_irreducible


@dataclass(frozen=True)
class AtomResult:
    probability: Fraction
    zero_count: int
    m: int
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        assert self.probability == Fraction(self.zero_count, 2 ** self.m)


def _half_sums(xi: AtomVector, entries) -> list:
    sums = [xi.zero()]
    for v in entries:
        nv = xi.neg(v)
        sums = [xi.add(s, v) for s in sums] + [xi.add(s, nv) for s in sums]
    return sums


def atom_probability(xi: AtomVector, method: str = "dp") -> AtomResult:
    """Exact probability that a random signed sum of the entries vanishes.

    ``method="enumerate"`` lists the sign patterns of each half of the vector
    and matches opposite sums (m <= 30). ``method="dp"`` propagates the exact
    distribution of partial sums; its cost is the number of distinct sums.
    """
    m = xi.m
    if method == "enumerate":
        if m > ENUMERATION_LIMIT:
            raise ValueError(f"enumeration is limited to m <= {ENUMERATION_LIMIT}")
        h = m // 2
        left = Counter(_half_sums(xi, xi.entries[:h]))
        count = 0
        for s in _half_sums(xi, xi.entries[h:]):
            count += left.get(xi.neg(s), 0)
    elif method == "dp":
        dist = {xi.zero(): 1}
        for v in xi.entries:
            nv = xi.neg(v)
            nxt: dict = {}
            for s, c in dist.items():
                for t in (xi.add(s, v), xi.add(s, nv)):
                    nxt[t] = nxt.get(t, 0) + c
            dist = nxt
        count = dist.get(xi.zero(), 0)
    else:
        raise ValueError(f"unknown method {method!r}")
    warnings = ("reducible modulus",) if xi.reducible_modulus else ()
    return AtomResult(Fraction(count, 2 ** m), count, m, warnings)


def walk_return_prob(m: int) -> Fraction:
    """P(a simple random walk is back at 0 after m steps)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m % 2:
        return Fraction(0)
    return Fraction(math.comb(m, m // 2), 2 ** m)


def central_binomial_bound(m: int) -> Fraction:
    """C(m, floor(m/2)) / 2**m, the sharp Erdos bound for nonzero entries."""
    return Fraction(math.comb(m, m // 2), 2 ** m)


def couples_count(xi: AtomVector) -> int:
    """Ordered pairs (j, k), j == k allowed, with xi_j = +xi_k or xi_j = -xi_k."""
    classes = Counter(xi.pm_key(v) for v in xi.entries)
    return sum(c * c for c in classes.values())


def power_vector(x_minpoly, m: int) -> AtomVector:
    """(1, x, ..., x^(m-1)) in Q[x]/(x_minpoly)."""
    ring = QuotientRing(x_minpoly)
    return AtomVector(tuple(ring.powers(m)), NUMBERFIELD, ring)


def all_distinct(xi: AtomVector) -> bool:
    return len(set(xi.entries)) == xi.m


def all_nonzero(xi: AtomVector) -> bool:
    return not any(xi.is_zero(v) for v in xi.entries)


@dataclass(frozen=True)
class BoundReport:
    prob: Fraction
    m: int
    couples: int
    erdos_ratio: float
    erdos_sharp_ratio: float | None
    ss_ratio: float | None
    halasz_ratio: float

    def to_dict(self) -> dict:
        return {
            "prob": f"{self.prob.numerator}/{self.prob.denominator}",
            "prob_float": float(self.prob),
            "m": self.m,
            "couples": self.couples,
            "erdos_ratio": self.erdos_ratio,
            "erdos_sharp_ratio": self.erdos_sharp_ratio,
            "ss_ratio": self.ss_ratio,
            "halasz_ratio": self.halasz_ratio,
        }


def bound_report(xi: AtomVector, method: str = "dp") -> BoundReport:
    """Atom probability scaled by the Erdos, Sarkozy-Szemeredi and Halasz rates.

    The Halasz rate is taken as R * m**(-5/2) with R the couples count.
    ``erdos_sharp_ratio`` divides by the central binomial bound and is only
    reported when every entry is nonzero; ``ss_ratio`` only when entries are
    pairwise distinct.
    """
    res = atom_probability(xi, method)
    p = res.probability
    m = xi.m
    r = couples_count(xi)
    pf = float(p)
    return BoundReport(
        prob=p,
        m=m,
        couples=r,
        erdos_ratio=pf * math.sqrt(m),
        erdos_sharp_ratio=float(p / central_binomial_bound(m)) if all_nonzero(xi) else None,
        ss_ratio=pf * m ** 1.5 if all_distinct(xi) else None,
        halasz_ratio=pf * m ** 2.5 / r,
    )


# -- vector files ---------------------------------------------------------

def parse_vector_file(text: str) -> AtomVector:
    """Parse the ``lo`` input format.

    First non-comment line: ``mode integer``, ``mode gaussian`` or
    ``mode numberfield c0 c1 ... ck`` (modulus coefficients, lowest first).
    Then one entry per line: an integer, a Gaussian rational such as
    ``1/2-3i``, or residue coefficients ``r0 r1 ...``. In numberfield mode a
    single line ``powers M`` expands to (1, x, ..., x^(M-1)).
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("mode"):
        raise ValueError("vector file must start with a 'mode' line")
    head = lines[0].split()
    mode = head[1] if len(head) > 1 else ""
    body = lines[1:]
    if mode == INTEGER:
        return AtomVector.integers([int(t) for t in body])
    if mode == GAUSSIAN:
        return AtomVector.gaussian([GaussianRational.parse(t) for t in body])
    if mode == NUMBERFIELD:
        modulus = [Fraction(t) for t in head[2:]]
        if len(body) == 1 and body[0].startswith("powers"):
            return power_vector(modulus, int(body[0].split()[1]))
        return AtomVector.number_field(modulus, [[Fraction(t) for t in ln.split()] for ln in body])
    raise ValueError(f"unknown mode {mode!r}")
