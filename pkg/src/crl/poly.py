"""Bernoulli polynomials: representation, sampling and evaluation.

Coefficients are i.i.d. uniform signs. A univariate polynomial of degree n has
n + 1 coefficients eps_0..eps_n (index i multiplies x**i). A d-variate
polynomial of degree n carries one sign per exponent vector j with
|j|_1 <= n, stored in ascending graded-lex order: by total degree first, then
by the exponent tuple compared lexicographically.

Randomness comes from a counter-based generator. Each ``Seed`` maps to the
Philox-4x64-10 key ``(master, stream_index)`` with counter zero; the raw
64-bit words are read little-endian, bit i of the stream decides coefficient
i (bit 0 -> +1, bit 1 -> -1). A trial that needs several polynomials draws
them consecutively from the same stream.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

_U64 = 1 << 64


@dataclass(frozen=True)
class Seed:
    master: int
    stream_index: int = 0

    def __post_init__(self):
        for name in ("master", "stream_index"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= int(v) < _U64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {v!r}")


def sign_stream(seed: Seed, count: int) -> np.ndarray:
    """First ``count`` signs of the stream keyed by ``seed`` as an int8 array."""
    if count == 0:
        return np.zeros(0, dtype=np.int8)
    words = np.random.Philox(key=[int(seed.master), int(seed.stream_index)]).random_raw(
        (count + 63) // 64
    )
    bits = np.unpackbits(words.astype("<u8").view(np.uint8), bitorder="little")[:count]
    return (1 - 2 * bits.astype(np.int8)).astype(np.int8)


def sign_batch(master: int, start: int, count: int, width: int) -> np.ndarray:
    """Signs for trials ``start .. start+count-1``, one row of ``width`` per trial."""
    nwords = (width + 63) // 64
    words = np.empty((count, nwords), dtype=np.uint64)
    for k in range(count):
        words[k] = np.random.Philox(key=[master, start + k]).random_raw(nwords)
    bits = np.unpackbits(words.astype("<u8").view(np.uint8), axis=1, bitorder="little")
    return (1 - 2 * bits[:, :width].astype(np.int8)).astype(np.int8)


@lru_cache(maxsize=None)
def exponents(d: int, n: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of d variables with total degree <= n, graded-lex ascending."""
    if d < 1:
        raise ValueError("d must be >= 1")
    out: list[tuple[int, ...]] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining + 1):
            rec(prefix + (a,), remaining - a, slots - 1)

    for total in range(n + 1):
        rec((), total, d)
    out.sort(key=lambda j: (sum(j), j))
    return tuple(out)


def n_coefficients(d: int, n: int) -> int:
    return math.comb(n + d, d)


def _check_signs(coeffs) -> tuple[int, ...]:
    out = tuple(int(c) for c in coeffs)
    if any(c not in (1, -1) for c in out):
        raise ValueError("coefficients must be +1 or -1")
    return out


@dataclass(frozen=True)
class BernoulliPolyUni:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _check_signs(self.coeffs))
        if not self.coeffs:
            raise ValueError("a polynomial of degree n has n + 1 coefficients")

    @property
    def degree_n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def d(self) -> int:
        return 1

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __neg__(self) -> BernoulliPolyUni:
        return BernoulliPolyUni(tuple(-c for c in self.coeffs))

    def __str__(self) -> str:
        return to_sign_string(self)


@dataclass(frozen=True)
class BernoulliPolyMulti:
    d: int
    degree_n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.degree_n < 0:
            raise ValueError("degree must be non-negative")
        object.__setattr__(self, "coeffs", _check_signs(self.coeffs))
        if len(self.coeffs) != n_coefficients(self.d, self.degree_n):
            raise ValueError(
                f"expected {n_coefficients(self.d, self.degree_n)} coefficients, got {len(self.coeffs)}"
            )

    @property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return exponents(self.d, self.degree_n)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(zip(self.exponents, self.coeffs))

    def coeff(self, j: Sequence[int]) -> int:
        j = tuple(j)
        if len(j) != self.d or min(j) < 0 or sum(j) > self.degree_n:
            return 0
        return self.as_dict()[j]

    def __neg__(self) -> BernoulliPolyMulti:
        return BernoulliPolyMulti(self.d, self.degree_n, tuple(-c for c in self.coeffs))


@dataclass(frozen=True)
class ComplexPoint:
    coords: tuple[complex, ...]

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.coords)
        if not all(cmath.isfinite(c) for c in coords):
            raise ValueError("coordinates must be finite")
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def sample_uni(n: int, seed: Seed) -> BernoulliPolyUni:
    if n < 0:
        raise ValueError("n must be non-negative")
    return BernoulliPolyUni(tuple(sign_stream(seed, n + 1).tolist()))


def sample_multi(d: int, n: int, seed: Seed) -> BernoulliPolyMulti:
    if d < 1:
        raise ValueError("d must be >= 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    return BernoulliPolyMulti(d, n, tuple(sign_stream(seed, n_coefficients(d, n)).tolist()))


def sample_system(d: int, n: int, ell: int, seed: Seed) -> list:
    """``ell`` independent polynomials drawn consecutively from one stream.

    The first member equals ``sample_uni``/``sample_multi`` for the same seed.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    m = n_coefficients(d, n)
    signs = sign_stream(seed, ell * m).tolist()
    chunks = [tuple(signs[k * m:(k + 1) * m]) for k in range(ell)]
    if d == 1:
        return [BernoulliPolyUni(c) for c in chunks]
    return [BernoulliPolyMulti(d, n, c) for c in chunks]


def _coords(x, d: int) -> tuple[complex, ...]:
    if isinstance(x, ComplexPoint):
        coords = x.coords
    elif isinstance(x, (int, float, complex, np.number)):
        coords = (complex(x),)
    else:
        coords = tuple(complex(c) for c in x)
    if len(coords) != d:
        raise ValueError(f"point has dimension {len(coords)}, polynomial has {d} variables")
    return coords


def evaluate(p, x) -> complex:
    """Evaluate p at a complex point in double precision."""
    if isinstance(p, BernoulliPolyUni):
        (z,) = _coords(x, 1)
        acc = 0j
        for c in reversed(p.coeffs):
            acc = acc * z + c
        return acc
    coords = _coords(x, p.d)
    acc = 0j
    for j, c in zip(p.exponents, p.coeffs):
        term = complex(c)
        for xi, e in zip(coords, j):
            if e:
                term *= xi ** e
        acc += term
    return acc


def eval_at_pm1(p: BernoulliPolyUni) -> tuple[int, int]:
    """Exact (P(1), P(-1))."""
    c = p.coeffs
    return sum(c), sum(c[0::2]) - sum(c[1::2])


# -- canonical text forms ----------------------------------------------------

def to_sign_string(p: BernoulliPolyUni) -> str:
    return "".join("+" if c > 0 else "-" for c in p.coeffs)


def from_sign_string(s: str) -> BernoulliPolyUni:
    s = s.strip()
    if not s or any(ch not in "+-" for ch in s):
        raise ValueError(f"not a sign string: {s!r}")
    return BernoulliPolyUni(tuple(1 if ch == "+" else -1 for ch in s))


def to_text(p) -> str:
    """``d n`` header, then one ``j1,...,jd sign`` line per exponent in graded-lex order."""
    if isinstance(p, BernoulliPolyUni):
        p = BernoulliPolyMulti(1, p.degree_n, p.coeffs)
    lines = [f"{p.d} {p.degree_n}"]
    for j, c in zip(p.exponents, p.coeffs):
        lines.append(",".join(map(str, j)) + (" +" if c > 0 else " -"))
    return "\n".join(lines) + "\n"


def from_text(text: str):
    rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    d, n = int(rows[0][0]), int(rows[0][1])
    expected = exponents(d, n)
    if len(rows) - 1 != len(expected):
        raise ValueError("coefficient count does not match header")
    coeffs = []
    for (exp_s, sign), j in zip(rows[1:], expected):
        if tuple(int(t) for t in exp_s.split(",")) != j:
            raise ValueError(f"exponent {exp_s} out of canonical order")
        if sign not in ("+", "-"):
            raise ValueError(f"bad sign {sign!r}")
        coeffs.append(1 if sign == "+" else -1)
    if d == 1:
        return BernoulliPolyUni(tuple(coeffs))
    return BernoulliPolyMulti(d, n, tuple(coeffs))

