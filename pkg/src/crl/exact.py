"""Exact scalars: Gaussian rationals and residues in Q[x]/(modulus)."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class GaussianRational:
    """re + im*i with Fraction parts. Hashable, with a total order on (re, im)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Accepts ``a``, ``a/b``, ``a+bi``, ``a/b-c/di``, ``i``, ``-2i``."""
        t = text.strip().replace(" ", "").replace("j", "i")
        if not t.endswith("i"):
            return cls(Fraction(t))
        body = t[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        # a sign right after '/' or an exponent marker belongs to the number
        while cut > 0 and body[cut - 1] in "/eE":
            cut = max(body.rfind("+", 0, cut), body.rfind("-", 0, cut))
        if cut <= 0:
            re_s, im_s = "0", body
        else:
            re_s, im_s = body[:cut], body[cut:]
        if im_s in ("", "+"):
            im_s = "1"
        elif im_s == "-":
            im_s = "-1"
        return cls(Fraction(re_s), Fraction(im_s))

    def __add__(self, o):
        o = _gq(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_gq(o))

    def __rsub__(self, o):
        return _gq(o) - self

    def __mul__(self, o):
        o = _gq(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * _gq(o).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = GaussianRational(o)
        return isinstance(o, GaussianRational) and self.re == o.re and self.im == o.im

    def __lt__(self, o):
        return (self.re, self.im) < (o.re, o.im)

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def key(self):
        return (self.re, self.im)

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _gq(v) -> GaussianRational:
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (int, Fraction)):
        return GaussianRational(v)
    raise TypeError(f"cannot use {type(v).__name__} as a Gaussian rational")


class QuotientRing:
    """Q[x]/(modulus) with elements as tuples of Fractions of length deg(modulus).

    ``modulus`` is an integer coefficient sequence, lowest degree first.
    """

    def __init__(self, modulus):
        m = [Fraction(c) for c in modulus]
        while m and m[-1] == 0:
            m.pop()
        if len(m) < 2:
            raise ValueError("modulus must be nonconstant")
        self.modulus = tuple(m)
        lc = m[-1]
        self._monic = tuple(c / lc for c in m)
        self.dim = len(m) - 1

    def reduce(self, coeffs) -> tuple[Fraction, ...]:
        c = [Fraction(v) for v in coeffs]
        mon = self._monic
        k = self.dim
        for top in range(len(c) - 1, k - 1, -1):
            t = c[top]
            if t:
                for i in range(k + 1):
                    c[top - k + i] -= t * mon[i]
        c = c[:k] + [Fraction(0)] * max(0, k - len(c))
        return tuple(c)

    def zero(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * self.dim

    def one(self) -> tuple[Fraction, ...]:
        return self.reduce([1])

    def gen(self) -> tuple[Fraction, ...]:
        return self.reduce([0, 1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self.reduce(prod)

    def powers(self, m: int) -> list[tuple[Fraction, ...]]:
        """(1, x, ..., x^(m-1)) reduced."""
        out = []
        cur = self.one()
        g = self.gen()
        for _ in range(m):
            out.append(cur)
            cur = self.mul(cur, g)
        return out

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self._monic == other._monic

    def __hash__(self):
        return hash(self._monic)

    def __repr__(self):
        return f"QuotientRing({list(self.modulus)})"
