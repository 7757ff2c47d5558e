"""Dense univariate polynomials with arbitrary-precision integer coefficients."""

from __future__ import annotations

import math
from functools import reduce
from typing import Iterable


class IntPoly:
    """Immutable integer polynomial, ``coeffs[i]`` multiplies ``x**i``.

    Trailing zeros are stripped so the leading coefficient is nonzero; the
    zero polynomial has an empty coefficient tuple. Content is never divided
    out implicitly.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Inverse of ``str``: space-separated integers, lowest degree first."""
        return cls(int(t) for t in text.split())

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive_part(self) -> IntPoly:
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly(v // c for v in self.coeffs)

    def normalized(self) -> IntPoly:
        """Same polynomial with positive leading coefficient."""
        return -self if self.lc < 0 else self

    def is_monic(self) -> bool:
        return self.lc == 1

    def norm2_ceil(self) -> int:
        """Ceiling of the Euclidean norm of the coefficient vector."""
        s = sum(v * v for v in self.coeffs)
        r = math.isqrt(s)
        return r if r * r == s else r + 1

    def max_norm(self) -> int:
        return max((abs(v) for v in self.coeffs), default=0)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-v for v in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: int) -> IntPoly:
        return IntPoly(c * v for v in self.coeffs)

    def exact_div_scalar(self, c: int) -> IntPoly:
        q = []
        for v in self.coeffs:
            if v % c:
                raise ArithmeticError(f"{c} does not divide {self}")
            q.append(v // c)
        return IntPoly(q)

    def divmod_exact(self, divisor: IntPoly):
        """Quotient if ``divisor`` divides ``self`` in Z[x], else None."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return IntPoly()
        db = divisor.degree
        if self.degree < db:
            return None
        rem = list(self.coeffs)
        lc = divisor.lc
        b = divisor.coeffs
        q = [0] * (self.degree - db + 1)
        for k in range(self.degree - db, -1, -1):
            top = rem[k + db]
            if top == 0:
                continue
            if top % lc:
                return None
            t = top // lc
            q[k] = t
            for i in range(db + 1):
                rem[k + i] -= t * b[i]
        if any(rem[:db]):
            return None
        return IntPoly(q)

    def divides(self, other: IntPoly) -> bool:
        return other.divmod_exact(self) is not None

    def pseudo_rem(self, divisor: IntPoly) -> IntPoly:
        """lc(divisor)**(deg self - deg divisor + 1) * self mod divisor."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        db = divisor.degree
        if self.degree < db:
            return self
        rem = list(self.coeffs)
        lc = divisor.lc
        b = divisor.coeffs
        for k in range(self.degree, db - 1, -1):
            top = rem[k]
            rem = [lc * v for v in rem]
            if top:
                for i in range(db + 1):
                    rem[k - db + i] -= top * b[i]
        return IntPoly(rem[:db])

    def derivative(self) -> IntPoly:
        return IntPoly(i * v for i, v in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0
        for v in reversed(self.coeffs):
            acc = acc * x + v
        return acc

    def compose_neg(self) -> IntPoly:
        """p(-x)."""
        return IntPoly(v if i % 2 == 0 else -v for i, v in enumerate(self.coeffs))

    # -- protocol ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __str__(self):
        return " ".join(map(str, self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _lift(v) -> IntPoly:
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly([v])
    return NotImplemented


X = IntPoly([0, 1])
