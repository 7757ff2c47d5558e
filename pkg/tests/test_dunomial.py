import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from crl.dunomial import (
    EXACT,
    NUMERIC,
    Dunomial,
    count_dunomials,
    count_satisfied,
    count_satisfied_pairwise,
    enumerate_dunomials,
    enumerate_reduced_by_order,
    from_delta,
    lemma_constant,
    parse_point,
    r_of_x,
)
from crl.exact import GaussianRational as G

RNG = np.random.Generator(np.random.Philox(key=[11, 0]))


def random_dunomial(rng, d=3, top=6):
    while True:
        a = tuple(int(v) for v in rng.integers(0, top, d))
        b = tuple(int(v) for v in rng.integers(0, top, d))
        if a != b:
            return Dunomial(a, b, int(rng.choice([-1, 1])))


def test_order_examples():
    assert Dunomial((1, 0), (0, 1), -1).order == 2
    assert Dunomial((3, 2), (1, 2), 1).order == 2
    assert Dunomial((1, 0), (0, 1), -1).degree == 1


def test_invalid_dunomials():
    with pytest.raises(ValueError):
        Dunomial((1, 1), (1, 1), 1)
    with pytest.raises(ValueError):
        Dunomial((1,), (0,), 0)
    with pytest.raises(ValueError):
        Dunomial((1, 0), (0,), 1)


def test_reduce_examples():
    r = Dunomial((2, 1), (1, 1), -1).reduce()
    assert (r.alpha, r.beta, r.sign) == ((1, 0), (0, 0), -1)
    assert str(r) == "x1 - 1"
    assert r.reduce() == r


def test_reduce_preserves_order():
    for _ in range(1000):
        D = random_dunomial(RNG)
        R = D.reduce()
        assert R.is_reduced() and R.order == D.order


def test_reduce_preserves_zero_set():
    for _ in range(40):
        D = random_dunomial(RNG)
        R = D.reduce()
        # points on the zero set of R: solve for the first coordinate that R involves
        i = next(k for k, v in enumerate(R.delta) if v)
        for _ in range(100):
            x = [cmath.rect(float(RNG.uniform(0.5, 1.5)), float(RNG.uniform(0, 6.3))) for _ in range(D.d)]
            # random point: both vanish or neither does
            assert D.vanishes_at(x, NUMERIC) == R.vanishes_at(x, NUMERIC)
            # point forced onto the zero set of R
            rest = complex(1)
            for k, v in enumerate(R.delta):
                if k != i:
                    rest *= x[k] ** v
            root = (-R.sign / rest) ** (1 / R.delta[i]) if R.delta[i] > 0 else (-R.sign * rest) ** (1 / -R.delta[i])
            x[i] = root
            assert R.vanishes_at(x, NUMERIC, tol=1e-9)
            assert D.vanishes_at(x, NUMERIC, tol=1e-9)


def test_enumerate_counts():
    assert len(list(enumerate_dunomials(1, 2))) == 6 == count_dunomials(1, 2)
    assert len(list(enumerate_dunomials(2, 2))) == 30 == count_dunomials(2, 2)
    assert len(list(enumerate_dunomials(2, 5))) == count_dunomials(2, 5)
    assert all(D.canonical() == D for D in enumerate_dunomials(2, 4))


def test_enumeration_growth():
    ratios = [count_dunomials(2, 2 * n) / count_dunomials(2, n) for n in (10, 100, 1000, 10000)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert abs(ratios[-1] - 16) < 0.01


def test_reduced_by_order():
    assert len(enumerate_reduced_by_order(1, 1)) == 2
    for r in range(1, 41):
        items = enumerate_reduced_by_order(2, r)
        assert len(items) == 4 * r
        assert all(D.is_reduced() and D.order == r for D in items)
        assert len({(D.canonical().alpha, D.canonical().beta, D.sign) for D in items}) == len(items)


def test_reduced_by_order_matches_filtered_enumeration():
    # reduced dunomials of order r all have degree <= r, so they appear in enumerate_dunomials(d, r)
    for d, r in [(1, 3), (2, 4), (3, 3)]:
        expected = {(D.alpha, D.beta, D.sign) for D in enumerate_dunomials(d, r) if D.is_reduced() and D.order == r}
        got = {(D.canonical().alpha, D.canonical().beta, D.sign) for D in enumerate_reduced_by_order(d, r)}
        assert got == expected


def test_r_of_x_examples():
    res = r_of_x([1, 1], 1)
    assert res.value == 1
    res = r_of_x([2, Fraction(1, 2)], 2)
    assert res.value == 2 and str(res.witness) == "x1*x2 - 1"
    for cap in (1, 5, 20):
        res = r_of_x([2], cap)
        assert res.value is None and res.infinite
        assert res.to_dict()["r"] == "Infinity"
    assert r_of_x([2, 3], 10).infinite


def test_r_of_x_unproven_infinity_is_a_lower_bound():
    # (3+4i)/5 has modulus 1 but is no root of unity: valuations cannot prove independence
    z = G(Fraction(3, 5), Fraction(4, 5))
    for cap in (1, 4, 9):
        res = r_of_x([z], cap)
        assert res.value is None and not res.infinite and res.lower_bound == cap + 1
    # i^2 + 1 = 0
    assert r_of_x([G(0, 1)], 3).value == 2
    assert r_of_x([G(0, 1)], 3).witness.sign == 1
    assert r_of_x([1j], 3, NUMERIC).value == 2


def test_r_of_x_rejects_zero():
    with pytest.raises(ValueError):
        r_of_x([0, 1], 3)
    with pytest.raises(ValueError):
        count_satisfied([1, 0], 3)


def test_r_of_x_monotone_in_cap():
    points = [[G(0, 1), 2], [Fraction(4), Fraction(1, 8)], [G(1, 1), G(0, 2)], [Fraction(-3), Fraction(9)]]
    for x in points:
        prev = math.inf
        for cap in range(1, 9):
            v = r_of_x(x, cap).value
            v = math.inf if v is None else v
            assert v <= prev
            prev = v


def test_r_of_x_numeric_matches_exact():
    for x in ([2, Fraction(1, 2)], [G(0, 1), 2], [Fraction(4), Fraction(1, 8)]):
        ex = r_of_x(x, 6)
        nu = r_of_x([complex(v.re, v.im) if isinstance(v, G) else complex(v) for v in x], 6, NUMERIC)
        assert ex.value == nu.value


def test_count_examples():
    assert count_satisfied([2, 3], 8) == 0
    assert count_satisfied([1, 1], 2) == 15
    assert count_satisfied([-1, G(0, 1)], 6) == 186


def random_exact_point(rng):
    pool = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-2), Fraction(4), Fraction(1, 4),
            G(0, 1), G(0, -1), Fraction(3), Fraction(8)]
    return [pool[int(k)] for k in rng.integers(0, len(pool), 2)]


def test_count_matches_oracles():
    rng = np.random.Generator(np.random.Philox(key=[5, 5]))
    for _ in range(50):
        x = random_exact_point(rng)
        n = int(rng.integers(1, 9))
        exact = count_satisfied(x, n, EXACT)
        assert exact == count_satisfied_pairwise(x, n)
        fx = [complex(v.re, v.im) if isinstance(v, G) else complex(v) for v in x]
        assert count_satisfied(fx, n, NUMERIC) == exact


def test_count_matches_vanishes_at_small():
    x = [G(0, 1), Fraction(-1)]
    assert count_satisfied(x, 3) == sum(D.vanishes_at(x) for D in enumerate_dunomials(2, 3))


def test_numeric_vanishing_survives_large_degree():
    # 4^600 overflows a double; the log-space comparison must still see x1^600 = x2^1200
    x = [4.0, 2.0]
    assert Dunomial((600, 0), (0, 1200), -1).vanishes_at(x, NUMERIC)
    assert not Dunomial((600, 0), (0, 1201), -1).vanishes_at(x, NUMERIC)
    assert not Dunomial((600, 0), (0, 1200), 1).vanishes_at(x, NUMERIC)
    assert r_of_x(x, 3, NUMERIC).value == 3


def test_lemma_constant_examples():
    assert lemma_constant([2, 3], 6) == 0.0
    # (1,1): every pair with sign - vanishes, r = 1
    n = 4
    m = math.comb(n + 2, 2)
    assert lemma_constant([1, 1], n) == pytest.approx(math.comb(m, 2) / n ** 4)


def test_from_delta_and_parse_point():
    D = from_delta((2, -1), 1)
    assert (D.alpha, D.beta) == ((2, 0), (0, 1))
    assert parse_point("2,1/2") == [G(2), G(Fraction(1, 2))]
    assert parse_point("1+i,0.5")[0] == G(1, 1)
    assert isinstance(parse_point("1e400,2")[0], (complex, G))
