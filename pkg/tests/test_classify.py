import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
import sympy

from crl.algebra.intpoly import IntPoly
from crl.classify import (
    HIGHER,
    LOW_DEGREE,
    RATIONAL_PM1,
    Z1,
    Z2,
    Z3,
    annulus_filter,
    classify_common_roots_1d,
    classify_factor,
    classify_point,
    decompose_terms,
    enumerate_candidates,
    quadratic_pool,
    quadratic_qualifies,
)
from crl.experiment import CampaignConfig, all_sign_vectors, exact_p_bruteforce, numeric_roots_hp
from crl.poly import BernoulliPolyUni, Seed, from_sign_string, sample_uni


def test_annulus_filter_examples():
    assert annulus_filter([3, 1, 0.1]) == [1]
    assert annulus_filter([]) == []
    assert annulus_filter([0.5, 2.0, 2.0 + 1e-7, 0.5 - 1e-7]) == [0.5, 2.0, 2.0 + 1e-7, 0.5 - 1e-7]


def test_annulus_holds_for_random_bernoulli_roots():
    for k in range(1000):
        n = 1 + k % 64
        p = sample_uni(n, Seed(31, k))
        rts = np.roots(list(reversed(p.coeffs)))
        assert len(annulus_filter(rts)) == n


def test_degree_one_candidates():
    cands = enumerate_candidates(1)
    assert [c.poly.coeffs for c in cands] == [(-1, 1), (1, 1)]


def test_quadratic_pool_and_examples():
    assert len(quadratic_pool()) == 81
    assert not quadratic_qualifies(0, 1)  # x^2 - 1
    assert quadratic_qualifies(1, 1)  # x^2 - x - 1
    assert quadratic_qualifies(0, -1)  # x^2 + 1
    assert not quadratic_qualifies(0, 0)


def test_quadratic_candidates_are_valid_and_stable():
    cands = enumerate_candidates(2)
    assert cands == enumerate_candidates.__wrapped__(2)
    x = sympy.Symbol("x")
    for c in cands:
        assert sympy.Poly(list(reversed(c.poly.coeffs)), x).is_irreducible
        mods = np.abs(c.roots())
        assert np.all(mods >= 0.5 - 1e-9) and np.all(mods <= 2 + 1e-9)


def _independent_quadratic_check(a, b):
    # x^2 - a x - b: reducible over Q iff the discriminant a^2 + 4b is a square
    disc = a * a + 4 * b
    if disc >= 0 and math.isqrt(disc) ** 2 == disc:
        return False
    if disc < 0:
        # complex pair with modulus sqrt(-b)
        return 0.25 <= -b <= 4
    r1 = (a + math.sqrt(disc)) / 2
    r2 = (a - math.sqrt(disc)) / 2
    return all(0.5 <= abs(r) <= 2 for r in (r1, r2))


def test_quadratic_completeness_sweep():
    inside = {(a, b) for a, b in quadratic_pool() if _independent_quadratic_check(a, b)}
    listed = {(-c.poly.coeffs[1], -c.poly.coeffs[0]) for c in enumerate_candidates(2)}
    assert listed == inside
    for a, b in itertools.product(range(-6, 7), repeat=2):
        if max(abs(a), abs(b)) > 4:
            assert not _independent_quadratic_check(a, b)
            assert not quadratic_qualifies(a, b)


def test_higher_degree_candidates():
    x = sympy.Symbol("x")
    c3 = enumerate_candidates(3)
    assert len(c3) == 16
    for c in c3:
        assert abs(c.poly.coeffs[0]) == 1
        assert sympy.Poly(list(reversed(c.poly.coeffs)), x).is_irreducible
    # x^3 - x - 1 has the plastic number ~1.3247 as a root
    assert (-1, -1, 0, 1) in {c.poly.coeffs for c in c3}
    with pytest.raises(ValueError):
        enumerate_candidates(5)


def test_decompose_examples():
    t5 = decompose_terms(5)
    assert t5.I == Fraction(25, 256) == t5.II
    assert t5.III == 0  # three even-index coefficients cannot cancel
    assert decompose_terms(7).III == -Fraction(81, 4096)
    assert decompose_terms(4).I == 0
    assert decompose_terms(2).III == 0


def test_decompose_iii_against_enumeration():
    # III = -P(p(1) = p(-1) = 0)^2 for a single polynomial, by direct count
    for n in (3, 5, 7):
        both = sum(1 for c in all_sign_vectors(n + 1) if sum(c) == 0 and sum(c[::2]) == sum(c[1::2]))
        assert decompose_terms(n).III == -Fraction(both, 2 ** (n + 1)) ** 2


@pytest.mark.parametrize("n,p", [(1, Fraction(1, 2)), (3, Fraction(5, 16)), (5, Fraction(59, 256))])
def test_decomposition_never_exceeds_total(n, p):
    rep = exact_p_bruteforce(CampaignConfig(n=n))
    assert rep.probability == p
    assert decompose_terms(n).total <= p


def test_classify_examples():
    out = classify_common_roots_1d(from_sign_string("++"), from_sign_string("++"))
    assert len(out) == 1
    f, rc = out[0]
    assert f.coeffs == (1, 1) and rc.tag == RATIONAL_PM1 and rc.which == -1
    assert classify_common_roots_1d(from_sign_string("++"), from_sign_string("+-")) == []


def test_classify_multiplicity_and_remainder():
    # (x+1)^2 (x^2+x+1)(x^3 - x - 1)
    g = IntPoly([1, 1]) * IntPoly([1, 1]) * IntPoly([1, 1, 1]) * IntPoly([-1, -1, 0, 1])
    tags = [rc.tag for _, rc in classify_factor(g)]
    assert tags == [RATIONAL_PM1, RATIONAL_PM1, LOW_DEGREE, HIGHER]
    tags3 = [rc.tag for _, rc in classify_factor(g, max_degree=3)]
    assert tags3 == [RATIONAL_PM1, RATIONAL_PM1, LOW_DEGREE, LOW_DEGREE]


def _numeric_tags(rp, rq, quads, tol=1e-7):
    """Class of each distinct shared root, from high-precision roots alone."""
    tags = set()
    for z in rp:
        if np.min(np.abs(rq - z)) > tol:
            continue
        if abs(z - 1) < tol or abs(z + 1) < tol:
            tags.add(RATIONAL_PM1)
        elif any(np.min(np.abs(r - z)) < tol for r in quads):
            tags.add(LOW_DEGREE)
        else:
            tags.add(HIGHER)
    return frozenset(tags)


def test_class_multiset_matches_numeric_oracle_n5():
    polys = all_sign_vectors(6)
    roots = [numeric_roots_hp(a) for a in polys]
    quads = [c.roots() for c in enumerate_candidates(2)]
    exact = Counter()
    numeric = Counter()
    for i, a in enumerate(polys):
        for j, b in enumerate(polys):
            pa = BernoulliPolyUni(tuple(int(v) for v in a))
            pb = BernoulliPolyUni(tuple(int(v) for v in b))
            tags = frozenset(rc.tag for _, rc in classify_common_roots_1d(pa, pb))
            if tags:
                exact[tags] += 1
            num = _numeric_tags(roots[i], roots[j], quads)
            if num:
                numeric[num] += 1
    assert exact == numeric
    assert sum(exact.values()) == 59 * 16


def test_classify_point_examples():
    assert classify_point([0, 5], 3) == classify_point([0, 5], 10)
    z = classify_point([0, 5], 3)
    assert z.tag == Z1 and z.zero_coord_index == 0
    z = classify_point([1, 2], 1)
    assert z.tag == Z2 and str(z.witness) == "x1 - 1"
    assert classify_point([2, 3], 8).tag == Z3
    z = classify_point([2, 0.5], 4)
    assert z.tag == Z2 and z.witness.order == 2
    assert classify_point([3, 1e-12], 2).zero_coord_index == 1
