import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crl.poly import (
    BernoulliPolyMulti,
    BernoulliPolyUni,
    ComplexPoint,
    Seed,
    eval_at_pm1,
    evaluate,
    exponents,
    from_sign_string,
    from_text,
    sample_multi,
    sample_system,
    sample_uni,
    sign_batch,
    sign_stream,
    to_sign_string,
    to_text,
)

signs = st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=40)


def test_degree_zero_sample():
    p = sample_uni(0, Seed(5))
    assert len(p.coeffs) == 1 and p.coeffs[0] in (-1, 1)


def test_sampling_is_deterministic():
    assert sample_uni(5, Seed(9, 3)) == sample_uni(5, Seed(9, 3))
    assert sample_multi(2, 6, Seed(1, 1)) == sample_multi(2, 6, Seed(1, 1))


def test_different_streams_differ():
    draws = {sample_uni(40, Seed(1, k)).coeffs for k in range(20)}
    assert len(draws) == 20


def test_frozen_stream_prefix():
    # Philox-4x64-10 keyed (1, 0), counter 0; bits read little-endian
    words = np.random.Philox(key=[1, 0]).random_raw(1)
    bits = [(int(words[0]) >> i) & 1 for i in range(16)]
    assert sign_stream(Seed(1, 0), 16).tolist() == [1 - 2 * b for b in bits]


def test_mean_of_constant_term():
    eps0 = sign_batch(2024, 0, 100_000, 1)[:, 0].astype(float)
    assert abs(eps0.mean()) <= 0.02


def test_batch_matches_system_sampling():
    batch = sign_batch(77, 100, 5, 2 * 9).reshape(5, 2, 9)
    for k in range(5):
        p, q = sample_system(1, 8, 2, Seed(77, 100 + k))
        assert list(p.coeffs) == batch[k, 0].tolist()
        assert list(q.coeffs) == batch[k, 1].tolist()


def test_first_system_member_is_single_sample():
    assert sample_system(2, 4, 3, Seed(3, 8))[0] == sample_multi(2, 4, Seed(3, 8))


@pytest.mark.parametrize("d,n,count", [(1, 3, 4), (2, 2, 6), (3, 10, 286)])
def test_coefficient_counts(d, n, count):
    # 286 = C(13, 3)
    assert len(sample_multi(d, n, Seed(1)).coeffs) == count == math.comb(n + d, d)


def test_sample_multi_rejects_d0():
    with pytest.raises(ValueError):
        sample_multi(0, 3, Seed(1))


def test_exponent_order_is_graded_lex():
    assert exponents(2, 2) == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
    for d, n in [(1, 4), (2, 5), (3, 4)]:
        e = exponents(d, n)
        assert list(e) == sorted(e, key=lambda v: (sum(v), v))
        assert len(set(e)) == math.comb(n + d, d)


def test_eval_examples():
    assert evaluate(BernoulliPolyUni((1, 1, 1, 1)), 1) == 4
    assert evaluate(from_sign_string("+-+"), -1) == 3
    p = sample_uni(9, Seed(4))
    assert evaluate(p, 0) == p.coeffs[0]


def test_eval_multi_matches_monomial_sum():
    p = sample_multi(2, 5, Seed(12))
    x, y = 0.3 - 0.2j, -1.1 + 0.4j
    ref = sum(c * x ** j[0] * y ** j[1] for j, c in zip(p.exponents, p.coeffs))
    assert abs(evaluate(p, ComplexPoint((x, y))) - ref) < 1e-12


def test_eval_at_pm1_examples():
    assert eval_at_pm1(from_sign_string("++")) == (2, 0)
    assert eval_at_pm1(from_sign_string("+-+-")) == (0, 4)


@given(signs)
def test_pm1_parity(c):
    p = BernoulliPolyUni(tuple(c))
    a, b = eval_at_pm1(p)
    m = len(c)
    assert a % 2 == m % 2 and b % 2 == m % 2
    assert a == evaluate(p, 1).real and b == evaluate(p, -1).real


@settings(max_examples=50)
@given(signs, st.floats(2.0, 5.0), st.floats(0, 2 * math.pi))
def test_no_roots_outside_radius_two(c, r, theta):
    p = BernoulliPolyUni(tuple(c))
    n = len(c) - 1
    z = r * complex(math.cos(theta), math.sin(theta))
    lower = r ** n - (r ** n - 1) / (r - 1)
    assert abs(evaluate(p, z)) >= lower * (1 - 1e-9) > 0
    # and dually inside radius 1/2
    w = 1 / z
    assert abs(evaluate(p, w)) > 0


@given(signs)
def test_sign_string_round_trip(c):
    p = BernoulliPolyUni(tuple(c))
    assert from_sign_string(to_sign_string(p)) == p
    assert from_text(to_text(p)) == p


def test_text_round_trip_multi():
    p = sample_multi(3, 3, Seed(8))
    text = to_text(p)
    assert text.splitlines()[0] == "3 3"
    assert from_text(text) == p


def test_invalid_inputs():
    with pytest.raises(ValueError):
        BernoulliPolyUni((1, 0, 1))
    with pytest.raises(ValueError):
        BernoulliPolyMulti(2, 1, (1, 1))
    with pytest.raises(ValueError):
        ComplexPoint((1.0, float("nan")))
    with pytest.raises(ValueError):
        Seed(-1)
