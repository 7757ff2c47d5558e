import json
import math
from fractions import Fraction

import numpy as np
import pytest

from crl.algebra.gcd import gcd_int
from crl.algebra.intpoly import IntPoly
from crl.classify import RATIONAL_PM1
from crl.experiment import (
    EXHAUSTIVE,
    TABLE_HEADER,
    CampaignConfig,
    ConfigError,
    all_sign_vectors,
    asymptotic_table,
    bound_suite,
    d1_decisions,
    estimate_p,
    exact_p_bruteforce,
    lo_corpus,
    scaled_in_range,
    wilson_ci,
    worker_count,
)
from crl.poly import sign_batch

EXACT_P = {1: Fraction(1, 2), 3: Fraction(5, 16), 5: Fraction(59, 256), 7: Fraction(311, 2048)}


def test_config_validation():
    CampaignConfig().validate()
    CampaignConfig(d=2, n=4, ell=3).validate()
    bad = [
        CampaignConfig(d=3, ell=4),
        CampaignConfig(d=1, ell=3),
        CampaignConfig(n=0),
        CampaignConfig(trials=0),
        CampaignConfig(master_seed=-1),
        CampaignConfig(master_seed=1 << 64),
        CampaignConfig(mode="Sometimes"),
        CampaignConfig(n=11, mode=EXHAUSTIVE),
        CampaignConfig(d=2, ell=3, mode=EXHAUSTIVE),
    ]
    for cfg in bad:
        with pytest.raises(ConfigError):
            cfg.validate()
    with pytest.raises(ConfigError):
        estimate_p(CampaignConfig(d=3, ell=4, trials=10))


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("CRL_THREADS", "1")
    assert worker_count() == 1
    monkeypatch.setenv("CRL_THREADS", "lots")
    with pytest.raises(ConfigError):
        worker_count()


def test_all_sign_vectors():
    v = all_sign_vectors(3)
    assert v.shape == (8, 3)
    assert len({tuple(r) for r in v}) == 8
    assert v[0].tolist() == [1, 1, 1] and v[1].tolist() == [-1, 1, 1]


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_exhaustive_values(n):
    rep = exact_p_bruteforce(CampaignConfig(n=n, mode=EXHAUSTIVE))
    assert rep.probability == EXACT_P[n]
    assert rep.pairs == 4 ** (n + 1)
    assert sum(rep.class_counts.values()) == rep.hits


def test_exhaustive_even_degree_has_no_pm1_class():
    rep = exact_p_bruteforce(CampaignConfig(n=4, mode=EXHAUSTIVE))
    assert rep.class_counts[RATIONAL_PM1] == 0
    assert rep.tallies["both_vanish_at_1"] == 0


def test_exhaustive_matches_numeric_oracle_n5():
    rep = exact_p_bruteforce(CampaignConfig(n=5, mode=EXHAUSTIVE), oracle=True)
    assert rep.oracle_discrepancies == 0


def test_exhaustive_hit_matrix_is_symmetric():
    rep = exact_p_bruteforce(CampaignConfig(n=5, mode=EXHAUSTIVE))
    assert np.array_equal(rep.hit_matrix, rep.hit_matrix.T)
    assert rep.hit_matrix.diagonal().all()


def test_estimate_is_deterministic():
    cfg = CampaignConfig(n=15, trials=20_000, master_seed=7)
    a, b = estimate_p(cfg), estimate_p(cfg)
    assert a.to_json() == b.to_json()
    assert "wall_time" not in a.to_dict()
    assert "wall_time" in estimate_p(cfg, timing=True).to_dict()


def test_worker_independence(monkeypatch):
    cfg1 = CampaignConfig(n=15, trials=30_000, master_seed=3)
    cfg2 = CampaignConfig(d=2, n=4, ell=3, trials=600, master_seed=3)
    monkeypatch.setenv("CRL_THREADS", "1")
    serial = [estimate_p(cfg1).to_json(), estimate_p(cfg2).to_json()]
    monkeypatch.setenv("CRL_THREADS", "4")
    parallel = [estimate_p(cfg1).to_json(), estimate_p(cfg2).to_json()]
    assert serial == parallel


def test_trial_prefix_is_stable():
    # trial k reads only stream k, so a longer campaign extends a shorter one
    short = d1_decisions(CampaignConfig(n=9, trials=100), 0, 100)[0]
    long = d1_decisions(CampaignConfig(n=9, trials=300), 0, 300)[0]
    assert np.array_equal(short, long[:100])
    middle = d1_decisions(CampaignConfig(n=9), 100, 50)[0]
    assert np.array_equal(middle, long[100:150])


@pytest.mark.parametrize("n,trials", [(15, 10_000), (31, 2_000)])
def test_filter_and_screen_are_sound(n, trials):
    cfg = CampaignConfig(n=n, trials=trials, master_seed=11)
    with_filter, codes, _ = d1_decisions(cfg, 0, trials)
    without, _, _ = d1_decisions(CampaignConfig(n=n, trials=trials, master_seed=11, use_filter=False), 0, trials)
    assert np.array_equal(with_filter, without)
    signs = sign_batch(11, 0, trials, 2 * (n + 1)).reshape(trials, 2, n + 1)
    for t in range(trials):
        g = gcd_int(IntPoly(signs[t, 0].tolist()), IntPoly(signs[t, 1].tolist()))
        assert (g.degree >= 1) == bool(with_filter[t])
        if codes[t] == 0:
            assert g.degree < 1


def test_report_fields():
    rep = estimate_p(CampaignConfig(n=7, trials=5000, master_seed=2))
    d = json.loads(rep.to_json())
    assert d["hits"] + d["misses"] + d["undecided"] == 5000
    assert d["undecided"] == 0
    lo, hi = d["wilson_ci_95"]
    assert lo <= d["p_hat"]["decimal"] <= hi
    assert d["scaled"]["p_hat_times_n"] == pytest.approx(d["p_hat"]["decimal"] * 7)
    st = d["stage_counts"]
    assert st["prefilter_hits"] + st["exact_hits"] == d["hits"]
    assert sum(d["class_counts"].values()) == d["hits"]
    assert "p_hat_pessimistic" not in d
    d2 = json.loads(estimate_p(CampaignConfig(d=2, n=3, ell=3, trials=50)).to_json())
    assert "p_hat_pessimistic" in d2 and "undecided_frac" in d2


def test_wilson_ci_reference_values():
    lo, hi = wilson_ci(50, 100)
    # closed form: (p + z^2/2n +- z sqrt(p(1-p)/n + z^2/4n^2)) / (1 + z^2/n)
    z = 1.959963984540054
    n, p = 100, 0.5
    centre = (p + z * z / (2 * n)) / (1 + z * z / n)
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n)
    assert lo == pytest.approx(centre - half, abs=1e-12)
    assert hi == pytest.approx(centre + half, abs=1e-12)
    assert wilson_ci(0, 10)[0] == 0.0


def test_wilson_coverage_against_exact_value():
    # 200 independent campaigns at n=7, where p is known exactly
    p = float(EXACT_P[7])
    covered = 0
    for seed in range(200):
        rep = estimate_p(CampaignConfig(n=7, trials=10_000, master_seed=1000 + seed))
        lo, hi = rep.wilson_ci_95
        covered += lo <= p <= hi
    assert covered >= 186


def test_asymptotic_table_shape_and_determinism():
    csv, reports = asymptotic_table([7, 9], 2000, 5)
    lines = csv.splitlines()
    assert lines[0] == TABLE_HEADER
    assert [line.split(",")[0] for line in lines[1:]] == ["7", "9"]
    assert all(line.endswith(",") for line in lines[1:])  # no timing column without --timing
    assert csv == asymptotic_table([7, 9], 2000, 5)[0]
    assert reports[0].config.master_seed == reports[1].config.master_seed == 5


def test_scaled_in_range():
    assert scaled_in_range([1.1, 1.5], 1.0, 1.6)
    assert not scaled_in_range([1.1, 1.7], 1.0, 1.6)
    assert not scaled_in_range([float("nan")], 1.0, 1.6)


def test_bound_suite():
    out = bound_suite()
    assert out["corpus_size"] == len(lo_corpus())
    mx = out["maxima"]
    assert mx["erdos_sharp_ratio"]["max"] <= 1.0
    assert mx["erdos_ratio"]["max"] < 0.8
    assert mx["halasz_ratio"]["max"] <= 4.0
