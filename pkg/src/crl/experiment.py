"""Monte Carlo campaigns and exhaustive small-degree ground truth.

Trial k of a campaign reads only the Philox stream keyed (master_seed, k),
and every aggregate is a sum of per-trial counters, so results do not depend
on how trials are split across workers.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy.stats import binomtest

from crl import report
from crl.algebra import modp
from crl.algebra.bivariate import NO, UNDECIDED, YES, common_root_exists_2d
from crl.algebra.gcd import gcd_int
from crl.algebra.intpoly import IntPoly
from crl.algebra.resultant import StageCounts
from crl.atoms import AtomVector, bound_report, power_vector
from crl.classify import HIGHER, LOW_DEGREE, RATIONAL_PM1, classify_factor, decompose_terms
from crl.exact import GaussianRational
from crl.poly import Seed, sample_system, sign_batch

MONTE_CARLO = "MonteCarlo"
EXHAUSTIVE = "Exhaustive"
EXHAUSTIVE_MAX_N = 10
CLASS_ORDER = (RATIONAL_PM1, LOW_DEGREE, HIGHER)

D1_BLOCK = 8192
D2_BLOCK = 256


class ConfigError(ValueError):
    """A campaign configuration that cannot be run."""


@dataclass(frozen=True)
class CampaignConfig:
    d: int = 1
    n: int = 63
    ell: int = 2
    trials: int = 100_000
    master_seed: int = 1
    mode: str = MONTE_CARLO
    prime_budget: int = 2
    tol: float = 1e-8
    use_filter: bool = True

    def validate(self) -> None:
        if self.n < 1 or self.trials < 1 or self.prime_budget < 1 or self.tol <= 0:
            raise ConfigError("n, trials and prime_budget must be positive, tol > 0")
        if not 0 <= self.master_seed < 1 << 64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")
        if self.mode == EXHAUSTIVE:
            if (self.d, self.ell) != (1, 2) or self.n > EXHAUSTIVE_MAX_N:
                raise ConfigError(f"exhaustive mode needs d=1, ell=2, n <= {EXHAUSTIVE_MAX_N}")
        elif self.mode == MONTE_CARLO:
            if (self.d, self.ell) not in ((1, 2), (2, 3)):
                raise ConfigError(
                    f"unsupported (d, ell) = ({self.d}, {self.ell}); supported: (1, 2) and (2, 3)"
                )
        else:
            raise ConfigError(f"unknown mode {self.mode!r}")

    def to_dict(self) -> dict:
        return asdict(self)


def worker_count() -> int:
    cap = os.environ.get("CRL_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ConfigError(f"CRL_THREADS must be an integer, got {cap!r}") from None
    return n


def wilson_ci(hits: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    ci = binomtest(hits, trials).proportion_ci(confidence_level=level, method="wilson")
    return float(ci.low), float(ci.high)


# -- per-block trial kernels ------------------------------------------------

@dataclass
class BlockTally:
    hits: int = 0
    undecided: int = 0
    trials: int = 0
    stages: StageCounts = field(default_factory=StageCounts)
    classes: dict = field(default_factory=lambda: dict.fromkeys(CLASS_ORDER, 0))

    def merge(self, other: BlockTally) -> BlockTally:
        return BlockTally(
            self.hits + other.hits,
            self.undecided + other.undecided,
            self.trials + other.trials,
            self.stages.merge(other.stages),
            {k: self.classes[k] + other.classes[k] for k in CLASS_ORDER},
        )


def primary_class(g: IntPoly) -> str:
    """The first class, in the order +-1, low degree, higher, present in g."""
    tags = {rc.tag for _, rc in classify_factor(g)}
    for t in CLASS_ORDER:
        if t in tags:
            return t
    raise ValueError("constant gcd has no class")


def d1_decisions(config: CampaignConfig, start: int, count: int) -> tuple[np.ndarray, np.ndarray, list]:
    """Decisions for trials start..start+count-1 of a d=1 campaign.

    Returns (hit flags, screening codes, primary class per hit or None).
    """
    m = config.n + 1
    signs = sign_batch(config.master_seed, start, count, 2 * m).reshape(count, 2, m)
    prime_list = np.array(modp.screen_primes(config.prime_budget), dtype=np.float64)
    codes = modp.screen_pairs(signs, prime_list, config.prime_budget, config.use_filter)
    hits = codes == 1
    classes: list = [RATIONAL_PM1 if c == 1 else None for c in codes]
    for t in np.nonzero(codes == 2)[0]:
        g = gcd_int(IntPoly(signs[t, 0].tolist()), IntPoly(signs[t, 1].tolist()))
        if g.degree >= 1:
            hits[t] = True
            classes[t] = primary_class(g)
    return hits, codes, classes


def _d1_block(config: CampaignConfig, start: int, count: int) -> BlockTally:
    hits, codes, classes = d1_decisions(config, start, count)
    tally = BlockTally(hits=int(hits.sum()), trials=count)
    tally.stages.prefilter_hits = int((codes == 1).sum())
    tally.stages.modular_rejects = int((codes == 0).sum())
    tally.stages.exact_checks = int((codes == 2).sum())
    tally.stages.exact_hits = tally.hits - tally.stages.prefilter_hits
    for c in classes:
        if c is not None:
            tally.classes[c] += 1
    return tally


def d2_decision(config: CampaignConfig, k: int):
    polys = sample_system(2, config.n, 3, Seed(config.master_seed, k))
    return common_root_exists_2d(*polys, tol=config.tol)


def _d2_block(config: CampaignConfig, start: int, count: int) -> BlockTally:
    tally = BlockTally(trials=count)
    for k in range(start, start + count):
        tag = d2_decision(config, k).tag
        if tag == YES:
            tally.hits += 1
        elif tag == UNDECIDED:
            tally.undecided += 1
        else:
            assert tag == NO
    return tally


# -- campaigns --------------------------------------------------------------

@dataclass
class EstimateReport:
    config: CampaignConfig
    hits: int
    undecided: int
    stages: StageCounts | None = None
    class_counts: dict | None = None
    wall_time: float | None = None

    @property
    def trials(self) -> int:
        return self.config.trials

    @property
    def misses(self) -> int:
        return self.trials - self.hits - self.undecided

    @property
    def p_hat(self) -> Fraction:
        """Optimistic estimate: Undecided counted as a miss."""
        return Fraction(self.hits, self.trials)

    @property
    def p_hat_pessimistic(self) -> Fraction:
        """Undecided counted as a hit."""
        return Fraction(self.hits + self.undecided, self.trials)

    @property
    def wilson_ci_95(self) -> tuple[float, float]:
        return wilson_ci(self.hits, self.trials)

    @property
    def wilson_ci_95_pessimistic(self) -> tuple[float, float]:
        return wilson_ci(self.hits + self.undecided, self.trials)

    @property
    def scaled(self) -> tuple[float, float]:
        p = float(self.p_hat)
        n = self.config.n
        return p * n, p * n ** 1.5

    @property
    def undecided_frac(self) -> float:
        return self.undecided / self.trials

    def to_dict(self) -> dict:
        p = self.p_hat
        pp = self.p_hat_pessimistic
        out: dict = {
            "config": self.config.to_dict(),
            "trials": self.trials,
            "hits": self.hits,
            "misses": self.misses,
            "undecided": self.undecided,
            "p_hat": {"rational": p, "decimal": float(p)},
            "wilson_ci_95": list(self.wilson_ci_95),
            "scaled": {"p_hat_times_n": self.scaled[0], "p_hat_times_n_1.5": self.scaled[1]},
        }
        if self.config.d >= 2:
            out["p_hat_pessimistic"] = {"rational": pp, "decimal": float(pp)}
            out["wilson_ci_95_pessimistic"] = list(self.wilson_ci_95_pessimistic)
            out["undecided_frac"] = self.undecided_frac
        if self.stages is not None:
            out["stage_counts"] = asdict(self.stages)
        if self.class_counts is not None:
            out["class_counts"] = dict(self.class_counts)
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self) -> str:
        return report.dumps(self.to_dict())


def _blocks(trials: int, size: int):
    return [(s, min(size, trials - s)) for s in range(0, trials, size)]


def estimate_p(config: CampaignConfig, timing: bool = False) -> EstimateReport:
    """Run a Monte Carlo campaign; identical configs give identical reports."""
    config.validate()
    if config.mode != MONTE_CARLO:
        raise ConfigError("estimate_p needs MonteCarlo mode")
    t0 = time.perf_counter()
    if config.d == 1:
        kernel, size = _d1_block, D1_BLOCK
    else:
        kernel, size = _d2_block, D2_BLOCK
    blocks = _blocks(config.trials, size)
    workers = worker_count()
    if workers == 1 or len(blocks) == 1:
        parts = [kernel(config, s, c) for s, c in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: kernel(config, *b), blocks))
    total = BlockTally()
    for part in parts:
        total = total.merge(part)
    assert total.trials == config.trials
    elapsed = time.perf_counter() - t0
    return EstimateReport(
        config=config,
        hits=total.hits,
        undecided=total.undecided,
        stages=total.stages if config.d == 1 else None,
        class_counts=total.classes if config.d == 1 else None,
        wall_time=elapsed if timing else None,
    )


TABLE_HEADER = "n,p_hat,ci_lo,ci_hi,scaled,undecided_frac,seconds"


def asymptotic_table(n_list, trials: int, seed: int, d: int = 1, timing: bool = False,
                     prime_budget: int = 2, use_filter: bool = True) -> tuple[str, list[EstimateReport]]:
    """CSV of p_hat * n across degrees. Every row uses the same master seed.

    For d=2 the p_hat column is the pessimistic estimate.
    """
    ell = 2 if d == 1 else 3
    rows = [TABLE_HEADER]
    reports = []
    for n in n_list:
        cfg = CampaignConfig(d=d, n=n, ell=ell, trials=trials, master_seed=seed,
                             prime_budget=prime_budget, use_filter=use_filter)
        rep = estimate_p(cfg, timing=timing)
        reports.append(rep)
        if d == 1:
            p, (lo, hi) = rep.p_hat, rep.wilson_ci_95
        else:
            p, (lo, hi) = rep.p_hat_pessimistic, rep.wilson_ci_95_pessimistic
        rows.append(report.csv_row([n, float(p), lo, hi, float(p) * n, rep.undecided_frac, rep.wall_time]))
    return "\n".join(rows) + "\n", reports


# -- exhaustive ground truth --------------------------------------------------

def all_sign_vectors(m: int) -> np.ndarray:
    """Every +-1 vector of length m; row k has sign -1 at bit i of k."""
    k = np.arange(2 ** m, dtype=np.int64)[:, None]
    bits = (k >> np.arange(m, dtype=np.int64)) & 1
    return (1 - 2 * bits).astype(np.int8)


@dataclass
class ExactReport:
    n: int
    pairs: int
    hits: int
    tallies: dict
    class_counts: dict
    hit_matrix: np.ndarray | None = None
    oracle_discrepancies: int | None = None

    @property
    def probability(self) -> Fraction:
        return Fraction(self.hits, self.pairs)

    def to_dict(self) -> dict:
        terms = decompose_terms(self.n)
        out: dict = {
            "n": self.n,
            "pairs": self.pairs,
            "hits": self.hits,
            "p": {"rational": self.probability, "decimal": float(self.probability)},
            "tallies": dict(self.tallies),
            "tally_probabilities": {k: Fraction(v, self.pairs) for k, v in self.tallies.items()},
            "decomposition": {"I": terms.I, "II": terms.II, "III": terms.III,
                              "residual": self.probability - terms.total},
            "class_counts": dict(self.class_counts),
        }
        if self.oracle_discrepancies is not None:
            out["oracle_discrepancies"] = self.oracle_discrepancies
        return out

    def to_json(self) -> str:
        return report.dumps(self.to_dict())


def exact_p_bruteforce(config: CampaignConfig, oracle: bool = False) -> ExactReport:
    """Every pair of degree-n +-1 polynomials, decided exactly.

    Pairs are screened modulo small primes; the remainder goes through the
    exact gcd. ``oracle`` additionally compares the hit set pair-for-pair
    with high-precision numeric root matching.
    """
    if config.mode != EXHAUSTIVE:
        config = CampaignConfig(d=config.d, n=config.n, ell=config.ell, trials=config.trials,
                                master_seed=config.master_seed, mode=EXHAUSTIVE,
                                prime_budget=config.prime_budget, tol=config.tol, use_filter=config.use_filter)
    config.validate()
    n = config.n
    m = n + 1
    polys = all_sign_vectors(m)
    count = len(polys)
    ii, jj = np.meshgrid(np.arange(count), np.arange(count), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    signs = np.stack([polys[ii], polys[jj]], axis=1)
    prime_list = np.array(modp.screen_primes(config.prime_budget), dtype=np.float64)
    codes = modp.screen_pairs(signs, prime_list, config.prime_budget, config.use_filter)
    hit = codes == 1
    classes = dict.fromkeys(CLASS_ORDER, 0)
    # class of each hit pair comes from its exact gcd
    for t in np.nonzero(codes != 0)[0]:
        g = gcd_int(IntPoly(polys[ii[t]].tolist()), IntPoly(polys[jj[t]].tolist()))
        if g.degree >= 1:
            hit[t] = True
            classes[primary_class(g)] += 1
        elif codes[t] == 1:
            raise AssertionError("pre-filter hit without a common factor")
    at1 = polys.sum(axis=1) == 0
    alt = np.where(np.arange(m) % 2 == 0, 1, -1)
    atm1 = (polys * alt).sum(axis=1) == 0
    tallies = {
        "both_vanish_at_1": int((at1[ii] & at1[jj]).sum()),
        "both_vanish_at_-1": int((atm1[ii] & atm1[jj]).sum()),
        "both_vanish_at_1_and_-1": int((at1[ii] & at1[jj] & atm1[ii] & atm1[jj]).sum()),
    }
    hit_matrix = hit.reshape(count, count)
    out = ExactReport(n, count * count, int(hit.sum()), tallies, classes, hit_matrix)
    if oracle:
        out.oracle_discrepancies = int((numeric_hit_matrix(n) != hit_matrix).sum())
    return out


def numeric_roots_hp(coeffs, dps: int = 50) -> np.ndarray:
    """Companion-matrix eigenvalues at ``dps`` digits, rounded to complex128.

    Eigenvalues of a defective companion matrix keep about dps/k correct
    digits for a root of multiplicity k, far below the matching tolerance.
    """
    import mpmath

    c = [int(v) for v in coeffs]
    k = len(c) - 1
    if k == 1:
        return np.array([complex(Fraction(-c[0], c[1]))], dtype=complex)
    with mpmath.workdps(dps):
        comp = mpmath.zeros(k, k)
        for i in range(1, k):
            comp[i, i - 1] = 1
        for i in range(k):
            comp[i, k - 1] = mpmath.mpf(-c[i]) / c[k]
        rts = mpmath.eig(comp, left=False, right=False)
    return np.array([complex(r) for r in rts], dtype=complex)


def numeric_hit_matrix(n: int, tol: float = 1e-8) -> np.ndarray:
    """Pairs sharing a root, by matching high-precision roots within tol (relative)."""
    polys = all_sign_vectors(n + 1)
    roots = np.array([numeric_roots_hp(p) for p in polys])
    count = len(polys)
    out = np.zeros((count, count), dtype=bool)
    for i in range(count):
        dist = np.abs(roots[i][None, :, None] - roots[:, None, :])
        scale = np.maximum(1.0, np.abs(roots[i]))[None, :, None]
        out[i] = (dist <= tol * scale).any(axis=(1, 2))
    return out


# -- Littlewood-Offord corpus -------------------------------------------------

def lo_corpus() -> list[tuple[str, AtomVector]]:
    """Deterministic vectors covering repeated, distinct, Gaussian and algebraic entries."""
    out: list[tuple[str, AtomVector]] = []
    for m in range(1, 21):
        out.append((f"ones_{m}", AtomVector.integers([1] * m)))
    for m in range(2, 21):
        out.append((f"range_{m}", AtomVector.integers(range(1, m + 1))))
    for m in range(2, 13):
        out.append((f"pow2_{m}", AtomVector.integers([2 ** k for k in range(m)])))
    out.append(("pm_pairs", AtomVector.integers([1, -1, 2, -2])))
    for m in range(4, 17, 4):
        out.append((f"two_values_{m}", AtomVector.integers([1] * (m // 2) + [2] * (m // 2))))
    rng = np.random.Generator(np.random.Philox(key=[0x10, 0]))
    for k in range(40):
        m = int(rng.integers(4, 21))
        vals = rng.integers(1, 51, size=m) * rng.choice([-1, 1], size=m)
        out.append((f"random_{k}", AtomVector.integers(vals.tolist())))
    g = GaussianRational
    out.append(("gaussian_units", AtomVector.gaussian([g(1), g(0, 1), g(-1), g(0, -1)] * 3)))
    out.append(("gaussian_mixed", AtomVector.gaussian([g(1), g(0, 1), g(1, 1), g(2), g(1, -1), g(0, 2)])))
    for name, poly in (("x-1", [-1, 1]), ("x^2+1", [1, 0, 1]), ("x^2-x-1", [-1, -1, 1]), ("x^2+x+1", [1, 1, 1])):
        for m in (6, 10, 14):
            out.append((f"powers[{name}]_{m}", power_vector(poly, m)))
    return out


def bound_suite() -> dict:
    """Corpus maxima of the bound ratios, with the vectors attaining them."""
    rows = []
    for name, xi in lo_corpus():
        rows.append((name, bound_report(xi)))
    best: dict = {}
    for key in ("erdos_ratio", "erdos_sharp_ratio", "ss_ratio", "halasz_ratio"):
        vals = [(getattr(r, key), name) for name, r in rows if getattr(r, key) is not None]
        v, name = max(vals)
        best[key] = {"max": v, "witness": name, "vectors": len(vals)}
    return {"corpus_size": len(rows), "maxima": best,
            "vectors": {name: r.to_dict() for name, r in rows}}


def scaled_in_range(values, lo: float, hi: float) -> bool:
    return all(lo <= v <= hi and not math.isnan(v) for v in values)
