"""Common roots of random Bernoulli (+-1 coefficient) polynomials.

Exact common-root detection, Monte Carlo estimation of the probability that
``ell`` random polynomials share a root, exact Littlewood-Offord atom
probabilities, and the dunomial (two-monomial relation) calculus.
"""

from crl.poly import (
    BernoulliPolyMulti,
    BernoulliPolyUni,
    Seed,
    eval_at_pm1,
    evaluate,
    sample_multi,
    sample_system,
    sample_uni,
)

__all__ = [
    "BernoulliPolyMulti",
    "BernoulliPolyUni",
    "Seed",
    "eval_at_pm1",
    "evaluate",
    "sample_multi",
    "sample_system",
    "sample_uni",
]

__version__ = "0.1.0"
