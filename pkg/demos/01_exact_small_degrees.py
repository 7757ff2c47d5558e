"""Exact common-root probabilities for two random +-1 polynomials of small degree."""

import numpy as np

from crl.classify import decompose_terms
from crl.experiment import EXHAUSTIVE, CampaignConfig, exact_p_bruteforce

# every pair of degree-n sign polynomials is decided exactly: a pair is a hit
# when its integer gcd is non-constant
for n in range(1, 8):
    rep = exact_p_bruteforce(CampaignConfig(n=n, mode=EXHAUSTIVE))
    terms = decompose_terms(n)
    print(f"n={n}  p={str(rep.probability):>12}  ~{float(rep.probability):.5f}   "
          f"I+II+III={float(terms.total):.5f}  residual={float(rep.probability - terms.total):.5f}")

# for odd n most hits come from a shared root at +1 or -1
rep = exact_p_bruteforce(CampaignConfig(n=7, mode=EXHAUSTIVE))
print("\nn=7 class counts:", rep.class_counts)
print("n=7 event tallies:", rep.tallies)

# the hit matrix is symmetric and every polynomial shares its roots with itself
hm = rep.hit_matrix
print("symmetric:", np.array_equal(hm, hm.T), " diagonal all hits:", bool(hm.diagonal().all()))

# cross-check against root matching in high precision (slower)
rep5 = exact_p_bruteforce(CampaignConfig(n=5, mode=EXHAUSTIVE), oracle=True)
print("n=5 numeric oracle discrepancies:", rep5.oracle_discrepancies)
