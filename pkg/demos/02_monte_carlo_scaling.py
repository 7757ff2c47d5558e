"""p(n) * n for two random +-1 polynomials, odd against even degrees."""

import math

from crl.experiment import CampaignConfig, asymptotic_table, estimate_p

TRIALS = 100_000

# odd degrees: both polynomials can vanish at +-1, and p(n) * n drifts up toward 4/pi
csv, reports = asymptotic_table([15, 31, 63], TRIALS, seed=1)
print(csv)
print(f"4/pi = {4 / math.pi:.5f}")

# even degrees have an odd number of coefficients, so +-1 is never a root
for n in (31, 32):
    rep = estimate_p(CampaignConfig(n=n, trials=TRIALS, master_seed=1))
    lo, hi = rep.wilson_ci_95
    print(f"n={n}: hits={rep.hits:5d}  p_hat={float(rep.p_hat):.5f}  95% CI [{lo:.5f}, {hi:.5f}]")

# where the decisions were made: cheap screening, then an exact gcd for the rest
print("\nstage counts at n=63:", reports[-1].stages)
print("class counts at n=63:", reports[-1].class_counts)
