"""Three random +-1 polynomials in two variables: how often do they share a zero?"""

from crl.algebra.bivariate import BivarIntPoly, common_root_exists_2d, eliminate_y
from crl.experiment import CampaignConfig, estimate_p
from crl.poly import Seed, sample_system

# one system in detail: eliminating y leaves a polynomial in x of degree <= n^2
P1, P2, P3 = sample_system(2, 4, 3, Seed(1, 0))
res = eliminate_y(BivarIntPoly.from_bernoulli(P1), BivarIntPoly.from_bernoulli(P2))
print("deg Res_y(P1, P2) =", res.degree, "(at most 16)")
print("decision:", common_root_exists_2d(P1, P2, P3).tag)

# the estimate counts undecided trials as hits for the pessimistic value
for n in (4, 6, 8):
    rep = estimate_p(CampaignConfig(d=2, n=n, ell=3, trials=1000, master_seed=1))
    lo, hi = rep.wilson_ci_95_pessimistic
    print(f"n={n}: hits={rep.hits:3d} undecided={rep.undecided}  "
          f"pessimistic p_hat={float(rep.p_hat_pessimistic):.4f} [{lo:.4f}, {hi:.4f}]")
