"""Largest atom of a random signed sum, against the classical upper bounds."""

from crl.atoms import AtomVector, atom_probability, bound_report, power_vector, walk_return_prob
from crl.exact import GaussianRational as G

# all-ones is the worst case among vectors with nonzero entries
for m in (4, 8, 16, 32):
    rep = bound_report(AtomVector.integers([1] * m))
    print(f"ones_{m}: P={str(rep.prob):>22}  P*sqrt(m)={rep.erdos_ratio:.4f}  sharp ratio={rep.erdos_sharp_ratio}")

# distinct entries concentrate far less
rep = bound_report(AtomVector.integers(range(1, 21)))
print(f"\n1..20: P={rep.prob}  ratio to m^-3/2: {rep.ss_ratio:.4f}")

# Gaussian integers and powers of algebraic numbers are handled exactly
g = AtomVector.gaussian([G(1), G(0, 1), G(1, 1), G(2), G(1, -1)])
print("\nGaussian vector:", atom_probability(g).probability)
phi = power_vector([-1, -1, 1], 6)  # 1, phi, ..., phi^5 with phi^2 = phi + 1
res = atom_probability(phi)
print("golden-ratio powers, m=6:", res.probability, f"({res.zero_count} sign patterns)")
print("powers of i, m=8:", atom_probability(power_vector([1, 0, 1], 8)).probability)

# the walk return probability behind the all-ones case
print("\nP(S_10000 = 0) * 100 =", float(walk_return_prob(10_000)) * 100)
print("exact P(S_6 = 0) =", walk_return_prob(6))
