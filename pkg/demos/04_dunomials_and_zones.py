"""Two-term monomial relations x^a = +-x^b and the points that satisfy them."""

from fractions import Fraction

from crl.classify import classify_point
from crl.dunomial import Dunomial, count_satisfied, enumerate_reduced_by_order, r_of_x
from crl.exact import GaussianRational as G

D = Dunomial((2, 1), (1, 1), -1)
print(D, "-> reduced:", D.reduce(), " order", D.order)

# minimal order of a relation at a few exact points
for x in ([1, 1], [2, Fraction(1, 2)], [G(0, 1), 2], [4, Fraction(1, 8)], [2, 3]):
    res = r_of_x(x, 12)
    shown = res.value if res.is_finite else ("infinite (proved)" if res.infinite else f">= {res.lower_bound}")
    print(f"x={[str(v) for v in x]}: r={shown}  witness={res.witness}")

# number of vanishing relations of degree <= n grows like n^4 when r is small
for n in (2, 4, 8):
    print(f"n={n}: relations at (1,1): {count_satisfied([1, 1], n):6d}   at (-1,i): {count_satisfied([-1, G(0, 1)], n):6d}")

# reduced relations of a given order in two variables: exactly 4r
print("\nreduced counts:", [len(enumerate_reduced_by_order(2, r)) for r in range(1, 9)])

# zones of points in C^2
for x in ([0, 5], [1, 2], [2, 0.5], [2, 3]):
    print(x, classify_point(x, 8).to_dict())
