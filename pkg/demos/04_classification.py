"""
Which orders can a hierarchy have?
==================================

The answer depends only on m mod 6.
"""

from symhier import EvolutionEquation, classify, solve_symmetry, u
from symhier.symbolic import p_cofactor, t_factor

for m in range(2, 14):
    case = classify(m)
    print(f"m = {m:2d}: {case.label:6s} first orders {case.first(5)}")

# the case split is read off the factor t of P(2, m) = t * p
print()
for m in (4, 9, 11, 13):
    print(f"t(2, {m}) = {t_factor(2, m)}")
    print(f"p(2, {m}) = {p_cofactor(2, m)}")

# potential Sawada-Kotera: m = 5, so only orders 6Z+-1 survive
psk = EvolutionEquation(5, 5 * u(1) * u(3) + u(1) ** 3 * 5 / 3)
print()
for l in (3, 7, 9, 11):
    res = solve_symmetry(psk, l)
    verdict = "FOUND" if res.found else f"FAILED (degree {res.failure_degree})"
    print(f"order {l}: {verdict}  expected in set: {l in classify(5)}")
