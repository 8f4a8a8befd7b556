"""
How large can a symmetry be?
============================

"""

from symhier import EvolutionEquation, propagate_order_bounds, theorem3_bound, u
from symhier.integrability import actual_profile

kdv = EvolutionEquation(3, u(0) * u(1))
n = 9
d, cap = theorem3_bound(kdv, n)
print(f"KdV, order {n}: d = {d}, degree at most {cap}")

# order bounds per degree, propagated from the orders of f^k
est = propagate_order_bounds(actual_profile(kdv, cap), n, cap)
for k in range(1, cap + 1):
    print(f"  degree {k}: order <= {est.bound(k)}")

# an equation with a steeper profile allows fewer degrees
eq = EvolutionEquation(7, u(0) * u(2) + u(1) ** 3)
print(eq, "->", theorem3_bound(eq, n))

# Burgers has order(f) = m - 1, so no polynomial bound applies
burgers = EvolutionEquation(2, u(0) * u(1))
try:
    theorem3_bound(burgers, 3)
except ValueError as exc:
    print("Burgers:", exc)
