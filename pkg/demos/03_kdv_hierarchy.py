"""
Building the KdV hierarchy degree by degree
===========================================

"""

import time

from symhier import EvolutionEquation, bracket, solve_symmetry, u

kdv = EvolutionEquation(3, u(0) * u(1))
print(kdv)

# each order is attempted with the default degree cap
for l in range(2, 12):
    if l == kdv.m:
        continue
    t0 = time.perf_counter()
    res = solve_symmetry(kdv, l)
    dt = time.perf_counter() - t0
    if res.found:
        print(f"order {l:2d}: FOUND  ({len(res.E.to_poly().terms)} terms, {dt:.2f} s)")
    else:
        print(f"order {l:2d}: FAILED at degree {res.failure_degree}")

# the order-5 flow in full
E5 = solve_symmetry(kdv, 5).E.to_poly()
print("\nE5 =", E5)

# the flows commute with the equation and with each other
E7 = solve_symmetry(kdv, 7).E.to_poly()
print("{F, E5} =", bracket(kdv.rhs, E5))
print("{E5, E7} =", bracket(E5, E7))
