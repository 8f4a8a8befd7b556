"""
Differential polynomials and the evolutionary bracket
=====================================================

"""

from fractions import Fraction

from symhier import DiffPoly, bracket, prolong, u
from symhier.diffalg import total_derivative

# u(i) is the i-th jet variable; u(0) prints as plain "u"
F = u(3) + u(0) * u(1)
print("F =", F)
print("order:", F.order(), " degrees:", F.degrees())

# D sends u_i to u_{i+1}
print("D(u*u1) =", total_derivative(u(0) * u(1)))
print("D^3(u^2) =", total_derivative(u(0) ** 2, 3))

# v_F G = sum_i D^i(F) dG/du_i
print("v_{u*u1}(u2) =", prolong(u(0) * u(1), u(2)))

# linear flows commute with each other, but not with nonlinear ones
print("{u2, u5} =", bracket(u(2), u(5)))
print("{u*u1, u2} =", bracket(u(0) * u(1), u(2)))

# the bracket raises the order exactly by m - 1 against u_m
G = Fraction(1, 2) * u(1) * u(4)
print("order of {u3, G}:", bracket(u(3), G).order(), "=", 3 + G.order() - 1)

# coefficients are exact rationals throughout
print(DiffPoly.constant(Fraction(1, 3)) * 3 == DiffPoly.constant(1))
