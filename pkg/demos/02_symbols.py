"""
Symbols: from differential polynomials to symmetric polynomials
================================================================

"""

from symhier import u
from symhier.diffalg import bracket, total_derivative
from symhier.symbolic import P, SymPoly, gd_inverse, gd_transform, sym_bracket, u_symbol

# a homogeneous component of degree k becomes a symmetric polynomial in k variables
p = u(1) * u(2)
s = gd_transform(p)
print("symbol of u1*u2:", s)
print("back again:", gd_inverse(s))

# D turns into multiplication by x1 + ... + xk
print("symbol of D(u*u1):", gd_transform(total_derivative(u(0) * u(1))))

# brackets with u_m turn into multiplication by P(k, m)
F = u(0) * u(1)
lhs = gd_transform(bracket(F, u(4)), 2)
rhs = sym_bracket(gd_transform(F), u_symbol(4))
print("symbol of {u*u1, u4}:", lhs)
print("matches the symbol rule:", lhs == rhs == gd_transform(F) * P(2, 4))

# symmetric polynomials in three variables
x1, x2, x3 = SymPoly.gens(3)
print("P(3, 3) =", P(3, 3))
print("P(3, 3) == 3*(x1+x2)(x2+x3)(x3+x1):", P(3, 3) == 3 * (x1 + x2) * (x2 + x3) * (x3 + x1))
