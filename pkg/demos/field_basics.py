"""
Arithmetic in GF(2^8)
=====================

Elements are ints; bit i is the coefficient of x^i.
"""

import numpy as np
from nihoperm import default_field, solve_quadratic

# The default modulus is the smallest irreducible of the degree: x^8 + x^4 + x^3 + x + 1.
F = default_field(8)
print(F)

a, b = F(0x57), F(0x83)
print("a + b =", a + b)
print("a * b =", a * b)
print("a / b =", a / b, " check:", (a / b) * b == a)
print("a^254 =", a ** 254, " equals 1/a:", a ** 254 == a.inverse())

# Trace decides whether y^2 + y = c has a root.
print("trace(a) =", a.trace(), " trace(b) =", b.trace())
print("roots of x^2 + a x + b:", sorted(solve_quadratic(a, b)))

# Whole-field work goes through uint64 arrays.
xs = F.all_elements()
cubes = F.vpow(xs, 3)
print("x -> x^3 hits", np.unique(cubes).size, "of", F.order, "elements")
sevens = F.vpow(xs, 7)
print("x -> x^7 hits", np.unique(sevens).size, "of", F.order, "elements")
