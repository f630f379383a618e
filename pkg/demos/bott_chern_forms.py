"""
Bott-Chern forms at the center of a normal frame
================================================

Random curvature data for a rank-3 bundle over a surface, the closed
formula for the Bott-Chern forms of the relative Euler sequence, and the
brute-force determinant it is compared against.
"""

import random

from bottchern import CurvatureData, random_curvature, bott_chern_form, tilde_c_oracle
from bottchern.combinatorics import harmonic

# curvature coefficients gamma[l, m, j, k] with small Gaussian-rational entries
data = random_curvature(3, 2, random.Random(1), hermitian=True)
C = data.matrix
print(data)

# the closed formula and the oracle agree term by term; for d >= r over a
# surface every surviving fiber degree has a vanishing binomial, so d = 3 is 0
for d in range(4):
    form = bott_chern_form(d, C)
    print(d, form == tilde_c_oracle(d, C), len(form.terms), "terms")

# the degree-2 form is minus the Fubini-Study form at the center
print(bott_chern_form(1, C) == -C.universe.omega())

# a flat bundle reduces to -H_d times a power of the Fubini-Study form
flat = CurvatureData(3, 2).matrix
omega = flat.universe.omega()
print([bott_chern_form(d, flat) == omega ** d * -harmonic(d) for d in range(1, 4)])
