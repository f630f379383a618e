"""
Segre forms and the secondary classes S and R
=============================================

Fiber integrals give the Segre forms; the universal polynomials give S and R
in terms of Segre classes, and specializing them recovers the fiber
integrals exactly.
"""

import random

from bottchern import random_curvature, segre_direct, S_direct, S_formula, universal_R, universal_S
from bottchern.pushforward import R_direct

C = random_curvature(3, 2, random.Random(7)).matrix
u = C.universe

segre = [segre_direct(m, C) for m in range(1, 3)]

# S and R as polynomials in s'_1, s'_2
S, R = universal_S(3, 2), universal_R(3, 2)
for m in range(3):
    print(f"S_{m + 1} =", S.part(m), "   R_" + str(m + 1), "=", R.part(m))

# two routes to S agree, and so does the universal polynomial
for m in range(3):
    value = S_formula(m, C)
    print(m, value == S_direct(m, C), S.part(m).evaluate(segre, u.one()) == value,
          R.part(m).evaluate(segre, u.one()) == R_direct(m, C))
