"""
Analytic heights of split bundles
=================================

For O(a_1) + ... + O(a_r) over P^n the height is the top Segre number, a
complete homogeneous polynomial in the twists.  The degree-3 Schur
coordinates of -R_4/2 in rank 3 end with -1/6.
"""

from bottchern import SplitBundleSpec, analytic_height, third_schur_coefficient
from bottchern.series import SCHUR_BASIS_DEG3, height_secondary_term

for twists, n in [((1, 1), 1), ((3,), 3), ((1, 2), 2), ((0, 0), 2)]:
    spec = SplitBundleSpec(twists, n)
    line = f"O{twists} over P^{n}: height {analytic_height(spec)}"
    if spec.r > 1:
        line += f", secondary term {height_secondary_term(spec)}"
    print(line)

coeff, coords = third_schur_coefficient()
for name, x in zip(SCHUR_BASIS_DEG3, coords):
    print(f"{str(x):>8}  {name}")
