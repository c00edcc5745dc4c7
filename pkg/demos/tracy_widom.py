"""Degree-p Tracy-Widom distributions as Fredholm determinants.

F_2 is the GUE law. The finite model gives an independent check: the chance
that the largest part stays below the scaled edge position.
"""

import numpy as np

from shiftedschur import largest_part_law, tw_cdf

print(f"{'s':>5} {'F_2':>10} {'F_4':>10}")
for s in np.arange(-4, 3.01, 1.0):
    print(f"{s:5.1f} {tw_cdf(2, s):10.7f} {tw_cdf(4, s):10.7f}")

print("\nlargest part law at eps = 1/4 and 1/8 against F_2")
for s in (-2.0, -1.0, 0.0, 1.0):
    finite = [largest_part_law(2, s, e) for e in (1 / 4, 1 / 8)]
    print(f"  s = {s:4.1f}: {finite[0]:.5f}  {finite[1]:.5f}  limit {tw_cdf(2, s):.5f}")
