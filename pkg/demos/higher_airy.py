"""The p-Airy functions and their kernels.

p = 2 is the classical Airy function. Higher p solve an order-p equation and
oscillate on both sides of the origin while still decaying to the right.
"""

import numpy as np
from scipy.special import airy

from shiftedschur import airy_derivative, airy_kernel, airy_p

xs = np.linspace(-5, 3, 9)
err = max(abs(airy_p(2, x) - airy(x)[0]) for x in xs)
print(f"p = 2 against scipy on [-5, 3]: max error {err:.1e}")

for p in (2, 4, 6):
    sign = (-1) ** (p // 2 + 1)
    res = max(abs(sign * airy_derivative(p, x, p) - x * airy_p(p, x)) for x in (-2, -1, 0, 1, 2))
    print(f"p = {p}: Ai_p(0) = {airy_p(p, 0.0):.10f}, ODE residual {res:.1e}")

print("\nAi_4 on a coarse grid")
for x in np.arange(-6, 7, 2.0):
    print(f"  {x:5.1f} {airy_p(4, x): .6e}")

print(f"\nK_2(0, 0) = {airy_kernel(2, 0.0, 0.0):.12f}, Ai'(0)^2 = {airy(0.0)[1] ** 2:.12f}")
