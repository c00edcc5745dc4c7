"""Finite-epsilon profiles of random strict partitions settle onto a curved limit.

For t_1 = 1/2 the limit is the Logan-Shepp-Vershik-Kerov curve. The expected
profile at epsilon carries an O(epsilon) lattice offset, visible below as the
error roughly halving each time epsilon halves.
"""

import numpy as np

from shiftedschur import density, expected_profile, limit_shape, solve_minimal_multicritical

params = solve_minimal_multicritical(2)
print(f"edge b = {params.edge}")
print(f"{'x':>5} {'Omega(x)':>10} {'density':>8}")
for x in np.linspace(0, 2.5, 6):
    print(f"{x:5.2f} {limit_shape(params, x):10.6f} {density(params, x):8.4f}")

print("\nexpected profile at x = 1 against Omega(1):")
for eps in (1 / 4, 1 / 8, 1 / 16, 1 / 32):
    value = expected_profile(params, eps, 1.0)
    print(f"  eps = 1/{round(1 / eps):<3d} profile {value:.6f}  error {abs(value - limit_shape(params, 1.0)):.2e}")

quartic = solve_minimal_multicritical(4)
print(f"\np = 4 minimal couplings {quartic.t}, edge {quartic.edge:.6f}")
print("density near the edge vanishes like (b - x)^(1/4) instead of a square root:")
for gap in (1e-1, 1e-2, 1e-3):
    print(f"  b - x = {gap:g}: density {density(quartic, quartic.edge - gap):.5f}")
