"""
Homotopy continuation from scratch
==================================

Solving square polynomial systems by tracking the roots of an easy start
system (powers of one: x_i^{d_i} = 1) as it deforms into the target.
Every isolated solution is found, not just the one nearest a guess.
"""

import numpy as np

from tensegrity import MultiPoly, PolySystem, solve_total_degree

# a cubic with one real and two complex roots: (x - 3)(x - 2 - i)(x - 2 + i)
cubic = PolySystem([MultiPoly.from_univariate(
    np.array([1, -7, 17, -15], dtype=complex))])
print("x^3 - 7x^2 + 17x - 15 = 0:")
for r in solve_total_degree(cubic, seed=0):
    print(f"  {r.endpoint[0]:+.10f}   status={r.status}  "
          f"residual={r.residual:.2e}")

# two variables, total degree 4: all four sign combinations appear
system = PolySystem([
    MultiPoly(2, {(2, 0): 1.0, (0, 0): -1.0}),   # x^2 - 1
    MultiPoly(2, {(0, 2): 1.0, (0, 0): -4.0}),   # y^2 - 4
])
print("\n{x^2 = 1, y^2 = 4}:")
for r in solve_total_degree(system, seed=0):
    x, y = r.endpoint
    print(f"  x={x.real:+.6f}  y={y.real:+.6f}  "
          f"(largest imaginary part {r.max_imag:.1e})")

# recording a path: t runs from 1 to 0, the tracked point trails behind
res = solve_total_degree(cubic, seed=0, record=True)
path = res[0].trajectory
print(f"\nfirst path: {len(path)} recorded points, "
      f"t from {path[0][0]} to {path[-1][0]}")
