"""
Sum rules in the unit box
=========================

Integrating the diagonal of a Green's function over the box gives the sum of
inverse eigenvalues.  Here that is done three ways for each wall combination:
from the closed-form kernel, from a 10^4-term eigenfunction series, and by
lowering the order with the third-order diagonal recursion.
"""

import math

import numpy as np

from greensum import boxlab, spectral
from greensum.boxlab import BoundaryCase

# %%
# Closed forms against the series.  The k = -2 series tail is O(1/J), the
# k = -4 tail O(1/J**3).
for case in BoundaryCase:
    exact2, exact4 = boxlab.SUM_RULES[case]
    print(
        f"Case {case.value} ({case.name.lower()}): "
        f"sum 1/gamma^2 = {boxlab.diagonal_sum(case, -2):.12f} (series {boxlab.series_sum(case, -2):.6f}, exact {exact2:.6f}), "
        f"sum 1/gamma^4 = {boxlab.diagonal_sum(case, -4):.12f} (exact {exact4:.6f})"
    )

# %%
# Going down the hierarchy.  Starting from the Dirichlet diagonal x(1 - x)
# and the wall data g(0) = g'(0) = 0, the curvature at the wall is whatever
# makes g vanish at x = 1.
down = spectral.recur_down(lambda x: x * (1 - x), value=0.0, slope=0.0, far=(1.0, "value", 0.0))
print(f"\ncurvature at the wall: {down.curvature:.12f} (expected 2/3)")
xs = np.linspace(0, 1, 6)
print("g_-4(x, x):", np.round([down(x) for x in xs], 10))
print("closed   :", np.round(xs**2 * (1 - xs) ** 2 / 3, 10))

# %%
# The integral identities: g_-1 composed with itself is g_-2.  The log
# singularities at z = x and z = x' are split out by the quadrature hints.
report = boxlab.identity_check("q1", boxlab.default_grid(3))
print(f"\nq1 on a 3x3 grid: max residual {report.max_residual:.2e}")

# %%
# The alternating series f_-1 for Case 2 is a step function.  Its partial sums
# show the usual Gibbs ringing near the jump at u = 1.
for J in (10, 100, 1000):
    print(f"J={J:5d}: half-wave series at u=0.5 -> {boxlab.half_wave_partial(0.5, J):.6f} (limit {math.pi / 2:.6f})")
