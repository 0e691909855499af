"""
The sech^2 well and its Lax densities
=====================================

U = -2 alpha^2 sech^2(alpha x) is reflectionless with a single bound state
at -alpha^2.  The Lax densities L_k are multiples of that state squared.
Their integrals are the conserved quantities of the KdV hierarchy.
"""

import numpy as np

from greensum import reflectionless as rl

for alpha in (0.5, 1.0):
    print(f"alpha={alpha}: bound states from shooting {rl.bound_states(alpha)}")
    for k in range(3):
        r = rl.line_integral(lambda x, k=k: rl.lax_diag(k, alpha, x), alpha)
        print(f"  int L_{k} = {r.value:+.10f}   closed {rl.lax_integral(k, alpha):+.1f}   (tail < {r.tail_bound:.0e})")

# %%
# Consecutive densities are linked by the third-order operator.
xs = np.linspace(-3, 3, 61)
print("\nmax recursion residual, k=0:", f"{np.max(np.abs(rl.lax_recursion_residual(0, 1.0, xs))):.2e}")

# %%
# The prefactor of L_k follows from gamma -> i alpha; exact on Gaussian integers.
for k in range(4):
    print(f"k={k}: coefficient of alpha^{2 * k + 1} = {rl.lax_prefactor(k)}")
