"""
Supersymmetric partners and the second-order sum rule
=====================================================

A nodeless solution psi at energy eps builds both the Green's function of U
and of its partner U' = U - 2 (ln psi)''.  The product of the two diagonals
integrates to the second-order sum over (eps - E_n)**-2.
"""

import math

import numpy as np

from greensum import eigensolve, susy

# %%
# Dirichlet box with the seed psi = x at eps = 0.  The partner is 2/x**2 and
# S2 = sum (j pi)**-4 = 1/90 comes out the same along all four routes.
for route, value in susy.box_four_way().items():
    print(f"{route:15s} {value:.14f}")
print(f"{'1/90':15s} {1 / 90:.14f}")

# %%
# The partner eigenfunctions are spherical Bessel functions, -sqrt(2) t j1(t)
# with t = j pi x.  They stay orthonormal on the box.
for j in (1, 2, 3):
    print(f"j={j}: psi'_j(1)^2 = {susy.box_partner_eigenfunction(j, 1.0) ** 2:.12f}")

# %%
# Oscillator U = x**2, even sector, seed exp(x**2/2) at eps = -1.  Both
# diagonals have closed forms (scaled erfc and Dawson's integral).
report = susy.oscillator_suite()
print(f"\n-2 int G^2 G'  = {report.ss1:.12f}")
print(f"-2 int G'^2 G  = {report.ss2:.12f}")
print(f"pi^2/32        = {report.ss3:.12f}")

# %%
# 1/psi is normalisable here, so the partner x**2 - 2 gains a level at eps.
prob_e = eigensolve.EigenProblem.even(lambda x: np.asarray(x) ** 2 - 2.0, 9.0)
prob_o = eigensolve.EigenProblem.odd(lambda x: np.asarray(x) ** 2 - 2.0, 9.0)
levels = sorted([*eigensolve.solve_spectrum(prob_e, 3).values, *eigensolve.solve_spectrum(prob_o, 3).values])
print("\npartner levels:", np.round(levels[:5], 8))

# %%
# The first-order sum over 1/(2n + 1) has no finite value: it grows like ln(N)/2.
print(f"fitted slope of the partial sums against ln N: {susy.oscillator_log_slope():.4f}")
