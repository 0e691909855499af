"""
Power-law wells |x|^alpha
=========================

At zero energy the Schroedinger equation in |x|^alpha is solved by Bessel
functions of order nu = 1/(alpha + 2).  That gives the eigenvalue sums over
each parity in closed form.  This script checks them against a shooting
solver, compares the WKB levels, and builds the partner potential with its
extra E = 0 state.
"""

import numpy as np

from greensum import powerlaw
from greensum.powerlaw import PowerLawPotential

alpha = 4.0
p = PowerLawPotential(alpha)
nu = p.nu

# %%
# Gamma-function sums and the same sums from the zero-energy kernels.
print(f"alpha={alpha:g}, nu={nu:.6f}")
for label, formula in (("even", powerlaw.sum_even), ("odd", powerlaw.sum_odd)):
    print(f"  {label:5s}: Gamma formula {formula(nu):.12f}, -int G(x,x) {powerlaw.diagonal_sum(p, label):.12f}")
print(f"  alternating: {powerlaw.sum_alternating(nu):.12f}")

# %%
# Shooting: 40 levels per parity plus a Hurwitz-zeta WKB tail.  Only one
# pairing of formulas with parity sectors survives.
sums = powerlaw.shooting_sums(alpha, 40)
print(f"\nshooting sums: even {sums.even:.9f}, odd {sums.odd:.9f}, alternating {sums.alternating:.9f}")
print("assignment:", powerlaw.resolve_parity(alpha).assignment)

# %%
# WKB against shooting for the even levels n = 0, 2, 4, ...
even = powerlaw.spectrum(alpha, "even", 21)
for n in (0, 10, 20, 40):
    wkb = powerlaw.wkb_eigenvalue(p, n)
    print(f"  n={n:2d}: shooting {even[n // 2]:.8f}  WKB {wkb:.8f}  rel.err {abs(wkb / even[n // 2] - 1):.2e}")

# %%
# The partner is built from 1/Psi, the zero-energy even solution.  It
# keeps the spectrum and adds a level at E = 0.
base = sorted(powerlaw.spectrum(alpha, "even", 3) + powerlaw.spectrum(alpha, "odd", 3))
partner = sorted(powerlaw.partner_spectrum(alpha, "even", 3) + powerlaw.partner_spectrum(alpha, "odd", 3))
print("\nbase levels   :", np.round(base[:5], 6))
print("partner levels:", np.round(partner[:6], 6))
print(f"-int G'(x,x) dx = {powerlaw.partner_diagonal_sum(p):.12f}")

# %%
# Figure data, U, U' and the E = 0 state for n = 2..8 at a few points.
for n in (2, 4, 6, 8):
    d = powerlaw.emit_figure_data(n, samples=9)
    print(f"n={n}: U' =", np.array2string(d["U_partner"], precision=3, suppress_small=True, floatmode="fixed"))
