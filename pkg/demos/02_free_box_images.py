#!/usr/bin/env python3
# At nu = 1 the potential vanishes and the box is free.  The reflection sum
# is then the classical image construction, and Poisson summation makes it
# *exactly* equal to the sine eigenfunction series -- at every lambda, not
# just asymptotically.  This script measures that equality across the box.
import math

import numpy as np

from boxkernel import kernel_pathsum_nu1, kernel_spectral

grid = [math.pi * i / 10.0 for i in range(1, 10)]

for lam in (0.1, 0.5, 2.0):
    worst_abs = 0.0
    at = None
    for ta in grid:
        for tb in grid:
            s = kernel_spectral(1.0, ta, tb, lam).real
            p = kernel_pathsum_nu1(ta, tb, lam).value.real
            if abs(s - p) > worst_abs:
                worst_abs, at = abs(s - p), (ta, tb)
    print(f"lambda={lam:4}: max |spectral - images| = {worst_abs:.3e}  at theta pair {at[0]:.3f},{at[1]:.3f}")

print(
    "\nMachine-epsilon agreement: the two routes are the same function written"
    "\ntwo ways.  The image sum owes its minus sign per reflection to the"
    "\ncoefficient of exp(-z) in sinh(z) = (exp(z) - exp(-z))/2, i.e. to the"
    "\nhalf-order Bessel function inside the closed kernel."
)

# the sign structure is visible near a wall: images suppress the kernel
for theta in (0.1, 0.3, 0.6, 1.0):
    v = kernel_pathsum_nu1(theta, theta, 0.5).value.real
    print(f"diagonal kernel at theta={theta:3.1f}: {v:.6f}")
print("(Dirichlet suppression: the kernel dies as the wall approaches)")
