"""
Designing the two field loops
=============================

A single knob ``x = (omega1' - omega1) / omega`` fixes the cone angle shared
by both loops. Everything else follows from it, up to the overall scale of
the transverse field.
"""

import math

import numpy as np

from geogate import solve_forward, solve_inverse, validate

# The symmetric point x = 1 puts both branches on the 45 degree cone.
d = solve_forward(1.0, "minus", omega1=1.0, omega=1.0)
print("x = 1:  omega0 =", d.omega0, " omega0' =", d.omega0_prime, " omega1' =", d.omega1_prime)
print("        cos(theta) =", d.cos_theta, " phi_g =", d.phi_g_predicted)

# Smaller x splits the two branches. The minus branch tilts toward the
# equator, the plus branch toward the pole, and the cone angles always add
# up to a right angle.
print("\n   x     theta-    theta+    sum - pi/2")
for x in np.linspace(0.1, 1.0, 7):
    lo, hi = solve_forward(x, "minus"), solve_forward(x, "plus")
    print(f"{x:5.2f}  {lo.theta:8.5f}  {hi.theta:8.5f}  {lo.theta + hi.theta - math.pi / 2:+.1e}")

# The residual transverse amplitude omega1 is free: it rescales the fields
# but not the cone or the phase.
for w1 in (0.2, 1.0, 5.0):
    e = solve_forward(0.6, "plus", omega1=w1)
    print(f"\nomega1 = {w1}: omega0 = {e.omega0:.6f}, phi_g = {e.phi_g_predicted:.12f}")

# Going the other way, ask for a phase and get a design back.
target = -math.pi / 2
g = solve_inverse(target, omega1=1.0, omega=1.0)
print(f"\nphi_g = -pi/2 -> x = {g.x:.12f} on the {g.branch.value} branch")
print("residuals:", {k: f"{v:.1e}" for k, v in validate(g).residuals.items()})
