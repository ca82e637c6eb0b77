"""
Splitting the acquired phase
============================

Run the cyclic state through both loops and separate the total phase into
its dynamic and geometric parts. The dynamic parts of the two loops cancel,
so the total is purely geometric.
"""

import math

from geogate import RK4, Exact, analytic_phases, simulate_two_loop, solve_forward
from geogate.phases import decompose, solid_angle_phase

d = solve_forward(0.6, "minus")
first, second = simulate_two_loop(d, Exact(), samples=401)
dec = decompose(first, second, d.phi_g_predicted)

print("total      ", dec.total)
print("dynamic    ", dec.dynamic, " per loop:", dec.per_loop_dynamic)
print("geometric  ", dec.geometric)
print("predicted  ", d.phi_g_predicted)

# The per-loop dynamic phases also have closed forms.
one, two = analytic_phases(d)
print("\nclosed-form dynamic phases:", one.dynamic, two.dynamic)

# Each loop traces the same cone on the Bloch sphere. Half the enclosed
# solid angle gives the per-loop geometric phase, independent of the
# Schroedinger evolution used to produce the path.
print("\nsolid angle, loop 1:", solid_angle_phase(first.bloch))
print("solid angle, loop 2:", solid_angle_phase(second.bloch))
print("-pi (1 - cos theta):", -math.pi * (1 - d.cos_theta))

# A direct Runge-Kutta integration of the lab-frame equation agrees.
rk = decompose(*simulate_two_loop(d, RK4(20000), samples=401))
print(f"\nrk4 geometric phase differs by {abs(rk.geometric - dec.geometric):.1e}")
