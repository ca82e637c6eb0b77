"""
Phase gates about different axes
================================

The two-loop evolution is diagonal in the cyclic basis, so it acts as a
phase gate. Rotating the whole field configuration turns it into a phase
gate about any axis, and two gates about different axes do not commute.
"""

import math

import numpy as np

from geogate import (Exact, GateSpec, gate_fidelity, ideal_phase_gate, simulated_gate,
                     solve_inverse, tilted_gate)
from geogate.gates import commutator_norm, eigenphases

np.set_printoptions(precision=6, suppress=True)

phi = -math.pi / 2
d = solve_inverse(phi, 1.0, 1.0)

u_sim = simulated_gate(d, Exact())
u_ideal = ideal_phase_gate(d)
print("simulated two-loop gate:\n", u_sim)
print("fidelity with the ideal phase gate:", gate_fidelity(u_sim, u_ideal))
print("eigenphases:", eigenphases(u_ideal), " (expected +-", phi, ")")

gz = tilted_gate(GateSpec(phi, 0.0, 0.0), d)
gx = tilted_gate(GateSpec(phi, math.pi / 2, 0.0), d)
print("\ngate about x:\n", gx)
print("same spectrum:", np.allclose(eigenphases(gz), eigenphases(gx)))
print("||[Gz, Gx]||_F =", commutator_norm(gz, gx))
