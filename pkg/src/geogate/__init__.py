"""Field design and simulation for two-loop nonadiabatic geometric phase gates on a spin-1/2."""

from .design import (Branch, LoopField, TwoLoopDesign, ValidationReport, f_of_x,
                     solve_forward, solve_inverse, validate)
from .errors import AmbiguousPathError, DomainError, UndefinedPhaseError
from .evolve import (RK4, Exact, Trajectory, bloch_vector, evolve, hamiltonian_lab,
                     hamiltonian_rotating, propagator_exact)
from .gates import (GateSpec, gate_fidelity, ideal_phase_gate, s_operation,
                    simulated_gate, tilted_gate)
from .phases import (PhaseDecomposition, analytic_phases, canonical_phase,
                     decompose_two_loop, dynamic_phase, pancharatnam_phase,
                     simulate_two_loop, solid_angle_phase)
from .qmath import PauliCoeffs, apply, exp_minus_iHt, inner, psi_minus, psi_plus

__version__ = "0.1.0"
