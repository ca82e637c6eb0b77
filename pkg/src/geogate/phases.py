"""
Phase bookkeeping for cyclic evolutions.

The total (Pancharatnam) phase ``arg <psi(0)|psi(T)>`` is split into the
dynamic part ``-integral <psi|H|psi> dt`` and the geometric remainder.
Reported totals and geometric phases live in ``(-2*pi, 0]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import simpson

from .design import TwoLoopDesign
from .errors import AmbiguousPathError, DomainError, UndefinedPhaseError
from .evolve import EvolutionMethod, Exact, Trajectory, evolve
from .qmath import CVec2, inner, psi_plus

TWO_PI = 2 * math.pi
# overlaps below this have no usable phase
MIN_OVERLAP = 1e-6


def canonical_phase(phi: float) -> float:
    """Map ``phi`` into ``(-2*pi, 0]``."""
    r = math.fmod(phi, TWO_PI)
    if r > 0:
        r -= TWO_PI
    return 0.0 if r == 0 else r


def phase_distance(a: float, b: float) -> float:
    """Distance between two angles on the circle, in ``[0, pi]``."""
    return abs(math.remainder(a - b, TWO_PI))


def pancharatnam_phase(psi0: CVec2, psiT: CVec2) -> float:
    """``arg <psi0|psiT>`` in ``(-pi, pi]``."""
    ov = inner(psi0, psiT)
    if abs(ov) <= MIN_OVERLAP:
        raise UndefinedPhaseError(
            f"|<psi0|psiT>| = {abs(ov):.3g} is below {MIN_OVERLAP:g}; phase undefined")
    phi = math.atan2(ov.imag, ov.real)
    return math.pi if phi == -math.pi else phi


def dynamic_phase(traj: Trajectory) -> float:
    """``-integral <psi|H|psi> dt`` by composite Simpson over the samples.

    The sample count must be odd so that the composite rule applies without
    an end correction.
    """
    n = len(traj)
    if n < 3:
        raise DomainError(f"dynamic phase needs at least 3 samples, got {n}")
    if n % 2 == 0:
        raise DomainError(f"dynamic phase needs an odd number of samples, got {n}")
    return -float(simpson(traj.h_expect, x=traj.times))


@dataclass(frozen=True)
class PhaseDecomposition:
    total: float
    dynamic: float
    geometric: float
    cyclicity_defect: float
    per_loop_dynamic: tuple[float, float]
    phi_g_predicted: float | None = None

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "dynamic": self.dynamic,
            "geometric": self.geometric,
            "cyclicity_defect": self.cyclicity_defect,
            "per_loop_dynamic": list(self.per_loop_dynamic),
            "phi_g_predicted": self.phi_g_predicted,
        }


def simulate_two_loop(design: TwoLoopDesign, method: EvolutionMethod = Exact(),
                      samples: int = 401,
                      psi0: CVec2 | None = None) -> tuple[Trajectory, Trajectory]:
    """Run loop 1 for one period, then loop 2 (clock restarted) from its end state.

    ``psi0`` defaults to ``psi_plus(design.theta)``.
    """
    if psi0 is None:
        psi0 = psi_plus(design.theta)
    T = design.period
    first = evolve(design.loop1, psi0, T, method, samples)
    second = evolve(design.loop2, first.final, T, method, samples)
    return first, second


def decompose(first: Trajectory, second: Trajectory,
              phi_g_predicted: float | None = None) -> PhaseDecomposition:
    """Phase decomposition of two consecutive loop trajectories."""
    psi0, psiT = first.initial, second.final
    overlap = abs(inner(psi0, psiT))
    total = canonical_phase(pancharatnam_phase(psi0, psiT))
    per_loop = (dynamic_phase(first), dynamic_phase(second))
    dynamic = per_loop[0] + per_loop[1]
    return PhaseDecomposition(
        total=total,
        dynamic=dynamic,
        geometric=canonical_phase(total - dynamic),
        cyclicity_defect=max(0.0, 1.0 - overlap),
        per_loop_dynamic=per_loop,
        phi_g_predicted=phi_g_predicted,
    )


def decompose_two_loop(design: TwoLoopDesign, method: EvolutionMethod = Exact(),
                       samples: int = 401, psi0: CVec2 | None = None) -> PhaseDecomposition:
    if samples < 3 or samples % 2 == 0:
        raise DomainError(f"samples must be odd and >= 3, got {samples}")
    first, second = simulate_two_loop(design, method, samples, psi0)
    return decompose(first, second, design.phi_g_predicted)


class LoopPhases(NamedTuple):
    geometric: float
    dynamic: float


def analytic_phases(design: TwoLoopDesign) -> tuple[LoopPhases, LoopPhases]:
    """Closed-form per-loop phases of ``psi_plus`` on the design's cone."""
    c, w = design.cos_theta, design.omega
    g = -math.pi * (1 - c)
    return (LoopPhases(g, -math.pi * (c + design.Omega / w)),
            LoopPhases(g, -math.pi * (c - design.Omega_prime / w)))


def _triangle_solid_angle(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    # Van Oosterom-Strackee: tan(E/2) = a.(b x c) / (1 + a.b + b.c + c.a)
    num = np.einsum("...i,...i", a, np.cross(b, c))
    den = 1 + np.einsum("...i,...i", a, b) + np.einsum("...i,...i", b, c) \
        + np.einsum("...i,...i", c, a)
    return 2 * np.arctan2(num, den)


def solid_angle_phase(bloch_path, closed: bool = True, tol: float = 1e-6) -> float:
    """Aharonov-Anandan phase ``-Omega/2`` of a Bloch-sphere path.

    ``Omega`` is the signed solid angle enclosed by the geodesic polygon
    through the points, positive for counter-clockwise traversal seen from
    outside. A path with ``closed=False`` is closed by the geodesic from its
    last point back to its first. The fan apex is the direction of the
    polygon's vector area, which lies inside any convex cap curve.
    """
    p = np.asarray(bloch_path, dtype=float)
    if p.ndim != 2 or p.shape[1] != 3 or len(p) < 3:
        raise DomainError("bloch_path must be at least 3 points of shape (3,)")
    p = p / np.linalg.norm(p, axis=1, keepdims=True)
    if closed:
        if np.linalg.norm(p[0] - p[-1]) > tol:
            raise DomainError("closed path must end where it starts")
        p = p[:-1]
    ring = np.roll(p, -1, axis=0)
    cos_step = np.einsum("ij,ij->i", p, ring)
    if np.any(cos_step <= 0):
        k = int(np.argmin(cos_step))
        raise AmbiguousPathError(
            f"points {k} and {(k + 1) % len(p)} are {math.degrees(math.acos(min(1, max(-1, cos_step[k])))):.1f}"
            " degrees apart; consecutive points must be closer than 90 degrees")

    apex = np.cross(p, ring).sum(axis=0)
    if np.linalg.norm(apex) < 1e-12:
        apex = p.sum(axis=0)
    if np.linalg.norm(apex) < 1e-12:
        apex = p[0]
    apex = apex / np.linalg.norm(apex)

    omega = _triangle_solid_angle(np.broadcast_to(apex, p.shape), p, ring).sum()
    return -0.5 * float(omega)
