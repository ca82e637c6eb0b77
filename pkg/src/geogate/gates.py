"""
Single-qubit gates built from the two-loop geometric phase.

In the cyclic basis ``{psi_plus, psi_minus}`` the two-loop evolution is
``diag(exp(i phi_g), exp(-i phi_g))``. Conjugating by an axis rotation
gives the same phase gate about any other axis; two such gates about
different axes do not commute, which is what universality needs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .design import TwoLoopDesign
from .errors import DomainError
from .evolve import EvolutionMethod, Exact, evolve, propagator_exact
from .qmath import PauliCoeffs, Unitary2, dagger, exp_minus_iHt, unitarity_defect

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class GateSpec:
    """Phase gate about the axis at polar angle ``axis_polar``, azimuth ``axis_azimuth``."""

    phi_g: float
    axis_polar: float = 0.0
    axis_azimuth: float = 0.0

    def __post_init__(self):
        if not -TWO_PI < self.phi_g < 0:
            raise DomainError(f"phi_g must lie in (-2*pi, 0), got {self.phi_g}")
        if not 0 <= self.axis_polar <= math.pi:
            raise DomainError(f"axis_polar must lie in [0, pi], got {self.axis_polar}")
        if not 0 <= self.axis_azimuth < TWO_PI:
            raise DomainError(f"axis_azimuth must lie in [0, 2*pi), got {self.axis_azimuth}")


def s_operation(theta: float) -> Unitary2:
    """``exp(-i theta Y / 2)``: spin up to ``psi_plus(theta)``, spin down to ``psi_minus(theta)``."""
    if not 0 <= theta <= math.pi / 2:
        raise DomainError(f"theta must lie in [0, pi/2], got {theta}")
    return exp_minus_iHt(PauliCoeffs(0.0, 0.0, 0.5 * theta, 0.0), 1.0)


def axis_rotation(polar: float, azimuth: float) -> Unitary2:
    """Rotation carrying the z axis to the direction ``(polar, azimuth)``."""
    rz = exp_minus_iHt(PauliCoeffs(0.0, 0.0, 0.0, 0.5 * azimuth), 1.0)
    ry = exp_minus_iHt(PauliCoeffs(0.0, 0.0, 0.5 * polar, 0.0), 1.0)
    return rz @ ry


def ideal_phase_gate(design: TwoLoopDesign) -> Unitary2:
    s = s_operation(design.theta)
    phi = design.phi_g_predicted
    d = np.diag([np.exp(1j * phi), np.exp(-1j * phi)])
    return s @ d @ dagger(s)


def simulated_gate(design: TwoLoopDesign, method: EvolutionMethod = Exact()) -> Unitary2:
    """Two-loop propagator ``P2(T) @ P1(T)`` with ``T = 2*pi/omega``.

    For ``RK4`` the two basis states are integrated separately and stacked
    as columns.
    """
    T = design.period
    if isinstance(method, Exact):
        return propagator_exact(design.loop2, T) @ propagator_exact(design.loop1, T)
    cols = []
    for e in np.eye(2, dtype=complex):
        first = evolve(design.loop1, e, T, method, 2)
        cols.append(evolve(design.loop2, first.final, T, method, 2).final)
    return np.column_stack(cols)


def tilted_gate(spec: GateSpec, design: TwoLoopDesign) -> Unitary2:
    if abs(spec.phi_g - design.phi_g_predicted) > 1e-10:
        raise DomainError(
            f"design phase {design.phi_g_predicted} does not match gate phase {spec.phi_g}")
    r = axis_rotation(spec.axis_polar, spec.axis_azimuth)
    return r @ ideal_phase_gate(design) @ dagger(r)


def gate_fidelity(u: Unitary2, v: Unitary2) -> float:
    """``|Tr(u^dagger v)| / 2``; insensitive to global phase."""
    for name, m in (("u", u), ("v", v)):
        if np.shape(m) != (2, 2):
            raise DomainError(f"{name} must be 2x2")
        if unitarity_defect(np.asarray(m)) > 1e-9:
            raise DomainError(f"{name} is not unitary")
    f = abs(np.trace(dagger(u) @ v)) / 2
    return float(min(f, 1.0))


def eigenphases(u: Unitary2) -> np.ndarray:
    """Sorted eigenvalue arguments of ``u`` in ``(-pi, pi]``."""
    return np.sort(np.angle(np.linalg.eigvals(u)))


def commutator_norm(u: np.ndarray, v: np.ndarray) -> float:
    return float(np.linalg.norm(u @ v - v @ u))


def gate_to_dict(u: Unitary2) -> list[list[float]]:
    """Row-major ``[re, im]`` pairs."""
    return [[float(z.real), float(z.imag)] for z in np.asarray(u).ravel()]
