"""
Closed-form 2x2 complex linear algebra.

States are complex numpy arrays of shape ``(2,)`` and operators are complex
arrays of shape ``(2, 2)``. A Hermitian generator is carried in Pauli
coefficient form ``H = c0*I + cx*X + cy*Y + cz*Z`` so that its exponential
can be written down directly (Rodrigues form) instead of going through a
general-purpose ``expm``.
"""
from __future__ import annotations

import math
import cmath
from typing import NamedTuple

import numpy as np

from .errors import DomainError

# aliases used in signatures; both are plain ndarrays
CVec2 = np.ndarray
Unitary2 = np.ndarray

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# below this the rotation axis is undefined and the rotation part is I
_ZERO_NORM = 1e-300


class PauliCoeffs(NamedTuple):
    """Coefficients of ``c0*I + cx*X + cy*Y + cz*Z`` (angular frequency units)."""

    c0: float
    cx: float
    cy: float
    cz: float

    def matrix(self) -> np.ndarray:
        return (self.c0 * IDENTITY + self.cx * SIGMA_X
                + self.cy * SIGMA_Y + self.cz * SIGMA_Z)

    def __neg__(self) -> "PauliCoeffs":
        return PauliCoeffs(-self.c0, -self.cx, -self.cy, -self.cz)


def exp_minus_iHt(h: PauliCoeffs, t: float) -> Unitary2:
    """Return ``exp(-i H t)`` for ``H`` given in Pauli form.

    Uses ``exp(-i(c0 + c.sigma)t) = exp(-i c0 t)(cos(|c|t) I - i sin(|c|t) c_hat.sigma)``.
    """
    c0, cx, cy, cz = (float(v) for v in h)
    t = float(t)
    if not all(math.isfinite(v) for v in (c0, cx, cy, cz, t)):
        raise DomainError(f"non-finite Hamiltonian or time: h={tuple(h)}, t={t}")

    global_phase = cmath.exp(-1j * c0 * t)
    norm = math.sqrt(cx * cx + cy * cy + cz * cz)
    if norm < _ZERO_NORM:
        return global_phase * IDENTITY.copy()

    angle = norm * t
    c = math.cos(angle)
    s = math.sin(angle) / norm
    nx, ny, nz = s * cx, s * cy, s * cz
    u = np.array([[c - 1j * nz, -ny - 1j * nx],
                  [ny - 1j * nx, c + 1j * nz]], dtype=complex)
    return global_phase * u


def apply(u: Unitary2, s: CVec2) -> CVec2:
    return u @ s


def inner(a: CVec2, b: CVec2) -> complex:
    """``<a|b>``, conjugating the first argument."""
    return complex(np.vdot(a, b))


def norm(s: CVec2) -> float:
    return float(np.sqrt(np.real(np.vdot(s, s))))


def dagger(u: np.ndarray) -> np.ndarray:
    return u.conj().T


def unitarity_defect(u: np.ndarray) -> float:
    """Largest entrywise deviation of ``u^dagger u`` from the identity."""
    return float(np.max(np.abs(dagger(u) @ u - IDENTITY)))


def psi_plus(theta: float) -> CVec2:
    """Cyclic state ``(cos(theta/2), sin(theta/2))``, spin up along the cone axis."""
    return np.array([math.cos(theta / 2), math.sin(theta / 2)], dtype=complex)


def psi_minus(theta: float) -> CVec2:
    """Cyclic state ``(-sin(theta/2), cos(theta/2))``, orthogonal to :func:`psi_plus`."""
    return np.array([-math.sin(theta / 2), math.cos(theta / 2)], dtype=complex)
