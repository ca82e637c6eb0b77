"""
Spin evolution under a single rotating-field loop.

Two independent routes are provided. The exact route uses the rotating-frame
factorisation

    U(t) = exp(-i Z omega t / 2) exp(-i H_rot t),

which solves the lab-frame Schroedinger equation for any initial state. The
``RK4`` route integrates ``i dpsi/dt = H(t) psi`` directly with fixed-step
classical Runge-Kutta and serves as the check on the first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import _io
from .design import LoopField
from .errors import DomainError
from .qmath import CVec2, PauliCoeffs, Unitary2, exp_minus_iHt

CSV_HEADER = ("t", "re0", "im0", "re1", "im1", "nx", "ny", "nz", "h_expect")


@dataclass(frozen=True)
class Exact:
    """Closed-form rotating-frame propagator."""


@dataclass(frozen=True)
class RK4:
    """Fixed-step RK4 with ``steps`` steps over the whole duration."""

    steps: int = 20000

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 100:
            raise DomainError(f"rk4 needs an integer step count >= 100, got {self.steps}")


EvolutionMethod = Union[Exact, RK4]


def hamiltonian_lab(loop: LoopField, t: float) -> PauliCoeffs:
    half = 0.5 * loop.polarity
    wt = loop.omega * t
    return PauliCoeffs(0.0, half * loop.omega1 * math.cos(wt),
                       half * loop.omega1 * math.sin(wt), half * loop.omega0)


def hamiltonian_rotating(loop: LoopField) -> PauliCoeffs:
    """Time-independent Hamiltonian in the frame rotating at ``omega`` about z."""
    half = 0.5 * loop.polarity
    return PauliCoeffs(0.0, half * loop.omega1, 0.0, half * loop.omega0 - 0.5 * loop.omega)


def propagator_exact(loop: LoopField, t: float) -> Unitary2:
    frame = exp_minus_iHt(PauliCoeffs(0.0, 0.0, 0.0, 0.5 * loop.omega), t)
    return frame @ exp_minus_iHt(hamiltonian_rotating(loop), t)


def bloch_vector(s: CVec2) -> np.ndarray:
    """``(<X>, <Y>, <Z>)`` for a state or a stack of states of shape ``(..., 2)``."""
    s = np.asarray(s)
    a0, a1 = s[..., 0], s[..., 1]
    c = np.conj(a0) * a1
    return np.stack([2 * c.real, 2 * c.imag, np.abs(a0) ** 2 - np.abs(a1) ** 2], axis=-1)


def expectation(h: PauliCoeffs, s: CVec2) -> float:
    """``<s|H|s>`` for normalized ``s``."""
    n = bloch_vector(s)
    return float(h.c0 + h.cx * n[0] + h.cy * n[1] + h.cz * n[2])


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled evolution. Arrays are made read-only on construction."""

    times: np.ndarray
    states: np.ndarray
    bloch: np.ndarray
    h_expect: np.ndarray

    def __post_init__(self):
        for name in ("times", "states", "bloch", "h_expect"):
            getattr(self, name).setflags(write=False)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0])

    @property
    def initial(self) -> CVec2:
        return self.states[0]

    @property
    def final(self) -> CVec2:
        return self.states[-1]

    def rows(self):
        for t, s, n, h in zip(self.times, self.states, self.bloch, self.h_expect):
            yield (t, s[0].real, s[0].imag, s[1].real, s[1].imag, n[0], n[1], n[2], h)

    def to_csv(self) -> str:
        return _io.csv_text(CSV_HEADER, self.rows())

    def shifted(self, dt: float) -> "Trajectory":
        return Trajectory(self.times + dt, self.states.copy(), self.bloch.copy(),
                          self.h_expect.copy())

    @classmethod
    def concatenate(cls, first: "Trajectory", second: "Trajectory") -> "Trajectory":
        """Join two consecutive loops, dropping the duplicated junction sample.

        The second trajectory's clock is offset so that times stay increasing.
        """
        second = second.shifted(first.times[-1] - second.times[0])
        return cls(np.concatenate([first.times, second.times[1:]]),
                   np.concatenate([first.states, second.states[1:]]),
                   np.concatenate([first.bloch, second.bloch[1:]]),
                   np.concatenate([first.h_expect, second.h_expect[1:]]))


def _rk4_segment(loop: LoopField, a: complex, b: complex, t0: float, h: float,
                 n: int) -> tuple[complex, complex]:
    # dpsi/dt = -i H(t) psi with H = p/2 [[w0, w1 e^{-iwt}], [w1 e^{iwt}, -w0]]
    p = 0.5 * loop.polarity
    w, w0, w1 = loop.omega, p * loop.omega0, p * loop.omega1
    ih = -1j * h
    for k in range(n):
        t = t0 + k * h
        e0 = w1 * complex(math.cos(w * t), math.sin(w * t))
        tm = t + 0.5 * h
        em = w1 * complex(math.cos(w * tm), math.sin(w * tm))
        t1 = t + h
        e1 = w1 * complex(math.cos(w * t1), math.sin(w * t1))

        ka = ih * (w0 * a + e0.conjugate() * b)
        kb = ih * (e0 * a - w0 * b)
        a2, b2 = a + 0.5 * ka, b + 0.5 * kb
        la = ih * (w0 * a2 + em.conjugate() * b2)
        lb = ih * (em * a2 - w0 * b2)
        a3, b3 = a + 0.5 * la, b + 0.5 * lb
        ma = ih * (w0 * a3 + em.conjugate() * b3)
        mb = ih * (em * a3 - w0 * b3)
        a4, b4 = a + ma, b + mb
        na = ih * (w0 * a4 + e1.conjugate() * b4)
        nb = ih * (e1 * a4 - w0 * b4)

        a = a + (ka + 2 * la + 2 * ma + na) / 6
        b = b + (kb + 2 * lb + 2 * mb + nb) / 6
    return a, b


def evolve(loop: LoopField, psi0: CVec2, duration: float,
           method: EvolutionMethod = Exact(), samples: int = 401) -> Trajectory:
    """Evolve ``psi0`` under ``loop`` for ``duration`` and sample evenly.

    For ``RK4(steps)`` each of the ``samples - 1`` intervals is integrated
    with ``ceil(steps / (samples - 1))`` equal steps, so the step size is
    exactly ``duration / steps`` whenever the division is even.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (2,):
        raise DomainError(f"psi0 must have shape (2,), got {psi0.shape}")
    if abs(np.vdot(psi0, psi0).real - 1) > 1e-9:
        raise DomainError("psi0 must be normalized")
    if not (math.isfinite(duration) and duration > 0):
        raise DomainError(f"duration must be finite and > 0, got {duration}")
    if int(samples) != samples or samples < 2:
        raise DomainError(f"samples must be an integer >= 2, got {samples}")
    samples = int(samples)

    dt = duration / (samples - 1)
    times = np.arange(samples) * dt
    times[-1] = duration
    states = np.empty((samples, 2), dtype=complex)

    if isinstance(method, Exact):
        for i, t in enumerate(times):
            states[i] = propagator_exact(loop, t) @ psi0
    elif isinstance(method, RK4):
        sub = -(-method.steps // (samples - 1))
        a, b = complex(psi0[0]), complex(psi0[1])
        states[0] = psi0
        for i in range(1, samples):
            t0 = times[i - 1]
            a, b = _rk4_segment(loop, a, b, t0, (times[i] - t0) / sub, sub)
            states[i] = a, b
    else:
        raise DomainError(f"unknown evolution method {method!r}")

    bloch = bloch_vector(states)
    h_expect = np.array([expectation(hamiltonian_lab(loop, t), s)
                         for t, s in zip(times, states)])
    return Trajectory(times, states, bloch, h_expect)
