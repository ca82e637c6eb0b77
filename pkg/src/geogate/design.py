"""
Field design for the two-loop purely geometric phase gate.

A spin starting in the cyclic state ``psi_plus(theta)`` is driven twice
around the same cone of half-angle ``theta`` on the Bloch sphere, first by a
field of polarity +1 and then by a field of polarity -1, both rotating at
angular velocity ``omega``. Requiring the two loops to share the cone and
their dynamic phases to cancel leaves a single free parameter

    x = (omega1' - omega1) / omega,   0 < x <= 1,

from which everything else follows::

    f(x)    = (1 +- sqrt(1 - x**2)) / x
    cos(th) = f / sqrt(f**2 + 1)
    omega0  =  omega + f * omega1
    omega0' = -omega + f * omega1'

The transverse amplitude ``omega1`` remains free and does not affect the
geometric phase ``-2*pi*(1 - cos(th))``.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import DomainError

# geometric phases closer than this to 0 or -2*pi are refused
PHASE_EPS = 1e-7
# kappa = omega0'/omega0 is reported as undefined below this |omega0|
KAPPA_EPS = 1e-12


class Branch(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1


def _branch(branch: Branch | str) -> Branch:
    try:
        return Branch(branch)
    except ValueError:
        raise DomainError(f"branch must be 'plus' or 'minus', got {branch!r}") from None


@dataclass(frozen=True)
class LoopField:
    """One rotating-field schedule.

    The lab-frame Hamiltonian is
    ``polarity * (omega1*cos(wt) X + omega1*sin(wt) Y + omega0 Z) / 2``.
    ``gamma`` is the gyromagnetic ratio, kept only so that field strengths
    can be reported in physical units; it never enters the dynamics.
    """

    omega: float
    omega1: float
    omega0: float
    polarity: int = 1
    gamma: float = 1.0

    def __post_init__(self):
        for name in ("omega", "omega1", "omega0", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.omega <= 0:
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if self.omega1 <= 0:
            raise DomainError(f"omega1 must be > 0, got {self.omega1}")
        if self.polarity not in (1, -1):
            raise DomainError(f"polarity must be +1 or -1, got {self.polarity}")

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega

    def field(self, t: float) -> tuple[float, float, float]:
        """Magnetic field vector at time ``t`` (divided through by ``gamma``)."""
        s = -self.polarity / self.gamma
        wt = self.omega * t
        return (s * self.omega1 * math.cos(wt), s * self.omega1 * math.sin(wt),
                s * self.omega0)


@dataclass(frozen=True)
class TwoLoopDesign:
    """A complete two-loop field design.

    ``x``, ``branch``, ``f``, ``cos_theta``, ``theta`` and
    ``phi_g_predicted`` are the design targets; ``Omega``, ``Omega_prime``
    and ``kappa`` are recomputed from the loop fields, so a design whose
    fields are edited by hand (see :meth:`with_fields`) reports the
    frequencies it actually has.
    """

    loop1: LoopField
    loop2: LoopField
    x: float
    branch: Branch
    f: float
    cos_theta: float
    theta: float
    phi_g_predicted: float

    @property
    def omega(self) -> float:
        return self.loop1.omega

    @property
    def omega1(self) -> float:
        return self.loop1.omega1

    @property
    def omega1_prime(self) -> float:
        return self.loop2.omega1

    @property
    def omega0(self) -> float:
        return self.loop1.omega0

    @property
    def omega0_prime(self) -> float:
        return self.loop2.omega0

    @property
    def Omega(self) -> float:
        return math.hypot(self.omega0 - self.omega, self.omega1)

    @property
    def Omega_prime(self) -> float:
        return math.hypot(self.omega0_prime + self.omega, self.omega1_prime)

    @property
    def kappa(self) -> float | None:
        if abs(self.omega0) < KAPPA_EPS:
            return None
        return self.omega0_prime / self.omega0

    @property
    def period(self) -> float:
        return self.loop1.period

    def with_fields(self, **changes: float) -> "TwoLoopDesign":
        """Copy with some of omega0, omega1, omega0_prime, omega1_prime replaced.

        Targets are left untouched, which is how deliberately broken designs
        are built for testing the validators.
        """
        l1 = {k: changes.pop(k) for k in ("omega0", "omega1") if k in changes}
        l2 = {k[:-6]: changes.pop(k) for k in ("omega0_prime", "omega1_prime")
              if k in changes}
        if changes:
            raise TypeError(f"unknown field(s): {sorted(changes)}")
        return dataclasses.replace(self, loop1=dataclasses.replace(self.loop1, **l1),
                                   loop2=dataclasses.replace(self.loop2, **l2))

    def to_dict(self) -> dict[str, Any]:
        return {
            "omega": self.omega,
            "omega1": self.omega1,
            "omega1_prime": self.omega1_prime,
            "omega0": self.omega0,
            "omega0_prime": self.omega0_prime,
            "x": self.x,
            "branch": self.branch.value,
            "f": self.f,
            "cos_theta": self.cos_theta,
            "theta": self.theta,
            "Omega": self.Omega,
            "Omega_prime": self.Omega_prime,
            "kappa": self.kappa,
            "phi_g_predicted": self.phi_g_predicted,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "TwoLoopDesign":
        """Rebuild a design from :meth:`to_dict` output.

        Derived keys (Omega, Omega_prime, kappa) are ignored.
        """
        try:
            omega = float(d["omega"])
            loop1 = LoopField(omega, float(d["omega1"]), float(d["omega0"]), 1)
            loop2 = LoopField(omega, float(d["omega1_prime"]), float(d["omega0_prime"]), -1)
            return cls(loop1, loop2, float(d["x"]), _branch(d["branch"]), float(d["f"]),
                       float(d["cos_theta"]), float(d["theta"]),
                       float(d["phi_g_predicted"]))
        except KeyError as err:
            raise DomainError(f"design is missing key {err.args[0]!r}") from None
        except (TypeError, ValueError) as err:
            if isinstance(err, DomainError):
                raise
            raise DomainError(f"malformed design: {err}") from None


def f_of_x(x: float, branch: Branch | str) -> float:
    """``(1 +- sqrt(1 - x**2)) / x`` on ``0 < x <= 1``.

    The minus branch is evaluated as ``x / (1 + sqrt(1 - x**2))`` to avoid
    cancellation at small ``x``; the two forms are algebraically equal.
    """
    branch = _branch(branch)
    if not (0 < x <= 1):
        raise DomainError(f"x must lie in the interval (0, 1], got {x}")
    root = math.sqrt(1 - x * x)
    if branch is Branch.PLUS:
        return (1 + root) / x
    return x / (1 + root)


def solve_forward(x: float, branch: Branch | str = Branch.MINUS,
                  omega1: float = 1.0, omega: float = 1.0,
                  gamma: float = 1.0) -> TwoLoopDesign:
    """Fields for a given ``x = (omega1' - omega1)/omega`` and branch of ``f``."""
    branch = _branch(branch)
    return _build(x, branch, f_of_x(x, branch), omega1, omega, gamma)


def _build(x: float, branch: Branch, f: float, omega1: float, omega: float,
           gamma: float) -> TwoLoopDesign:
    if not (omega1 > 0 and math.isfinite(omega1)):
        raise DomainError(f"omega1 must be finite and > 0, got {omega1}")
    if not (omega > 0 and math.isfinite(omega)):
        raise DomainError(f"omega must be finite and > 0, got {omega}")

    omega1_prime = omega1 + x * omega
    loop1 = LoopField(omega, omega1, omega + f * omega1, 1, gamma)
    loop2 = LoopField(omega, omega1_prime, -omega + f * omega1_prime, -1, gamma)
    cos_theta = f / math.hypot(f, 1.0)
    theta = math.atan2(1.0, f)
    return TwoLoopDesign(loop1, loop2, x, branch, f, cos_theta, theta,
                         -2 * math.pi * (1 - cos_theta))


def solve_inverse(phi_g: float, omega1: float = 1.0, omega: float = 1.0,
                  gamma: float = 1.0) -> TwoLoopDesign:
    """Fields producing the geometric phase ``phi_g`` in ``(-2*pi, 0)``.

    ``f = cot(theta)`` and ``x = 2f/(f**2 + 1) = sin(2*theta)``; the minus
    branch is used for ``f <= 1`` and the plus branch otherwise, which keeps
    the map from ``phi_g`` to ``(x, branch)`` single valued. The result is
    the same design :func:`solve_forward` returns for that ``(x, branch)``.
    """
    lo, hi = -2 * math.pi + PHASE_EPS, -PHASE_EPS
    if not (math.isfinite(phi_g) and lo <= phi_g <= hi):
        raise DomainError(
            f"phi_g must lie in the open interval (-2*pi, 0) at least {PHASE_EPS:g} "
            f"from either end, i.e. [{lo:.12g}, {hi:.12g}]; got {phi_g}")
    cos_theta = 1 + phi_g / (2 * math.pi)
    sin_theta = math.sqrt((1 - cos_theta) * (1 + cos_theta))
    f = cos_theta / sin_theta
    x = min(2 * sin_theta * cos_theta, 1.0)
    branch = Branch.MINUS if f <= 1 else Branch.PLUS
    # f is passed through rather than recomputed from x: near x = 1 the
    # branch formula loses half the significant digits
    return _build(x, branch, f, omega1, omega, gamma)


@dataclass(frozen=True)
class ValidationReport:
    """Named residuals of the design constraints.

    ``kappa_consistency`` is ``None`` when kappa is undefined.
    """

    residuals: dict[str, float | None]
    tolerance: float = 1e-9

    @property
    def ok(self) -> bool:
        return all(v is None or v < self.tolerance for v in self.residuals.values())

    @property
    def flagged(self) -> list[str]:
        return [k for k, v in self.residuals.items()
                if v is not None and not v < self.tolerance]

    @property
    def max_residual(self) -> float:
        return max(v for v in self.residuals.values() if v is not None)

    def to_dict(self) -> dict[str, Any]:
        return dict(self.residuals)


def validate(design: TwoLoopDesign, tolerance: float = 1e-9) -> ValidationReport:
    """Residuals of the cone, cancellation, branch and kappa relations.

    The cone residuals are ``|sin(theta - theta_loop)|`` with
    ``tan(theta_loop) = omega1 / (omega0 - omega)`` (loop 1) or
    ``omega1' / (omega0' + omega)`` (loop 2), evaluated without division as
    ``|sin(theta) (omega0 - omega) - cos(theta) omega1| / Omega``. This
    vanishes exactly when the tangent relation holds but, unlike the raw
    tangent difference, stays well conditioned as theta approaches pi/2.

    The cancellation and kappa residuals are the plain differences divided by
    ``max(1, scale / omega)``, where the scale is ``Omega'`` or ``|omega0|``.
    For fields of order ``omega`` they are the plain differences; for very
    large fields (small ``x`` on the plus branch) they become relative, since
    the absolute form there only measures rounding of the stored fields.

    Never raises for finite input; undefined residuals are reported as ``inf``.
    """
    d = design
    w = d.omega
    s, c = math.sin(d.theta), math.cos(d.theta)

    def ratio(num, den):
        return num / den if den != 0 else math.inf

    residuals: dict[str, float | None] = {
        "cone_loop1": ratio(abs(s * (d.omega0 - w) - c * d.omega1), d.Omega),
        "cone_loop2": ratio(abs(s * (d.omega0_prime + w) - c * d.omega1_prime), d.Omega_prime),
        "dynamic_cancellation": abs(2 * d.cos_theta - (d.Omega_prime - d.Omega) / w)
        / max(1.0, d.Omega_prime / w),
    }
    try:
        residuals["branch_product"] = abs(
            f_of_x(d.x, Branch.PLUS) * f_of_x(d.x, Branch.MINUS) - 1)
    except DomainError:
        residuals["branch_product"] = math.inf
    kappa = d.kappa
    if kappa is None:
        residuals["kappa_consistency"] = None
    else:
        den = d.omega1_prime - kappa * d.omega1
        residuals["kappa_consistency"] = abs(
            d.omega0 - w - ratio((1 + kappa) * d.omega1 * w, den)) / max(1.0, abs(d.omega0) / w)
    for k, v in residuals.items():
        if v is not None and math.isnan(v):
            residuals[k] = math.inf
    return ValidationReport(residuals, tolerance)
