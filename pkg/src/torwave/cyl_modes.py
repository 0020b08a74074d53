"""Cylindrical Beltrami eigenmodes ("Bessel beams") of ``curl F = omega F``.

The mode is generated by the Helmholtz scalar
``psi = A Z_l(k_rho rho) exp(i (l phi + k z))`` with ``k_rho = sqrt(omega^2 - k^2)``
via the Chandrasekhar-Kendall construction

    T = curl(psi z_hat),  S = curl(T) / omega,  F = T + S,

which gives, in cylindrical components,

    F_rho = i l psi / rho + (i k / omega) d_rho psi
    F_phi = -d_rho psi - (k l / (omega rho)) psi
    F_z   = (k_rho^2 / omega) psi
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coords import DomainError, cartesian_to_cylindrical
from .field_algebra import HarmonicMode
from .specfun import BesselKind, bessel, bessel_deriv

__all__ = [
    "CylModeSpec",
    "helmholtz_scalar",
    "ck_components",
    "cylindrical_to_cartesian_components",
    "ck_mode",
    "ck_mode_cartesian",
    "as_harmonic_mode",
]


@dataclass(frozen=True)
class CylModeSpec:
    """Parameters of one Bessel beam.

    ``l`` is the angular index about the beam axis and ``k`` the axial
    wavenumber; only propagating beams (``|k| < omega``) are allowed.
    """

    omega: float
    k: float
    l: int
    kind: BesselKind = BesselKind.REGULAR
    amplitude: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", BesselKind.parse(self.kind))
        if int(self.l) != self.l:
            raise ValueError("angular index l must be an integer")
        object.__setattr__(self, "l", int(self.l))
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        if not abs(self.k) < self.omega:
            raise ValueError(f"|k| = {abs(self.k)} must be below omega = {self.omega} (evanescent beam)")
        if self.amplitude == 0:
            raise ValueError("amplitude must be non-zero")

    @property
    def k_rho(self) -> float:
        return float(np.sqrt(self.omega**2 - self.k**2))


def _z_over_x(kind: BesselKind, l: int, x: np.ndarray) -> np.ndarray:
    """``Z_l(x) / x`` with the regular-kind limit at ``x = 0``."""
    at_zero = x == 0
    if kind is BesselKind.SINGULAR or not np.any(at_zero):
        return bessel(kind, l, x) / x
    safe = np.where(at_zero, 1.0, x)
    limit = 0.5 * np.sign(l) if abs(l) == 1 else 0.0
    return np.where(at_zero, limit, bessel(kind, l, safe) / safe)


def _check_rho(spec: CylModeSpec, rho: np.ndarray) -> None:
    if np.any(rho < 0):
        raise DomainError("rho must be non-negative")
    if spec.kind is BesselKind.SINGULAR and np.any(rho == 0):
        raise DomainError("singular-kind Bessel beam is undefined on its axis")


def helmholtz_scalar(spec: CylModeSpec, rho, phi, z, derivatives: bool = False):
    """Generating scalar ``psi`` and optionally its analytic derivatives.

    Returns ``psi`` alone, or ``(psi, d)`` where ``d`` maps ``"rho"``,
    ``"phi"``, ``"z"``, ``"rho_rho"``, ``"phi_phi"``, ``"z_z"`` to the
    corresponding partial derivatives.
    """
    rho, phi, z = np.broadcast_arrays(
        np.asarray(rho, dtype=float), np.asarray(phi, dtype=float), np.asarray(z, dtype=float)
    )
    _check_rho(spec, rho)
    kr = spec.k_rho
    x = kr * rho
    phase = spec.amplitude * np.exp(1j * (spec.l * phi + spec.k * z))
    zl = bessel(spec.kind, spec.l, x)
    psi = zl * phase
    if not derivatives:
        return psi
    zp = bessel_deriv(spec.kind, spec.l, x)
    # Bessel equation: Z'' = -Z'/x - (1 - l^2/x^2) Z
    with np.errstate(divide="ignore", invalid="ignore"):
        zpp = np.where(
            x == 0,
            # regular kind on axis: J_0'' = -1/2, J_2'' = 1/4, others 0
            {0: -0.5, 2: 0.25, -2: 0.25}.get(spec.l, 0.0),
            -zp / x - (1.0 - spec.l**2 / x**2) * zl,
        )
    d = {
        "rho": kr * zp * phase,
        "phi": 1j * spec.l * psi,
        "z": 1j * spec.k * psi,
        "rho_rho": kr * kr * zpp * phase,
        "phi_phi": -(spec.l**2) * psi,
        "z_z": -(spec.k**2) * psi,
    }
    return psi, d


def ck_components(spec: CylModeSpec, rho, phi, z) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cylindrical components ``(F_rho, F_phi, F_z)`` of the eigenmode."""
    rho, phi, z = np.broadcast_arrays(
        np.asarray(rho, dtype=float), np.asarray(phi, dtype=float), np.asarray(z, dtype=float)
    )
    _check_rho(spec, rho)
    kr, k, l, w = spec.k_rho, spec.k, spec.l, spec.omega
    x = kr * rho
    phase = spec.amplitude * np.exp(1j * (l * phi + k * z))
    zl = bessel(spec.kind, l, x)
    zp = bessel_deriv(spec.kind, l, x)
    z_over_rho = kr * _z_over_x(spec.kind, l, x) * phase
    d_rho = kr * zp * phase
    f_rho = 1j * l * z_over_rho + (1j * k / w) * d_rho
    f_phi = -d_rho - (k * l / w) * z_over_rho
    f_z = (kr * kr / w) * zl * phase
    return f_rho, f_phi, f_z


def cylindrical_to_cartesian_components(f_rho, f_phi, f_z, phi) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.stack([f_rho * c - f_phi * s, f_rho * s + f_phi * c, f_z * np.ones_like(c)], axis=-1)


def ck_mode(spec: CylModeSpec, rho, phi, z) -> np.ndarray:
    """Eigenmode at cylindrical points, Cartesian components, shape ``(..., 3)``."""
    f_rho, f_phi, f_z = ck_components(spec, rho, phi, z)
    return cylindrical_to_cartesian_components(f_rho, f_phi, f_z, np.asarray(phi, dtype=float))


def ck_mode_cartesian(spec: CylModeSpec, xyz) -> np.ndarray:
    rho, phi, z = cartesian_to_cylindrical(xyz)
    return ck_mode(spec, rho, phi, z)


def as_harmonic_mode(spec: CylModeSpec) -> HarmonicMode:
    return HarmonicMode(spec.omega, lambda xyz: ck_mode_cartesian(spec, xyz))
