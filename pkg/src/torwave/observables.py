"""Energy, Poynting flux, mass and spin of harmonic fields in vacuum.

Gaussian units with ``c = 1``: energy density ``(|E|^2 + |B|^2) / 8 pi`` and
Poynting vector ``E x B / 4 pi`` with ``E = Re F``, ``B = Im F``.  Both
are unchanged by the harmonic phase ``exp(-i omega t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coords
from .field_algebra import cross

__all__ = [
    "ShellDomain",
    "ShellIntegrals",
    "energy_density",
    "poynting",
    "flux_through_torus",
    "shell_nodes",
    "shell_integrals",
    "mass_and_spin",
]


def energy_density(F) -> np.ndarray:
    F = np.asarray(F)
    return np.sum(np.abs(F) ** 2, axis=-1) / (8.0 * math.pi)


def poynting(F) -> np.ndarray:
    F = np.asarray(F)
    return cross(F.real, F.imag) / (4.0 * math.pi)


def _torus_nodes(tau_s: float, rho0: float, n_eta: int, n_phi: int):
    d_eta = 2.0 * math.pi / n_eta
    d_phi = 2.0 * math.pi / n_phi
    eta, phi = np.meshgrid(
        -math.pi + d_eta * (np.arange(n_eta) + 1), d_phi * np.arange(n_phi), indexing="ij"
    )
    eta, phi = eta.ravel(), phi.ravel()
    xyz = coords.modified_to_cartesian(tau_s, eta, phi, rho0)
    ds = coords.torus_surface_element(tau_s, eta, phi, rho0) * (d_eta * d_phi)
    return xyz, ds


def flux_through_torus(mode, tau_s: float, rho0: float, n_eta: int = 32, n_phi: int = 64) -> float:
    """Outward Poynting flux through the torus ``tau = tau_s`` (trapezoidal rule)."""
    if not 0.0 < tau_s < 1.0:
        raise coords.DomainError("tau_s must lie in (0, 1)")
    xyz, ds = _torus_nodes(tau_s, rho0, n_eta, n_phi)
    P = poynting(mode(xyz))
    return float(np.sum(np.sum(P * ds, axis=-1)))


@dataclass(frozen=True)
class ShellDomain:
    """Region ``tau_min <= tau <= tau_max`` between two nested tori."""

    tau_min: float
    tau_max: float
    rho0: float = 1.0
    n_tau: int = 12
    n_eta: int = 32
    n_phi: int = 32

    def __post_init__(self):
        if not 0.0 < self.tau_min < self.tau_max < 1.0:
            raise ValueError("need 0 < tau_min < tau_max < 1")
        if min(self.n_tau, self.n_eta, self.n_phi) < 4:
            raise ValueError("node counts must be at least 4")
        if not self.rho0 > 0:
            raise ValueError("rho0 must be positive")


def shell_nodes(shell: ShellDomain) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature points ``(n, 3)`` and volume weights ``(n,)``.

    Gauss-Legendre in ``tau``, trapezoid in ``eta`` and ``phi``; the weights
    include the volume element ``h_tau h_eta h_phi``.  Points are ordered
    tau-major, so slices of ``n_eta * n_phi`` rows are tau-slices.
    """
    x, w = np.polynomial.legendre.leggauss(shell.n_tau)
    half = 0.5 * (shell.tau_max - shell.tau_min)
    tau_1d = shell.tau_min + half * (x + 1.0)
    w_tau = half * w
    d_eta = 2.0 * math.pi / shell.n_eta
    d_phi = 2.0 * math.pi / shell.n_phi
    eta_1d = -math.pi + d_eta * (np.arange(shell.n_eta) + 1)
    phi_1d = d_phi * np.arange(shell.n_phi)
    tau, eta, phi = np.meshgrid(tau_1d, eta_1d, phi_1d, indexing="ij")
    wt = np.broadcast_to(w_tau[:, None, None], tau.shape) * d_eta * d_phi
    tau, eta, phi, wt = tau.ravel(), eta.ravel(), phi.ravel(), wt.ravel()
    xyz = coords.modified_to_cartesian(tau, eta, phi, shell.rho0)
    return xyz, wt * coords.volume_element(tau, eta, shell.rho0)


@dataclass(frozen=True)
class ShellIntegrals:
    mass: float
    spin: float
    angular_momentum: np.ndarray
    volume: float


def shell_integrals(mode, shell: ShellDomain) -> ShellIntegrals:
    """Energy and angular momentum ``r x P`` integrated over the shell.

    The reduction runs slice by slice in tau order so the result does not
    depend on how ``mode`` parallelizes its evaluation.
    """
    xyz, wv = shell_nodes(shell)
    F = np.asarray(mode(xyz))
    dens = energy_density(F) * wv
    mom = cross(xyz, poynting(F)) * wv[:, None]
    per = shell.n_eta * shell.n_phi
    mass = 0.0
    L = np.zeros(3)
    vol = 0.0
    for i in range(shell.n_tau):
        sl = slice(i * per, (i + 1) * per)
        mass += float(np.sum(dens[sl]))
        L = L + np.sum(mom[sl], axis=0)
        vol += float(np.sum(wv[sl]))
    return ShellIntegrals(mass, float(np.linalg.norm(L)), L, vol)


def mass_and_spin(mode, shell: ShellDomain) -> tuple[float, float]:
    res = shell_integrals(mode, shell)
    return res.mass, res.spin
