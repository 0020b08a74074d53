"""Toroidal, modified toroidal and bent coordinates around a ring of radius ``rho0``.

Modified toroidal coordinates ``(tau, eta, phi)`` are related to the
classical toroidal pair ``(u, v)`` by ``tau = sech v`` and ``eta = -u``.
``tau = 0`` is the ring ``rho = rho0, z = 0``; ``tau = 1`` is the symmetry
axis together with the point at infinity.  All functions broadcast over
array arguments; Cartesian positions carry their components on the last axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "DomainError",
    "ModifiedToroidalPoint",
    "CylindricalPoint",
    "BentPoint",
    "FrameData",
    "toroidal_to_cylindrical",
    "toroidal_to_modified",
    "cylindrical_to_cartesian",
    "cartesian_to_cylindrical",
    "modified_to_cylindrical",
    "modified_to_cartesian",
    "cartesian_to_modified",
    "scale_factors",
    "frame_at",
    "volume_element",
    "modified_to_bent",
    "bent_frame",
    "torus_surface_element",
    "distance_to_ring",
]


class DomainError(ValueError):
    """Raised when a point lies outside the domain of a coordinate map."""


class ModifiedToroidalPoint(NamedTuple):
    tau: float
    eta: float
    phi: float


class CylindricalPoint(NamedTuple):
    rho: float
    phi: float
    z: float


class BentPoint(NamedTuple):
    rho_b: float
    phi_b: float
    z_b: float


@dataclass(frozen=True)
class FrameData:
    """Scale factors and orthonormal Cartesian frame vectors at a point.

    The contravariant basis vectors of the coordinate system are
    ``e_i / h_i`` and the metric is ``diag(h_tau**2, h_eta**2, h_phi**2)``.
    """

    h_tau: np.ndarray
    h_eta: np.ndarray
    h_phi: np.ndarray
    e_tau: np.ndarray
    e_eta: np.ndarray
    e_phi: np.ndarray

    @property
    def volume_element(self) -> np.ndarray:
        return self.h_tau * self.h_eta * self.h_phi


def toroidal_to_cylindrical(u, v, rho0: float) -> tuple[np.ndarray, np.ndarray]:
    """Classical toroidal ``(u, v)`` to cylindrical ``(rho, z)``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    den = np.cosh(v) - np.cos(u)
    if np.any(den == 0):
        raise DomainError("cosh v - cos u vanishes (point at infinity)")
    return rho0 * np.sinh(v) / den, rho0 * np.sin(u) / den


def toroidal_to_modified(u, v) -> tuple[np.ndarray, np.ndarray]:
    """``(u, v) -> (tau, eta)`` with ``tau = sech v``, ``eta = -u`` in ``(-pi, pi]``."""
    tau = 1.0 / np.cosh(np.asarray(v, dtype=float))
    eta = _wrap_angle(-np.asarray(u, dtype=float))
    return tau, eta


def _wrap_angle(a) -> np.ndarray:
    """Map angles to ``(-pi, pi]``."""
    a = np.asarray(a, dtype=float)
    w = np.mod(a + np.pi, 2.0 * np.pi) - np.pi
    return np.where(w == -np.pi, np.pi, w)


def _check_tau(tau, lo_open: bool, hi_open: bool) -> None:
    tau = np.asarray(tau)
    bad = (tau < 0) | (tau > 1)
    if lo_open:
        bad |= tau == 0
    if hi_open:
        bad |= tau == 1
    if np.any(bad):
        raise DomainError(f"tau outside the admissible range: {tau[bad] if tau.ndim else tau}")


def modified_to_cylindrical(tau, eta, rho0: float) -> tuple[np.ndarray, np.ndarray]:
    """``(tau, eta) -> (rho, z)``.

    ``rho = rho0 sqrt(1 - tau^2) / (1 - tau cos eta)`` and
    ``z = -rho0 tau sin eta / (1 - tau cos eta)``.
    """
    tau = np.asarray(tau, dtype=float)
    eta = np.asarray(eta, dtype=float)
    _check_tau(tau, False, False)
    den = 1.0 - tau * np.cos(eta)
    if np.any(den == 0):
        raise DomainError("tau = 1, eta = 0 is the point at infinity")
    return rho0 * np.sqrt(1.0 - tau * tau) / den, -rho0 * tau * np.sin(eta) / den


def cylindrical_to_cartesian(rho, phi, z) -> np.ndarray:
    rho, phi, z = np.broadcast_arrays(
        np.asarray(rho, dtype=float), np.asarray(phi, dtype=float), np.asarray(z, dtype=float)
    )
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=-1)


def cartesian_to_cylindrical(xyz) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cartesian to ``(rho, phi, z)`` with ``phi`` in ``[0, 2 pi)``."""
    xyz = np.asarray(xyz, dtype=float)
    x, y, z = xyz[..., 0], xyz[..., 1], xyz[..., 2]
    phi = np.mod(np.arctan2(y, x), 2.0 * np.pi)
    phi = np.where(phi >= 2.0 * np.pi, 0.0, phi)
    return np.hypot(x, y), phi, z


def modified_to_cartesian(tau, eta, phi, rho0: float) -> np.ndarray:
    """Cartesian position of modified toroidal coordinates, shape ``(..., 3)``."""
    rho, z = modified_to_cylindrical(tau, eta, rho0)
    return cylindrical_to_cartesian(rho, phi, z)


def cartesian_to_modified(xyz, rho0: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of :func:`modified_to_cartesian`.

    Uses ``tau = 2 d1 d2 / (d1^2 + d2^2)`` with ``d1, d2`` the distances to
    the far and near side of the ring in the meridian plane, and
    ``eta = -atan2(2 rho0 z, rho^2 + z^2 - rho0^2)``.  On the ring itself
    ``eta`` is undefined and reported as 0.
    """
    rho, phi, z = cartesian_to_cylindrical(xyz)
    d1sq = (rho + rho0) ** 2 + z * z
    d2sq = (rho - rho0) ** 2 + z * z
    tau = 2.0 * np.sqrt(d1sq * d2sq) / (d1sq + d2sq)
    tau = np.minimum(tau, 1.0)
    # rho^2 + z^2 - rho0^2 written to avoid cancellation near the ring
    u = np.arctan2(2.0 * rho0 * z, (rho - rho0) * (rho + rho0) + z * z)
    eta = _wrap_angle(-u)
    eta = np.where(tau == 0.0, 0.0, eta)
    return tau, eta, phi


def scale_factors(tau, eta, rho0: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact scale factors ``(h_tau, h_eta, h_phi)``."""
    tau = np.asarray(tau, dtype=float)
    eta = np.asarray(eta, dtype=float)
    den = 1.0 - tau * np.cos(eta)
    q = np.sqrt(1.0 - tau * tau)
    return rho0 / (den * q), rho0 * tau / den, rho0 * q / den


def frame_at(tau, eta, phi, rho0: float) -> FrameData:
    """Scale factors and orthonormal frame ``(e_tau, e_eta, e_phi)``.

    The frame is right-handed.  It degenerates on the ring (``tau = 0``)
    and on the axis (``tau = 1``), so both are rejected.
    """
    tau, eta, phi = np.broadcast_arrays(
        np.asarray(tau, dtype=float), np.asarray(eta, dtype=float), np.asarray(phi, dtype=float)
    )
    _check_tau(tau, True, True)
    h_tau, h_eta, h_phi = scale_factors(tau, eta, rho0)
    c, s = np.cos(eta), np.sin(eta)
    den = 1.0 - tau * c
    q = np.sqrt(1.0 - tau * tau)
    rho_hat = np.stack([np.cos(phi), np.sin(phi), np.zeros_like(phi)], axis=-1)
    phi_hat = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=-1)
    z_hat = np.broadcast_to(np.array([0.0, 0.0, 1.0]), rho_hat.shape)
    a = ((c - tau) / den)[..., None]
    b = (s * q / den)[..., None]
    e_tau = a * rho_hat - b * z_hat
    e_eta = -b * rho_hat - a * z_hat
    return FrameData(h_tau, h_eta, h_phi, e_tau, e_eta, phi_hat)


def volume_element(tau, eta, rho0: float) -> np.ndarray:
    """``h_tau h_eta h_phi``; tends to ``rho0^3 tau`` near the ring."""
    h_tau, h_eta, h_phi = scale_factors(tau, eta, rho0)
    return h_tau * h_eta * h_phi


def modified_to_bent(tau, eta, phi, rho0: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Bent coordinates ``(rho0 tau, eta, rho0 phi)``; locally cylindrical about the ring."""
    return rho0 * np.asarray(tau, dtype=float), np.asarray(eta, dtype=float), rho0 * np.asarray(phi, dtype=float)


def bent_frame(eta, phi) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal frame of the bent coordinates in Cartesian components.

    ``e_rho = cos(eta) rho_hat - sin(eta) z_hat``,
    ``e_phi = -(sin(eta) rho_hat + cos(eta) z_hat)``, ``e_z = phi_hat``, with
    ``rho_hat, phi_hat`` taken at azimuth ``phi``.  This is the near-ring
    limit of ``(e_tau, e_eta, e_phi)``.
    """
    eta, phi = np.broadcast_arrays(np.asarray(eta, dtype=float), np.asarray(phi, dtype=float))
    c, s = np.cos(eta), np.sin(eta)
    cp, sp = np.cos(phi), np.sin(phi)
    zero = np.zeros_like(eta)
    e_rho = np.stack([c * cp, c * sp, -s], axis=-1)
    e_phi = np.stack([-s * cp, -s * sp, -c], axis=-1)
    e_z = np.stack([-sp, cp, zero], axis=-1)
    return e_rho, e_phi, e_z


def torus_surface_element(tau0, eta, phi, rho0: float) -> np.ndarray:
    """Outward (increasing ``tau``) area vector of the torus ``tau = tau0`` per ``d eta d phi``."""
    fr = frame_at(tau0, eta, phi, rho0)
    return fr.e_tau * (fr.h_eta * fr.h_phi)[..., None]


def distance_to_ring(xyz, rho0: float) -> np.ndarray:
    """Euclidean distance from points to the circle ``rho = rho0, z = 0``."""
    rho, _, z = cartesian_to_cylindrical(xyz)
    return np.hypot(rho - rho0, z)
