"""Complex-vector realization of the electromagnetic bivector ``F = E + iB``.

A field sample is a complex array whose last axis holds the Cartesian
components ``(Fx, Fy, Fz)``; ``F.real`` is the electric field and ``F.imag``
the magnetic field (vacuum, so ``D = E`` and ``H = B``).  A harmonic field is
``F(x, t) = F_omega(x) * exp(-1j * omega * t)`` and the eigen-equation of the
operator ``-i d`` becomes ``curl F = omega F`` together with ``div F = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "HarmonicMode",
    "as_vector",
    "dot",
    "cross",
    "norm",
    "fd_curl_div",
    "beltrami_residual",
]

Evaluator = Callable[[np.ndarray], np.ndarray]


def as_vector(v) -> np.ndarray:
    """Coerce ``v`` to a complex array with a trailing axis of length 3."""
    arr = np.asarray(v, dtype=complex)
    if arr.shape[-1:] != (3,):
        raise ValueError(f"expected trailing axis of length 3, got shape {arr.shape}")
    return arr


def dot(a, b) -> np.ndarray:
    """Bilinear dot product ``sum_i a_i b_i`` (no complex conjugation)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def cross(a, b) -> np.ndarray:
    """Bilinear cross product, componentwise on complex entries."""
    a = np.asarray(a)
    b = np.asarray(b)
    return np.stack(
        [
            a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1],
            a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2],
            a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0],
        ],
        axis=-1,
    )


def norm(a) -> np.ndarray:
    """Hermitian norm ``sqrt(sum |a_i|^2)`` along the last axis."""
    a = np.asarray(a)
    return np.sqrt(np.sum(np.abs(a) ** 2, axis=-1))


@dataclass(frozen=True)
class HarmonicMode:
    """Spatial factor of a time-harmonic field.

    ``evaluator`` maps Cartesian points of shape ``(..., 3)`` to complex
    field samples of the same shape.
    """

    omega: float
    evaluator: Evaluator

    def __call__(self, points) -> np.ndarray:
        return self.evaluator(np.asarray(points, dtype=float))

    def at_time(self, points, x0: float) -> np.ndarray:
        """Physical field ``F_omega(x) * exp(-1j * omega * x0)``."""
        return self(points) * np.exp(-1j * self.omega * x0)


def fd_curl_div(mode, p, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Second-order central-difference curl and divergence.

    Parameters
    ----------
    mode : HarmonicMode or callable
        Field evaluator taking Cartesian points ``(..., 3)``.
    p : array_like, shape (..., 3)
        Points where the derivatives are taken.  They must stay more than
        ``2 h`` away from any singularity of the field.
    h : float
        Step length.

    Returns
    -------
    curl : ndarray, shape (..., 3), complex
    div : ndarray, shape (...), complex
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    p = np.asarray(p, dtype=float)
    # stencil layout: axis -2 enumerates (+x, -x, +y, -y, +z, -z)
    offsets = np.zeros((6, 3))
    for k in range(3):
        offsets[2 * k, k] = h
        offsets[2 * k + 1, k] = -h
    stencil = p[..., None, :] + offsets
    values = np.asarray(mode(stencil.reshape(-1, 3))).reshape(stencil.shape)
    # jac[..., i, j] = d F_i / d x_j
    jac = (values[..., 0::2, :] - values[..., 1::2, :]) / (2.0 * h)
    jac = np.swapaxes(jac, -1, -2)
    curl = np.stack(
        [
            jac[..., 2, 1] - jac[..., 1, 2],
            jac[..., 0, 2] - jac[..., 2, 0],
            jac[..., 1, 0] - jac[..., 0, 1],
        ],
        axis=-1,
    )
    div = jac[..., 0, 0] + jac[..., 1, 1] + jac[..., 2, 2]
    return curl, div


def beltrami_residual(mode: HarmonicMode, p, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Relative residuals ``|curl F - omega F| / |omega F|`` and ``|div F| / |omega F|``."""
    p = np.asarray(p, dtype=float)
    curl, div = fd_curl_div(mode, p, h)
    f = mode(p)
    scale = abs(mode.omega) * norm(f)
    return norm(curl - mode.omega * f) / scale, np.abs(div) / scale
