"""Standing toroidal modes assembled from a surface integral over a thin torus.

The Bessel beam with axial wavenumber ``k = m / rho0`` is laid along the
ring in bent coordinates and its trace on the torus ``tau = tau0`` is fed
into the standing-wave surface integral

    F(x) = -1/(8 pi) sum_nodes [ a(d) (C x dS)
                                 + b(d) (r (C . dS) + r x (C x dS)) ]

with ``r = x' - x`` (source minus field point), ``d = |r|``,
``a = 2 omega cos(omega d) / d`` and
``b = 2 cos(omega d) / d^3 + 2 omega sin(omega d) / d^2``.
The surface integral uses the periodic trapezoidal rule in ``(eta', phi')``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import coords
from .coords import DomainError
from .cyl_modes import CylModeSpec, ck_components
from .field_algebra import HarmonicMode, cross, dot
from .specfun import BesselKind

__all__ = [
    "RingModeSpec",
    "RingQuadrature",
    "StandoffError",
    "ScalingStudy",
    "quantized_wavenumber",
    "ring_wavelength",
    "boundary_trace",
    "kernel_weights",
    "kernel_weights_exponential",
    "build_quadrature",
    "assemble_ring_mode",
    "assemble_at_cartesian",
    "ring_mode",
    "tau0_scaling_study",
]


class StandoffError(DomainError):
    """A target point is too close to the quadrature surface."""


def quantized_wavenumber(m: int, rho0: float) -> float:
    """Wavenumber along the ring, ``k_phi = m / rho0``.

    ``|m|`` wavelengths must fit on the circumference ``2 pi rho0``, so
    ``m = 0`` is rejected.
    """
    if int(m) != m or m == 0:
        raise ValueError(
            f"ring winding number m={m!r} must be a non-zero integer: "
            "2 pi rho0 = |m| lambda_phi has no solution for m = 0"
        )
    if not rho0 > 0:
        raise ValueError("ring radius rho0 must be positive")
    return m / rho0


def ring_wavelength(m: int, rho0: float) -> float:
    return 2.0 * math.pi / abs(quantized_wavenumber(m, rho0))


@dataclass(frozen=True)
class RingModeSpec:
    """Parameters selecting one assembled ring mode.

    ``m`` is the winding number along the ring and ``l`` the angular index
    of the Bessel beam around the ring's local axis.  The output is
    multiplied by ``tau0 ** (-scaling_exponent)``.
    """

    omega: float
    m: int
    l: int = 0
    rho0: float = 1.0
    kind: BesselKind = BesselKind.REGULAR
    tau0: float = 0.1
    n_eta: int = 32
    n_phi: int = 128
    amplitude: complex = 1.0
    scaling_exponent: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", BesselKind.parse(self.kind))
        k_phi = quantized_wavenumber(self.m, self.rho0)
        object.__setattr__(self, "m", int(self.m))
        if int(self.l) != self.l:
            raise ValueError("cross-section index l must be an integer")
        object.__setattr__(self, "l", int(self.l))
        if not abs(k_phi) < self.omega:
            raise ValueError(
                f"omega={self.omega} must exceed |m|/rho0={abs(k_phi)} "
                "so the beam along the ring propagates"
            )
        if not 0.0 < self.tau0 <= 0.3:
            raise ValueError(f"tau0={self.tau0} must lie in (0, 0.3]")
        for name in ("n_eta", "n_phi"):
            n = getattr(self, name)
            if int(n) != n or n < 8 or n % 2:
                raise ValueError(f"{name}={n} must be an even integer >= 8")
        if self.amplitude == 0:
            raise ValueError("amplitude must be non-zero")

    @property
    def k_phi(self) -> float:
        return quantized_wavenumber(self.m, self.rho0)

    def cylinder_spec(self) -> CylModeSpec:
        """The Bessel beam whose trace seeds the integral."""
        return CylModeSpec(self.omega, self.k_phi, self.l, self.kind, self.amplitude)

    def with_(self, **changes) -> "RingModeSpec":
        return replace(self, **changes)


def boundary_trace(spec: RingModeSpec, eta_s, phi_s, tau_s: float | None = None) -> np.ndarray:
    """Bessel beam evaluated on the torus ``tau = tau0`` through bent coordinates.

    The beam components along ``(rho_b, phi_b, z_b)``, taken at
    ``(rho0 tau0, eta', rho0 phi')``, are attached to the bent frame at
    ``(eta', phi')``.  Returns Cartesian components.
    """
    tau_s = spec.tau0 if tau_s is None else tau_s
    eta_s, phi_s = np.broadcast_arrays(np.asarray(eta_s, dtype=float), np.asarray(phi_s, dtype=float))
    rho_b, phi_b, z_b = coords.modified_to_bent(tau_s, eta_s, phi_s, spec.rho0)
    c_rho, c_phi, c_z = ck_components(spec.cylinder_spec(), rho_b, phi_b, z_b)
    e_rho, e_phi, e_z = coords.bent_frame(eta_s, phi_s)
    return c_rho[..., None] * e_rho + c_phi[..., None] * e_phi + c_z[..., None] * e_z


def kernel_weights(omega: float, d) -> tuple[np.ndarray, np.ndarray]:
    """Standing-wave kernel weights ``(a, b)`` in trigonometric form."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise DomainError("field point coincides with a source point (d = 0)")
    inv = 1.0 / d
    wd = omega * d
    cos_wd = np.cos(wd)
    a = (2.0 * omega) * cos_wd * inv
    b = 2.0 * inv * inv * (cos_wd * inv + omega * np.sin(wd))
    return a, b


def kernel_weights_exponential(omega: float, d) -> tuple[np.ndarray, np.ndarray]:
    """Same weights written with ``exp(+-i omega d)``; complex, imaginary part ~ 0."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise DomainError("field point coincides with a source point (d = 0)")
    em = np.exp(-1j * omega * d)
    ep = np.exp(1j * omega * d)
    a = (em + ep) * omega / d
    b = (em + ep) / d**3 + (omega / d**2) * 1j * (em - ep)
    return a, b


@dataclass(frozen=True)
class RingQuadrature:
    """Trapezoidal nodes on the torus ``tau = tau0``, flattened eta-major.

    ``dsigma`` already includes the weight ``weight = (2 pi)^2 / (n_eta n_phi)``.
    """

    spec: RingModeSpec
    eta: np.ndarray
    phi: np.ndarray
    positions: np.ndarray
    trace: np.ndarray
    dsigma: np.ndarray
    weight: float
    spacing: float
    c_cross_ds: np.ndarray = field(repr=False)
    c_dot_ds: np.ndarray = field(repr=False)
    columns_a: np.ndarray = field(repr=False)
    columns_b: np.ndarray = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return self.positions.shape[0]


def build_quadrature(spec: RingModeSpec, trace_fn=None) -> RingQuadrature:
    """Nodes, weights and boundary data on the torus ``tau = spec.tau0``.

    ``trace_fn``, if given, replaces the bent-coordinate trace: it maps node
    positions ``(n, 3)`` to field samples ``(n, 3)``.  Useful for feeding
    the integral with data from a known field.
    """
    d_eta = 2.0 * math.pi / spec.n_eta
    d_phi = 2.0 * math.pi / spec.n_phi
    eta_1d = -math.pi + d_eta * (np.arange(spec.n_eta) + 1)  # (-pi, pi]
    phi_1d = d_phi * np.arange(spec.n_phi)
    eta, phi = np.meshgrid(eta_1d, phi_1d, indexing="ij")
    eta = eta.ravel()
    phi = phi.ravel()
    weight = d_eta * d_phi
    positions = coords.modified_to_cartesian(spec.tau0, eta, phi, spec.rho0)
    trace = boundary_trace(spec, eta, phi) if trace_fn is None else np.asarray(trace_fn(positions), dtype=complex)
    dsigma = coords.torus_surface_element(spec.tau0, eta, phi, spec.rho0) * weight
    h_tau, h_eta, h_phi = coords.scale_factors(spec.tau0, eta, spec.rho0)
    spacing = float(max(np.max(h_eta) * d_eta, np.max(h_phi) * d_phi))
    v = cross(trace, dsigma)
    c = dot(trace, dsigma)
    cols = np.hstack([v, positions * c[:, None], c[:, None], cross(positions, v)])
    return RingQuadrature(
        spec=spec,
        eta=eta,
        phi=phi,
        positions=positions,
        trace=trace,
        dsigma=dsigma,
        weight=weight,
        spacing=spacing,
        c_cross_ds=v,
        c_dot_ds=c,
        columns_a=np.ascontiguousarray(np.hstack([v.real, v.imag])),
        columns_b=np.ascontiguousarray(np.hstack([cols.real, cols.imag])),
    )


_BLOCK = 64


def _assemble_block(quad: RingQuadrature, xb: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Field and nearest-node distance for a block of exactly ``_BLOCK`` targets.

    With ``r = x' - x`` the node sum splits into real kernel matrices times
    per-node columns::

        sum a V + sum b c x' - x sum b c + sum b x' x V - x x sum b V

    where ``V = C x dS`` and ``c = C . dS``.  The block shape never changes,
    so every target goes through the same operations whatever the batching.
    """
    r = quad.positions[None, :, :] - xb[:, None, :]
    d = np.sqrt(np.einsum("bnk,bnk->bn", r, r))
    dmin = d.min(axis=1)
    a, b = kernel_weights(quad.spec.omega, np.maximum(d, 1e-300))
    sa = a @ quad.columns_a
    sb = b @ quad.columns_b
    sa = sa[:, :3] + 1j * sa[:, 3:]
    sb = sb[:, :10] + 1j * sb[:, 10:]
    sum_v = sb[:, 0:3]
    sum_cx = sb[:, 3:6]
    sum_c = sb[:, 6:7]
    sum_xv = sb[:, 7:10]
    total = sa + sum_cx - xb * sum_c + sum_xv - cross(xb, sum_v)
    return -total / (8.0 * math.pi), dmin


def _output_scale(spec: RingModeSpec) -> float:
    return spec.tau0 ** (-spec.scaling_exponent)


def _standoff_message(quad: RingQuadrature, x, dist: float, limit: float, factor: float) -> str:
    return (
        f"target {np.asarray(x).tolist()} is {dist:.4g} from the quadrature surface; "
        f"at least {limit:.4g} ({factor:g} node spacings of {quad.spacing:.4g}) is required"
    )


def check_standoff(quad: RingQuadrature, xyz, factor: float = 3.0) -> np.ndarray:
    """Distance from each point to the nearest node; raise if below ``factor`` spacings."""
    xyz = np.atleast_2d(np.asarray(xyz, dtype=float))
    dmin = np.empty(xyz.shape[0])
    for i, x in enumerate(xyz):
        r = quad.positions - x
        dmin[i] = np.sqrt(np.min(np.sum(r * r, axis=1)))
    limit = factor * quad.spacing
    bad = np.nonzero(dmin < limit)[0]
    if bad.size:
        i = bad[0]
        raise StandoffError(_standoff_message(quad, xyz[i], dmin[i], limit, factor))
    return dmin


def assemble_at_cartesian(
    quad: RingQuadrature, xyz, threads: int = 1, check: bool = True
) -> np.ndarray:
    """Assembled field at Cartesian points ``(..., 3)``.

    Blocks of targets are independent and may run on ``threads`` workers;
    the output is bit-identical for any thread count.
    """
    xyz = np.asarray(xyz, dtype=float)
    shape = xyz.shape
    flat = xyz.reshape(-1, 3)
    n = flat.shape[0]
    if n == 0:
        return np.zeros(shape, dtype=complex)
    n_blocks = -(-n // _BLOCK)
    padded = np.empty((n_blocks * _BLOCK, 3))
    padded[:n] = flat
    # padding targets sit far from the torus
    padded[n:] = (0.0, 0.0, 1e3 * quad.spec.rho0)
    blocks = [padded[i * _BLOCK : (i + 1) * _BLOCK] for i in range(n_blocks)]
    work = lambda xb: _assemble_block(quad, xb)  # noqa: E731
    if threads > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, blocks))
    else:
        results = [work(xb) for xb in blocks]
    out = np.concatenate([f for f, _ in results])[:n]
    dmin = np.concatenate([dm for _, dm in results])[:n]
    if check:
        limit = 3.0 * quad.spacing
        bad = np.nonzero(dmin < limit)[0]
        if bad.size:
            i = bad[0]
            raise StandoffError(_standoff_message(quad, flat[i], dmin[i], limit, 3.0))
    return out.reshape(shape) * _output_scale(quad.spec)


def assemble_ring_mode(spec: RingModeSpec, targets, threads: int = 1, quad: RingQuadrature | None = None):
    """Field at modified toroidal targets.

    ``targets`` is a sequence of ``(tau, eta, phi)`` triples or an array
    of shape ``(n, 3)``.  Returns complex Cartesian components ``(n, 3)``.
    Targets closer to the torus than three node spacings are rejected
    with :class:`StandoffError`.
    """
    quad = build_quadrature(spec) if quad is None else quad
    t = np.atleast_2d(np.asarray(targets, dtype=float))
    if t.shape[-1] != 3:
        raise ValueError("targets must be (tau, eta, phi) triples")
    if np.any(t[:, 0] <= 0):
        raise DomainError("targets on the singular ring are excluded")
    xyz = coords.modified_to_cartesian(t[:, 0], t[:, 1], t[:, 2], spec.rho0)
    return assemble_at_cartesian(quad, xyz, threads=threads)


def ring_mode(spec: RingModeSpec, threads: int = 1, check: bool = True) -> HarmonicMode:
    """Assembled mode as a :class:`HarmonicMode` on Cartesian points."""
    quad = build_quadrature(spec)
    return HarmonicMode(spec.omega, lambda xyz: assemble_at_cartesian(quad, xyz, threads, check))


@dataclass
class ScalingStudy:
    tau0: np.ndarray
    fields: np.ndarray
    exponent: float
    component_exponents: np.ndarray
    local_exponents: np.ndarray

    def rescaled(self, p: float | None = None) -> np.ndarray:
        p = self.exponent if p is None else p
        return self.fields * self.tau0[:, None] ** (-p)


def _loglog_slope(t, y) -> float:
    lt = np.log(t)
    ly = np.log(y)
    return float(np.polyfit(lt, ly, 1)[0])


def tau0_scaling_study(spec: RingModeSpec, target, tau0_sequence, threads: int = 1) -> ScalingStudy:
    """Assemble one target for a decreasing sequence of ``tau0``.

    The overall exponent ``p`` is the least-squares slope of
    ``log |F|`` against ``log tau0``; ``component_exponents`` does the same
    per Cartesian component magnitude (NaN for components that vanish),
    and ``local_exponents`` holds the slopes between consecutive pairs.
    Fields are raw (``scaling_exponent`` is ignored).
    """
    seq = np.asarray(tau0_sequence, dtype=float)
    if seq.ndim != 1 or seq.size < 4:
        raise ValueError("need at least four tau0 values")
    if np.any(np.diff(seq) >= 0):
        raise ValueError("tau0 sequence must be strictly decreasing")
    if np.any(seq <= 0) or np.any(seq > 0.3):
        raise ValueError("tau0 values must lie in (0, 0.3]")
    fields = np.array(
        [
            assemble_ring_mode(spec.with_(tau0=float(t0), scaling_exponent=0.0), [target], threads)[0]
            for t0 in seq
        ]
    )
    mags = np.sqrt(np.sum(np.abs(fields) ** 2, axis=1))
    p = _loglog_slope(seq, mags)
    comp = np.full(3, np.nan)
    for i in range(3):
        a = np.abs(fields[:, i])
        if np.all(a > 1e-300) and np.min(a) > 1e-12 * np.max(mags):
            comp[i] = _loglog_slope(seq, a)
    local = np.diff(np.log(mags)) / np.diff(np.log(seq))
    return ScalingStudy(seq, fields, p, comp, local)
