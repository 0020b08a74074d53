"""
Modified toroidal coordinates
-----------------------------

Walk from the singular ring out to the symmetry axis and watch the
coordinate surfaces, scale factors and local frames.
"""

import math

import numpy as np

from torwave import coords

rho0 = 1.0

###############################################################################
# Surfaces of constant ``tau`` are nested tori around the ring ``rho = rho0``.
# Their tube radius grows like ``rho0 tau / sqrt(1 - tau^2)``.

for tau in (0.01, 0.1, 0.3, 0.6, 0.9):
    eta = np.linspace(-math.pi, math.pi, 400)
    xyz = coords.modified_to_cartesian(tau, eta, 0.0, rho0)
    r = coords.distance_to_ring(xyz, rho0)
    print(f"tau={tau:4.2f}  distance to ring in [{r.min():.4f}, {r.max():.4f}]"
          f"  tube radius {rho0 * tau / math.sqrt(1 - tau**2):.4f}")

###############################################################################
# Near the ring the scale factors approach ``(rho0, rho0 tau, rho0)``, which
# is why the coordinates ``(rho0 tau, eta, rho0 phi)`` act like cylindrical
# coordinates wrapped around the ring.

for tau in (1e-1, 1e-2, 1e-4):
    h = np.array(coords.scale_factors(tau, 0.3, rho0))
    print(f"tau={tau:.0e}  h/(rho0, rho0 tau, rho0) - 1 = {h / [rho0, rho0 * tau, rho0] - 1}")

###############################################################################
# The exact frame turns into the bent frame at the same rate.

frame = coords.frame_at(1e-3, 0.7, 1.2, rho0)
bent = coords.bent_frame(0.7, 1.2)
for name, a, b in zip(("tau", "eta", "phi"), (frame.e_tau, frame.e_eta, frame.e_phi), bent):
    print(f"|e_{name} - bent| = {np.linalg.norm(a - b):.2e}")

###############################################################################
# Round trip through Cartesian space.

rng = np.random.default_rng(0)
tau, eta, phi = rng.uniform(1e-3, 0.999, 5), rng.uniform(-3, 3, 5), rng.uniform(0, 6, 5)
back = coords.cartesian_to_modified(coords.modified_to_cartesian(tau, eta, phi, rho0), rho0)
print("round-trip error:", max(np.abs(b - a).max() for a, b in zip((tau, eta, phi), back)))
