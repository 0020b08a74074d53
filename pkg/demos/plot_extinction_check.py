"""
Checking the surface integral with exact data
---------------------------------------------

Feed the surface integral the trace of a field that is a Beltrami field
everywhere.  Inside the torus it must return minus that field, outside it
must return zero.  This pins down the kernel, its signs and the orientation
of the surface element independently of the ring construction.
"""

import numpy as np

from torwave import coords
from torwave.cyl_modes import CylModeSpec, ck_mode_cartesian
from torwave.ring_integral import RingModeSpec, assemble_at_cartesian, build_quadrature

spec = RingModeSpec(omega=3.0, m=1, tau0=0.3, n_eta=64, n_phi=256)
beam = CylModeSpec(3.0, 1.2, 1, amplitude=0.7 + 0.2j)
quad = build_quadrature(spec, lambda x: ck_mode_cartesian(beam, x))

def at(tau):
    return coords.modified_to_cartesian(np.array([tau]), np.array([0.7]), np.array([0.3]), 1.0)


x = at(0.1)  # tau < tau0: inside the tube
print(f"inside:  |F_int + F| = {np.linalg.norm(assemble_at_cartesian(quad, x) + ck_mode_cartesian(beam, x)):.1e}")
x = at(0.7)
print(f"outside: |F_int| = {np.linalg.norm(assemble_at_cartesian(quad, x)):.1e}"
      f"   (|F| there is {np.linalg.norm(ck_mode_cartesian(beam, x)):.2f})")
