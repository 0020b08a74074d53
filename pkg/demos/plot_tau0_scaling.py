"""
Shrinking the source torus
--------------------------

Sample the field at a fixed point while the source torus shrinks onto the
ring and fit ``|F| ~ tau0^p``.
"""

from torwave.ring_integral import RingModeSpec, tau0_scaling_study

seq = [0.2, 0.1, 0.05, 0.025, 0.0125]
for kind in ("regular", "singular"):
    for l in (0, 1):
        spec = RingModeSpec(omega=3.0, m=1, l=l, kind=kind, n_eta=16, n_phi=128)
        study = tau0_scaling_study(spec, (0.5, 0.8, 0.3), seq)
        print(f"{kind:8s} l={l}: p = {study.exponent:5.2f}   local slopes {study.local_exponents.round(3)}")

###############################################################################
# Regular data fade as the torus shrinks (the integral tends to zero), so a
# caller who wants a finite limit sets ``scaling_exponent`` to the fitted
# ``p``.  Singular data of index 1 give a finite limit by themselves, and
# index 0 only drifts logarithmically.
