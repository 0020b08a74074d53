"""Standing toroidal electromagnetic waves around a ring singularity.

Coordinates, Bessel-beam eigenmodes, the ring surface-integral assembly and
field observables, with finite-difference checks of ``curl F = omega F``.
"""

__version__ = "0.1.0"

from .coords import DomainError, ModifiedToroidalPoint, CylindricalPoint, FrameData  # noqa: E402
from .specfun import BesselKind  # noqa: E402
from .field_algebra import HarmonicMode  # noqa: E402
from .cyl_modes import CylModeSpec  # noqa: E402
from .ring_integral import RingModeSpec, assemble_ring_mode, ring_mode  # noqa: E402

__all__ = [
    "__version__",
    "BesselKind",
    "CylModeSpec",
    "CylindricalPoint",
    "DomainError",
    "FrameData",
    "HarmonicMode",
    "ModifiedToroidalPoint",
    "RingModeSpec",
    "assemble_ring_mode",
    "ring_mode",
]
