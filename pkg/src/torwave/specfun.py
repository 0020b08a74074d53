"""Integer-order Bessel functions of the first and second kind.

Values come from ``scipy.special`` (Cephes/AMOS); the test-suite checks them
against an independent multiprecision series oracle.
"""

from __future__ import annotations

import enum

import numpy as np
from scipy import special

from .coords import DomainError

__all__ = ["BesselKind", "bessel", "bessel_deriv"]


class BesselKind(str, enum.Enum):
    REGULAR = "regular"    # J_l
    SINGULAR = "singular"  # Y_l

    @classmethod
    def parse(cls, value) -> "BesselKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"j": cls.REGULAR, "y": cls.SINGULAR}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown Bessel kind {value!r}; use 'regular' or 'singular'") from None


def bessel(kind, l: int, x):
    """``J_l(x)`` or ``Y_l(x)`` for integer ``l`` and real ``x``.

    Negative orders follow ``Z_{-l} = (-1)^l Z_l``.  ``Y_l`` is singular at
    ``x = 0`` and raises :class:`DomainError` there; both kinds reject ``x < 0``.
    """
    kind = BesselKind.parse(kind)
    if int(l) != l:
        raise ValueError("order must be an integer")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Bessel argument must be non-negative")
    if kind is BesselKind.REGULAR:
        out = special.jv(int(l), x)
    else:
        if np.any(x == 0):
            raise DomainError("Y_l is singular at x = 0")
        out = special.yv(int(l), x)
    return out[()] if out.ndim == 0 else out


def bessel_deriv(kind, l: int, x):
    """``Z_l'(x) = (Z_{l-1}(x) - Z_{l+1}(x)) / 2``."""
    return 0.5 * (bessel(kind, l - 1, x) - bessel(kind, l + 1, x))
