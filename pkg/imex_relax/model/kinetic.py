"""
Kinetic form of the Ruijgrok-Wu model: two velocity densities f+ and f-
moving with speeds +-1/M, whose moments are rho = f+ + f- and j = (f+ - f-)/M.
"""

from dataclasses import dataclass

import numpy as np

from imex_relax.errors import ValidationError


@dataclass(frozen=True)
class RWKineticParams:
    a: float
    b: float
    c: float
    mach: float
    knudsen: float
    reynolds: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.c >= 0):
            raise ValidationError("interaction constants need a, b > 0 and c >= 0")
        if not self.mach > 0:
            raise ValidationError("the Mach number must be positive")


def rw_kinetic_params(eps: float, alpha: float, a: float = 1.0, b: float = 1.0, c: float = None):
    """
    M = eps^alpha, Kn = eps and Re = eps^(alpha-1), so Re * Kn = M.
    The interaction constant c defaults to 2 eps.
    """
    if not eps > 0:
        raise ValidationError(f"epsilon must be positive, got {eps!r}")
    c = 2.0 * eps if c is None else c
    return RWKineticParams(
        a=a,
        b=b,
        c=c,
        mach=eps**alpha,
        knudsen=eps,
        reynolds=eps ** (alpha - 1.0),
    )


def kinetic_to_macro(f_plus, f_minus, M):
    if np.any(np.asarray(M) <= 0):
        raise ValidationError("M must be positive")
    f_plus = np.asarray(f_plus, dtype=float)
    f_minus = np.asarray(f_minus, dtype=float)
    return f_plus + f_minus, (f_plus - f_minus) / M


def macro_to_kinetic(rho, j, M):
    """
    M may be a per-cell array when alpha varies in space.
    """
    if np.any(np.asarray(M) <= 0):
        raise ValidationError("M must be positive")
    rho = np.asarray(rho, dtype=float)
    j = np.asarray(j, dtype=float)
    return 0.5 * (rho + M * j), 0.5 * (rho - M * j)
