"""
Finite-difference WENO flux differences with local Lax-Friedrichs splitting.
"""

import numpy as np

from imex_relax.errors import StructuralError, ValidationError

from .boundary import Field

WENO_EPS = 1e-6
WENO_POWER = 2

REQUIRED_HALO = {1: 1, 3: 2, 5: 3}


def _weno3(fm1, f0, fp1):
    """
    Left-biased third-order value at i+1/2 from f[i-1], f[i], f[i+1].
    """
    q0 = 0.5 * (-fm1 + 3.0 * f0)
    q1 = 0.5 * (f0 + fp1)
    b0 = (f0 - fm1) ** 2
    b1 = (fp1 - f0) ** 2
    a0 = (1.0 / 3.0) / (WENO_EPS + b0) ** WENO_POWER
    a1 = (2.0 / 3.0) / (WENO_EPS + b1) ** WENO_POWER
    return (a0 * q0 + a1 * q1) / (a0 + a1)


def _weno5(fm2, fm1, f0, fp1, fp2):
    """
    Left-biased fifth-order value at i+1/2 from f[i-2..i+2].
    """
    q0 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0
    q1 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0
    q2 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0

    b0 = 13.0 / 12.0 * (fm2 - 2.0 * fm1 + f0) ** 2 + 0.25 * (fm2 - 4.0 * fm1 + 3.0 * f0) ** 2
    b1 = 13.0 / 12.0 * (fm1 - 2.0 * f0 + fp1) ** 2 + 0.25 * (fm1 - fp1) ** 2
    b2 = 13.0 / 12.0 * (f0 - 2.0 * fp1 + fp2) ** 2 + 0.25 * (3.0 * f0 - 4.0 * fp1 + fp2) ** 2

    a0 = 0.1 / (WENO_EPS + b0) ** WENO_POWER
    a1 = 0.6 / (WENO_EPS + b1) ** WENO_POWER
    a2 = 0.3 / (WENO_EPS + b2) ** WENO_POWER
    return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2)


def _interface_values(padded: np.ndarray, g: int, n: int, order: int, upwind: bool):
    """
    Reconstruct split flux values at the n+1 interfaces x_{i+1/2}, i = -1..n-1.

    upwind=True reconstructs the right-moving part from the left, otherwise the
    left-moving part from the right.
    """

    def shift(k):
        start = g - 1 + k
        return padded[start : start + n + 1]

    if order == 1:
        return shift(0) if upwind else shift(1)
    if order == 3:
        if upwind:
            return _weno3(shift(-1), shift(0), shift(1))
        return _weno3(shift(2), shift(1), shift(0))
    if upwind:
        return _weno5(shift(-2), shift(-1), shift(0), shift(1), shift(2))
    return _weno5(shift(3), shift(2), shift(1), shift(0), shift(-1))


def numerical_flux(flux: Field, speed_bound: float, order: int, state: Field = None) -> np.ndarray:
    """
    Lax-Friedrichs split WENO flux at the n+1 interfaces of the grid.
    """
    if order not in REQUIRED_HALO:
        raise ValidationError(f"WENO order must be 1, 3 or 5, got {order}")
    if flux.g < REQUIRED_HALO[order]:
        raise StructuralError(
            f"WENO{order} needs a halo of {REQUIRED_HALO[order]} cells, the field has {flux.g}"
        )
    if speed_bound < 0:
        raise ValidationError("speed bound must be nonnegative")

    state = flux if state is None else state
    if state.data.shape != flux.data.shape:
        raise StructuralError("flux and state fields must share one layout")

    plus = 0.5 * (flux.data + speed_bound * state.data)
    minus = 0.5 * (flux.data - speed_bound * state.data)
    n, g = flux.n, flux.g
    return _interface_values(plus, g, n, order, True) + _interface_values(
        minus, g, n, order, False
    )


def upwind_flux_divergence(
    flux: Field, speed_bound: float, order: int, dx: float, state: Field = None
) -> np.ndarray:
    """
    Conservative derivative (F_{i+1/2} - F_{i-1/2}) / dx of a ghost-filled flux field.

    The splitting F+- = (F +- speed_bound * w) / 2 uses w = state, or the flux
    itself when no state is given.
    """
    hat = numerical_flux(flux, speed_bound, order, state=state)
    return (hat[1:] - hat[:-1]) / dx
