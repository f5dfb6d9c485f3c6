"""
Closed-form solutions of the limit advection-diffusion equation
rho_t + rho_x = rho_xx used as oracles.
"""

import numpy as np
from scipy.special import erf

from imex_relax.errors import DomainError, UnsupportedParameterError


def exact_linear_advdiff(x, t: float, A_drift: float = 1.0):
    """
    rho = e^-t sin(x - t), j = e^-t (sin(x - t) - cos(x - t)).
    """
    if A_drift != 1.0:
        raise UnsupportedParameterError(
            f"the smooth exact solution is only available for A = 1, got A = {A_drift}"
        )
    x = np.asarray(x, dtype=float)
    decay = np.exp(-t)
    rho = decay * np.sin(x - t)
    j = decay * (np.sin(x - t) - np.cos(x - t))
    return rho, j


def exact_riemann_erf(x, t: float, rho_left: float, rho_right: float):
    """
    rho = (rho_L + rho_R)/2 + (rho_L - rho_R)/2 erf((t - x) / (2 sqrt(t))).
    """
    if not t > 0:
        raise DomainError(f"the erf solution needs t > 0, got t = {t}")
    x = np.asarray(x, dtype=float)
    z = (t - x) / (2.0 * np.sqrt(t))
    return 0.5 * (rho_left + rho_right) + 0.5 * (rho_left - rho_right) * erf(z)


def exact_riemann_flux(x, t: float, rho_left: float, rho_right: float):
    """
    The limit flux j = rho - rho_x of the erf solution.
    """
    if not t > 0:
        raise DomainError(f"the erf solution needs t > 0, got t = {t}")
    x = np.asarray(x, dtype=float)
    root = 2.0 * np.sqrt(t)
    z = (t - x) / root
    gradient = -0.5 * (rho_left - rho_right) * 2.0 / np.sqrt(np.pi) * np.exp(-z * z) / root
    return exact_riemann_erf(x, t, rho_left, rho_right) - gradient
