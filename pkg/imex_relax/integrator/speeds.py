"""
Characteristic speeds of the semi-discrete relaxation system and the global
Lax-Friedrichs bound derived from them.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from imex_relax.errors import ValidationError
from imex_relax.model import RelaxationModel, ScalingParams
from imex_relax.tableaux import ImexPair

from .state import StageContext


@dataclass(frozen=True)
class FirstOrder:
    """Speeds of the first-order splitting schemes."""


@dataclass(frozen=True)
class GeneralPair:
    """
    Speeds of an IMEX pair. The stiff_accurate formula divides the v-coupling by
    eps^(1+alpha) + a_ss dt and stays bounded as eps -> 0 for GSA pairs; the
    general formula uses 4 eps^(1-alpha) b^T B e / dt.
    """

    pair: ImexPair
    formula: str = "stiff_accurate"

    def __post_init__(self):
        if self.formula not in ("stiff_accurate", "general"):
            raise ValidationError(f"unknown speed formula {self.formula!r}")


SpeedKind = Union[FirstOrder, GeneralPair]


def first_order_speeds(dt, eps, alpha, c):
    """
    lambda = (xi/2)(c +- sqrt(c^2 + 4 eps^2/dt^2)) with xi = dt/(eps^(1+alpha) + dt),
    written over the common denominator so dt may be small.
    """
    dt = np.asarray(dt, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    c = np.asarray(c, dtype=float)
    root = np.sqrt(c * c * dt * dt + 4.0 * eps * eps)
    denominator = 2.0 * (eps ** (1.0 + alpha) + dt)
    return (c * dt + root) / denominator, (c * dt - root) / denominator


def pair_speeds(ctx: StageContext, pair: ImexPair, dt: float, c, formula="stiff_accurate"):
    """
    Per-cell speeds of a pair from its stage coefficients.
    """
    c = np.asarray(c, dtype=float)
    beta = ctx.weights_explicit.sum(axis=1)
    coupling = ctx.weights_v
    relaxation = ctx.zeta * dt
    nu = ctx.diffusion_weight
    if formula == "stiff_accurate":
        a_ss = pair.implicit_part.a[-1, -1]
        vterm = 4.0 * coupling * nu / (relaxation + a_ss * dt)
    else:
        vterm = 4.0 * coupling * nu / relaxation
    drift = c * beta
    root = np.sqrt(np.maximum(drift * drift + vterm, 0.0))
    return 0.5 * (drift + root), 0.5 * (drift - root)


def characteristic_speeds(
    kind: SpeedKind, dt: float, eps: float, alpha: float, c: float
) -> Tuple[float, float]:
    """
    (lambda_plus, lambda_minus) for p'(u) = 1 and f'(u) = c.

    dt = 0 gives the relaxation speeds +-eps^-alpha, eps = 0 the limit
    ((c+|c|)/2, (c-|c|)/2).
    """
    if dt < 0 or eps < 0:
        raise ValidationError("dt and eps must be nonnegative")
    if dt == 0 and eps == 0:
        raise ValidationError("dt and eps cannot both vanish")
    if dt == 0:
        speed = eps ** (-alpha)
        return speed, -speed
    if isinstance(kind, FirstOrder) or eps == 0:
        plus, minus = first_order_speeds(dt, eps, alpha, c)
        return float(plus), float(minus)
    if not isinstance(kind, GeneralPair):
        raise ValidationError(f"unknown speed kind {kind!r}")

    scaling = ScalingParams(eps, np.array([alpha]))
    ctx = StageContext.build(kind.pair, scaling, dt)
    plus, minus = pair_speeds(ctx, kind.pair, dt, np.array([c]), kind.formula)
    return float(plus[0]), float(minus[0])


def speed_bound(
    kind: SpeedKind,
    u,
    model: RelaxationModel,
    scaling: ScalingParams,
    dt: float,
    ctx: StageContext = None,
) -> float:
    """
    max(max |Lambda+-|, max |f'(u)|) over the grid, with c = f'(u) per cell.
    """
    c = model.f_prime(u)
    if isinstance(kind, FirstOrder):
        plus, minus = first_order_speeds(dt, scaling.epsilon, scaling.alpha, c)
    else:
        if ctx is None:
            ctx = StageContext.build(kind.pair, scaling, dt, n=np.size(u))
        plus, minus = pair_speeds(ctx, kind.pair, dt, c, kind.formula)
    bound = max(float(np.max(np.abs(plus))), float(np.max(np.abs(minus))))
    return max(bound, float(np.max(np.abs(c))))
