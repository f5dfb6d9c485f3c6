import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from imex_relax.errors import BlowUpError, ValidationError
from imex_relax.model import ScalingParams
from imex_relax.tableaux import ImexPair, is_isa


class SchemeVariant(str, enum.Enum):
    UnifiedExplicitDiffusion = "unified"
    ImplicitDiffusion = "implicit_diffusion"
    BaselineAdditive = "additive"
    BaselinePartitioned = "partitioned"
    BaselineHybrid = "hybrid"
    LimitExplicit = "limit_explicit"
    LimitImex = "limit_imex"

    @property
    def is_baseline(self) -> bool:
        return self in BASELINES

    @property
    def is_limit(self) -> bool:
        return self in (SchemeVariant.LimitExplicit, SchemeVariant.LimitImex)


BASELINES = (
    SchemeVariant.BaselineAdditive,
    SchemeVariant.BaselinePartitioned,
    SchemeVariant.BaselineHybrid,
)


class PhiKind(str, enum.Enum):
    MinEps2 = "min_eps2"
    TanhEps2 = "tanh_eps2"

    def __call__(self, eps: float) -> float:
        if self == PhiKind.MinEps2:
            return min(eps * eps, 1.0)
        return float(np.tanh(eps * eps))


@dataclass
class StepperState:
    """
    Interior values of u and v on one grid at time t.
    """

    u: np.ndarray
    v: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.u = np.array(self.u, dtype=float)
        self.v = np.array(self.v, dtype=float)
        if self.u.shape != self.v.shape or self.u.ndim != 1:
            raise ValidationError(
                f"u and v must be 1-d arrays on one grid, got {self.u.shape} and {self.v.shape}"
            )

    def copy(self) -> "StepperState":
        return StepperState(self.u.copy(), self.v.copy(), self.t)

    def check_finite(self, step: Optional[int] = None):
        if not (np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v))):
            bad = int(np.argmax(~(np.isfinite(self.u) & np.isfinite(self.v))))
            raise BlowUpError(
                f"non-finite state at cell {bad}, step {step}, t = {self.t:.6g}",
                step=step,
                time=self.t,
            )
        return self


def _forward_z(zeta: np.ndarray, a: np.ndarray) -> np.ndarray:
    """
    Z = zeta (zeta I + A)^-1 for every cell, by forward substitution on
    (zeta I + A) Z = zeta I. The a11 = 0 row gives zeta / zeta = 1 exactly.
    """
    n, s = zeta.size, a.shape[0]
    Z = np.zeros((n, s, s))
    for i in range(s):
        row = np.zeros((n, s))
        row[:, i] = zeta
        for j in range(i):
            row -= a[i, j] * Z[:, j, :]
        Z[:, i, :] = row / (zeta + a[i, i])[:, None]
    return Z


@dataclass(frozen=True)
class StageContext:
    """
    Per-cell stage coefficients for one step size.

    Z = zeta (zeta I + A)^-1 is bounded for every zeta > 0, so the stage
    matrices P = zeta (I - Z) e, Q = (I - Z) A~ and R = (I - Z) A never form 1/zeta.
    """

    zeta: np.ndarray
    kappa: np.ndarray
    mu: np.ndarray
    xi: np.ndarray
    Z: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    weights_v: np.ndarray
    weights_explicit: np.ndarray
    weights_implicit: np.ndarray
    gsa: bool
    diffusion_weight: np.ndarray = field(repr=False)
    wave_power: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, pair: ImexPair, scaling: ScalingParams, dt: float, n: int = None):
        if not dt > 0:
            raise ValidationError(f"time step must be positive, got {dt!r}")
        alpha = scaling.alpha
        if n is not None and alpha.size == 1 and n > 1:
            alpha = np.full(n, alpha[0])
            scaling = ScalingParams(scaling.epsilon, alpha)

        a = pair.implicit_part.a
        a_tilde = pair.explicit_part.a
        b = pair.implicit_part.b
        s = pair.s
        diag = np.diag(a)

        zeta = scaling.zeta(dt)
        Z = _forward_z(zeta, a)
        identity = np.eye(s)[None, :, :]
        complement = identity - Z
        P = zeta[:, None] * complement.sum(axis=2)
        Q = complement @ a_tilde
        R = complement @ a
        nu = scaling.diffusion_weight

        kappa = diag[:, None] / zeta[None, :]
        mu = dt * nu[None, :] * np.einsum("nii->in", R)
        xi = 1.0 / (zeta + 1.0)

        # b^T Z e, b^T (zeta I + A)^-1 A~ and b^T (zeta I + A)^-1 A;
        # for b^T = e_s^T A these reduce to the last rows of P and I - Z
        if is_isa(pair):
            weights_v = P[:, -1]
            x = complement[:, -1, :]
        else:
            weights_v = Z.sum(axis=2) @ b
            x = _backward_weights(zeta, a, b)
        weights_explicit = x @ a_tilde
        weights_implicit = b[None, :] - np.einsum("j,njk->nk", b, Z)

        return cls(
            zeta=zeta,
            kappa=kappa,
            mu=mu,
            xi=xi,
            Z=Z,
            P=P,
            Q=Q,
            R=R,
            weights_v=weights_v,
            weights_explicit=weights_explicit,
            weights_implicit=weights_implicit,
            gsa=pair.is_gsa,
            diffusion_weight=nu,
            wave_power=scaling.wave_power,
        )


def _backward_weights(zeta: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    x^T = b^T (zeta I + A)^-1 per cell, by back substitution.
    """
    n, s = zeta.size, b.size
    x = np.zeros((n, s))
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in reversed(range(s)):
            numerator = b[i] - x[:, i + 1 :] @ a[i + 1 :, i]
            x[:, i] = numerator / (zeta + a[i, i])
    return x
