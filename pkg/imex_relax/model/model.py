import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from imex_relax.errors import DomainError, StiffSolveError, ValidationError

ArrayFunction = Callable[[np.ndarray], np.ndarray]


class HKind(str, enum.Enum):
    LinearInV = "linear"
    QuadraticInV = "quadratic"


@dataclass(frozen=True)
class ScalingParams:
    """
    Relaxation parameter epsilon and the per-cell scaling exponent alpha(x).
    """

    epsilon: float
    alpha: np.ndarray

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=float, ndmin=1)
        alpha.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)
        if not self.epsilon > 0.0:
            raise ValidationError(f"epsilon must be positive, got {self.epsilon!r}")
        if np.any(alpha < 0.0) or np.any(alpha > 1.0) or not np.all(np.isfinite(alpha)):
            raise ValidationError("every alpha value must lie in [0, 1]")

    @classmethod
    def constant(cls, epsilon: float, alpha: float, n: int):
        return cls(epsilon=epsilon, alpha=np.full(n, float(alpha)))

    @property
    def relaxation_power(self) -> np.ndarray:
        """epsilon^(1+alpha), the relaxation time scale per cell."""
        return self.epsilon ** (1.0 + self.alpha)

    @property
    def diffusion_weight(self) -> np.ndarray:
        """epsilon^(1-alpha), the weight of p(u)_x in the scaled v equation."""
        return self.epsilon ** (1.0 - self.alpha)

    @property
    def wave_power(self) -> np.ndarray:
        """epsilon^(2 alpha)."""
        return self.epsilon ** (2.0 * self.alpha)

    def zeta(self, dt: float) -> np.ndarray:
        return self.relaxation_power / dt


@dataclass(frozen=True)
class RelaxationModel:
    """
    u_t + v_x = 0,
    v_t + eps^(-2 alpha) p(u)_x = eps^(-(1+alpha)) (G(u) + H(v)),

    with H(v) = -v - q(eps) v^2. The quadratic part vanishes for LinearInV.
    """

    name: str
    p: ArrayFunction
    p_prime: ArrayFunction
    f: ArrayFunction
    f_prime: ArrayFunction
    g: ArrayFunction
    h_kind: HKind = HKind.LinearInV
    q: Callable[[float], float] = field(default=lambda eps: 0.0)
    p_is_linear: bool = True
    parameters: dict = field(default_factory=dict)

    def quadratic_coefficient(self, eps: float) -> float:
        if self.h_kind == HKind.LinearInV:
            return 0.0
        return float(self.q(eps))

    def h(self, v, eps):
        v = np.asarray(v, dtype=float)
        return -v + self.h_nonlinear(v, eps)

    def h_nonlinear(self, v, eps):
        """The part of H beyond -v, i.e. -q(eps) v^2."""
        q = self.quadratic_coefficient(eps)
        v = np.asarray(v, dtype=float)
        if q == 0.0:
            return np.zeros_like(v)
        return -q * v * v

    def source(self, u, v, eps):
        return self.g(u) + self.h(v, eps)


def make_linear_gt(A_drift: float = 1.0) -> RelaxationModel:
    """
    Linear model p(u) = u, f(u) = G(u) = A u, H(v) = -v. Its diffusive limit is
    u_t + A u_x = u_xx.
    """
    A = float(A_drift)
    return RelaxationModel(
        name="linear_gt",
        p=lambda u: np.array(u, dtype=float),
        p_prime=lambda u: np.ones_like(np.asarray(u, dtype=float)),
        f=lambda u: A * np.asarray(u, dtype=float),
        f_prime=lambda u: np.full_like(np.asarray(u, dtype=float), A),
        g=lambda u: A * np.asarray(u, dtype=float),
        parameters={"A": A},
    )


def make_ruijgrok_wu() -> RelaxationModel:
    """
    Macroscopic Ruijgrok-Wu system in (rho, j): p = rho, G = rho^2/2 and
    H(j) = -j - (eps^2/2) j^2.
    """
    return RelaxationModel(
        name="ruijgrok_wu",
        p=lambda u: np.array(u, dtype=float),
        p_prime=lambda u: np.ones_like(np.asarray(u, dtype=float)),
        f=lambda u: 0.5 * np.asarray(u, dtype=float) ** 2,
        f_prime=lambda u: np.array(u, dtype=float),
        g=lambda u: 0.5 * np.asarray(u, dtype=float) ** 2,
        h_kind=HKind.QuadraticInV,
        q=lambda eps: 0.5 * eps * eps,
    )


def equilibrium(model: RelaxationModel, u, eps: float):
    """
    v_eq(u) with G(u) + H(v_eq) = 0, the root that tends to f(u) as eps -> 0.
    """
    g = np.asarray(model.g(u), dtype=float)
    q = model.quadratic_coefficient(eps)
    if q == 0.0:
        return g
    discriminant = 1.0 + 4.0 * q * g
    if np.any(discriminant < 0.0):
        raise DomainError(
            f"{model.name}: no admissible equilibrium, discriminant {np.min(discriminant):.3e} < 0"
        )
    return 2.0 * g / (1.0 + np.sqrt(discriminant))


def solve_relaxation(model: RelaxationModel, rhs, zeta, weight, eps: float, u=None):
    """
    Pointwise solve of zeta*v - weight*H(v) = rhs.

    This is the stage relation multiplied through by zeta = eps^(1+alpha)/dt, so
    every term stays O(1) as eps -> 0. zeta = 1 and weight = kappa recovers
    v = r + kappa H(v).
    """
    rhs = np.asarray(rhs, dtype=float)
    diagonal = np.asarray(zeta, dtype=float) + np.asarray(weight, dtype=float)
    q = model.quadratic_coefficient(eps)
    if q == 0.0:
        return rhs / diagonal

    curvature = np.asarray(weight, dtype=float) * q
    discriminant = diagonal * diagonal + 4.0 * curvature * rhs
    if np.any(discriminant < 0.0):
        where = int(np.argmin(discriminant))
        r_bad = float(np.ravel(rhs)[where] if rhs.ndim else rhs)
        w_bad = float(np.ravel(np.broadcast_to(weight, rhs.shape))[where] if rhs.ndim else weight)
        u_bad = None if u is None else float(np.ravel(u)[where])
        raise StiffSolveError(
            f"{model.name}: negative discriminant in the relaxation solve "
            f"(u={u_bad}, r={r_bad:.6g}, kappa={w_bad:.6g})",
            r=r_bad,
            kappa=w_bad,
            u=u_bad,
        )
    return 2.0 * rhs / (diagonal + np.sqrt(discriminant))


def implicit_source_solve(model: RelaxationModel, r, kappa, eps: float, u=None):
    """
    Solve v = r + kappa H(v) for kappa >= 0.
    """
    if np.any(np.asarray(kappa) < 0.0):
        raise ValidationError("kappa must be nonnegative")
    return solve_relaxation(model, r, 1.0, kappa, eps, u=u)


def chapman_enskog_flux(model: RelaxationModel, u, ux, eps: float, alpha):
    """
    First corrected equilibrium flux, v ~ G(u) - eps^(1-alpha) p'(u) u_x.
    """
    u = np.asarray(u, dtype=float)
    weight = eps ** (1.0 - np.asarray(alpha, dtype=float))
    return model.g(u) - weight * model.p_prime(u) * np.asarray(ux, dtype=float)
