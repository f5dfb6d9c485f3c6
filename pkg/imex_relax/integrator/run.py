import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from imex_relax.errors import ImexRelaxError, ValidationError
from imex_relax.logger import logger
from imex_relax.model import RelaxationModel, ScalingParams, chapman_enskog_flux, equilibrium
from imex_relax.tableaux import ImexPair
from imex_relax.utils import Timer

from .baseline import step_baseline
from .implicit import step_implicit_diffusion
from .limits import step_limit_explicit, step_limit_imex
from .operators import Discretization
from .speeds import FirstOrder, GeneralPair, speed_bound
from .state import PhiKind, SchemeVariant, StageContext, StepperState
from .unified import step_unified

STIFF_EPSILON = 1e-6
PICARD_WARNING = 10
TIME_TOL = 1e-12
CFL_MAX = 1.0
CFL_TOL = 1e-6
CFL_ITERATIONS = 50


@dataclass
class RecordPolicy:
    """
    Which states a run keeps: the initial one, the given snapshot times
    (steps are shortened to land on them) and the final one.
    """

    times: List[float] = field(default_factory=list)
    every: int = 0
    initial: bool = True
    final: bool = True


@dataclass
class Trajectory:
    snapshots: List[StepperState]
    diagnostics: Dict = field(default_factory=dict)

    @property
    def final(self) -> StepperState:
        return self.snapshots[-1]

    @property
    def times(self) -> List[float]:
        return [snapshot.t for snapshot in self.snapshots]

    def at(self, t: float) -> StepperState:
        for snapshot in self.snapshots:
            if abs(snapshot.t - t) <= TIME_TOL * max(1.0, abs(t)):
                return snapshot
        raise ValidationError(f"no snapshot recorded at t = {t}")


class Stepper:
    """
    Binds a scheme variant, pair, model and discretization into a single
    step(state, dt) callable with per-step-size caches.
    """

    def __init__(
        self,
        scheme: SchemeVariant,
        pair: Optional[ImexPair],
        model: RelaxationModel,
        scaling: ScalingParams,
        disc: Discretization,
        phi: PhiKind = PhiKind.MinEps2,
        speed_formula: str = "stiff_accurate",
    ):
        self.scheme = SchemeVariant(scheme)
        self.pair = pair
        self.model = model
        self.scaling = scaling
        self.disc = disc
        self.phi = PhiKind(phi)
        self.speed_formula = speed_formula
        self.stats = {"picard_iterations": [], "max_speed": 0.0}
        self.last_speed = 0.0
        self._contexts = {}

        if self.scheme.is_baseline:
            if pair is not None and pair.declared_order != 1:
                raise ValidationError(
                    f"{self.scheme.value} is first order, it cannot run the order "
                    f"{pair.declared_order} pair {pair.name}"
                )
        elif pair is None:
            raise ValidationError(f"scheme {self.scheme.value} needs an IMEX pair")

    @property
    def kind(self):
        if self.scheme.is_baseline:
            return FirstOrder()
        return GeneralPair(self.pair, self.speed_formula)

    @property
    def viscosity(self) -> np.ndarray:
        return self.scaling.diffusion_weight

    def context(self, dt: float) -> StageContext:
        if dt not in self._contexts:
            if len(self._contexts) > 4:
                self._contexts.clear()
            self._contexts[dt] = StageContext.build(
                self.pair, self.scaling, dt, n=self.disc.grid.n
            )
        return self._contexts[dt]

    def speed(self, state: StepperState, dt: float) -> float:
        ctx = None if self.scheme.is_baseline else self.context(dt)
        bound = speed_bound(self.kind, state.u, self.model, self.scaling, dt, ctx=ctx)
        self.stats["max_speed"] = max(self.stats["max_speed"], bound)
        self.last_speed = bound
        return bound

    def limit_flux(self, u) -> np.ndarray:
        """
        v carried along by the limit schemes, G(u) - nu p(u)_x.
        """
        p_pad = self.model.p(self.disc.pad(u, "u").data)
        gradient = self.disc.first_derivative(p_pad)
        return self.model.g(u) - self.viscosity * gradient

    def step(self, state: StepperState, dt: float) -> StepperState:
        speed = self.speed(state, dt)
        scheme = self.scheme
        if scheme == SchemeVariant.UnifiedExplicitDiffusion:
            return step_unified(
                state,
                self.pair,
                self.model,
                self.scaling,
                self.disc,
                dt,
                speed=speed,
                ctx=self.context(dt),
            )
        if scheme == SchemeVariant.ImplicitDiffusion:
            return step_implicit_diffusion(
                state,
                self.pair,
                self.model,
                self.scaling,
                self.disc,
                dt,
                speed=speed,
                ctx=self.context(dt),
                stats=self.stats,
            )
        if scheme.is_baseline:
            return step_baseline(
                state, scheme, self.model, self.scaling, self.disc, dt, speed=speed, phi=self.phi
            )
        limit = step_limit_explicit if scheme == SchemeVariant.LimitExplicit else step_limit_imex
        u = limit(state.u, self.pair, self.model, self.disc, dt, speed, viscosity=self.viscosity)
        return StepperState(u, self.limit_flux(u), state.t + dt)


def limit_time_step(stepper: Stepper, state: StepperState, dt: float, cfl_max: float) -> float:
    """
    Largest dt, at most the given one, with speed(dt) dt / dx <= cfl_max. The
    pair speeds depend on dt, so the bound is iterated to a fixed point.
    """
    dx = stepper.disc.dx
    for _ in range(CFL_ITERATIONS):
        cfl = stepper.speed(state, dt) * dt / dx
        if cfl <= cfl_max * (1.0 + CFL_TOL):
            return dt
        dt *= cfl_max / cfl
    raise ValidationError(f"no time step satisfies the CFL limit {cfl_max} (CFL {cfl:.4g})")


def _step_times(t0: float, t_final: float, dt: float, stops: List[float]) -> List[float]:
    """
    End times of every step: multiples of dt from t0, with each stop time and
    t_final inserted so steps land on them.
    """
    count = max(int(math.ceil((t_final - t0) / dt - TIME_TOL)), 0)
    ends = [t0 + k * dt for k in range(1, count)]
    ends += [t for t in stops if t0 < t < t_final]
    ends.append(t_final)
    ends = sorted(set(ends))
    # drop steps that a stop time has squeezed to roundoff
    merged = []
    for t in ends:
        if merged and t - merged[-1] <= TIME_TOL * max(1.0, abs(t)):
            merged[-1] = t
        else:
            merged.append(t)
    return merged


def run(
    initial: StepperState,
    scheme: SchemeVariant,
    pair: Optional[ImexPair],
    model: RelaxationModel,
    scaling: ScalingParams,
    disc: Discretization,
    lambda_cfl: float,
    t_final: float,
    record: RecordPolicy = None,
    phi: PhiKind = PhiKind.MinEps2,
    speed_formula: str = "stiff_accurate",
    progress: bool = True,
    cfl_max: Optional[float] = CFL_MAX,
) -> Trajectory:
    """
    Advance initial to t_final with dt = lambda_cfl * dx, shortening the last
    step (and any step crossing a snapshot time) to land exactly.

    Before every step the characteristic CFL number speed * dt / dx is checked
    against cfl_max and dt is reduced for the rest of the run when it is
    exceeded. cfl_max = None runs at the configured dt whatever the speeds.
    """
    if not lambda_cfl > 0:
        raise ValidationError(f"lambda_cfl must be positive, got {lambda_cfl!r}")
    if t_final < initial.t:
        raise ValidationError(f"t_final {t_final} precedes the initial time {initial.t}")
    record = record or RecordPolicy()

    stepper = Stepper(scheme, pair, model, scaling, disc, phi=phi, speed_formula=speed_formula)
    dt = lambda_cfl * disc.dx
    warnings = []
    if (
        pair is not None
        and not stepper.scheme.is_baseline
        and not stepper.scheme.is_limit
        and not pair.is_gsa
        and scaling.epsilon < STIFF_EPSILON
    ):
        warnings.append(
            f"{pair.name} is not globally stiffly accurate, the eps -> 0 limit is not guaranteed"
        )
        logger.warning(warnings[-1])

    state = initial.copy().check_finite(step=0)
    snapshots = [state.copy()] if record.initial else []
    ends = _step_times(initial.t, t_final, dt, record.times) if t_final > initial.t else []
    total = len(ends)
    report_every = max(total // 10, 1)
    max_cfl = 0.0

    timer = Timer()
    number = 0
    while ends:
        if cfl_max is not None:
            limited = limit_time_step(stepper, state, dt, cfl_max)
            if limited < dt:
                message = (
                    f"dt reduced from {dt:.6g} to {limited:.6g} at t = {state.t:.6g} "
                    f"to keep the CFL number within {cfl_max:g}"
                )
                if not any(w.startswith("dt reduced") for w in warnings):
                    warnings.append(message)
                    logger.warning(message)
                else:
                    logger.debug(message)
                dt = limited
                ends = _step_times(state.t, t_final, dt, record.times)
                total = number + len(ends)
                report_every = max(total // 10, 1)

        t_end = ends.pop(0)
        number += 1
        step_dt = t_end - state.t
        if step_dt < dt * (1.0 - 1e-9) and not ends and number > 1:
            logger.debug(f"last step shortened to {step_dt:.6g}")
        try:
            with timer:
                state = stepper.step(state, step_dt)
            state.t = t_end
            state.check_finite(step=number)
        except ImexRelaxError as e:
            if getattr(e, "time", None) is None:
                e.time = state.t
            if getattr(e, "step", None) is None:
                e.step = number
            raise
        max_cfl = max(max_cfl, stepper.last_speed * step_dt / disc.dx)

        keep = (record.every and number % record.every == 0) or any(
            abs(t_end - t) <= TIME_TOL * max(1.0, abs(t)) for t in record.times
        )
        if keep or (record.final and not ends):
            snapshots.append(state.copy())
        if progress and number % report_every == 0:
            logger.progress(done=number, total=total, time=state.t)

    if record.final and (not snapshots or snapshots[-1].t != state.t):
        snapshots.append(state.copy())

    iterations = stepper.stats["picard_iterations"]
    if iterations and max(iterations) > PICARD_WARNING:
        warnings.append(f"fixed-point solves needed up to {max(iterations)} iterations")
        logger.warning(warnings[-1])

    diagnostics = {
        "scheme": stepper.scheme.value,
        "pair": None if pair is None else pair.name,
        "dt": dt,
        "steps": total,
        "max_characteristic_speed": stepper.stats["max_speed"],
        "max_cfl_number": max_cfl,
        "picard_iterations_max": max(iterations) if iterations else 0,
        "picard_iterations_total": int(sum(iterations)),
        "wall_time": timer.elapsed_time,
        "mean_step_time": timer.mean,
        "warnings": warnings,
    }
    return Trajectory(snapshots=snapshots, diagnostics=diagnostics)


def initial_state(u, v, t: float = 0.0) -> StepperState:
    return StepperState(np.asarray(u, dtype=float), np.asarray(v, dtype=float), t)


def equilibrium_initial(model: RelaxationModel, u, scaling: ScalingParams, disc=None, t=0.0):
    """
    u with v on the first corrected equilibrium when a discretization is
    given, otherwise on v_eq(u).
    """
    if disc is None:
        return StepperState(u, equilibrium(model, u, scaling.epsilon), t)
    ux = disc.first_derivative(disc.pad(u, "u").data)
    return StepperState(u, chapman_enskog_flux(model, u, ux, scaling.epsilon, scaling.alpha), t)
